# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled MMR selection kernel; see ``_mmr_py.mmr_select`` for the contract."""

from cpython.array cimport array

cdef double TIE = 1e-12


cdef inline int _overlap(const int[:] terms, const long long[:] offsets,
                         Py_ssize_t i, Py_ssize_t j) nogil:
    cdef long long a = offsets[i], a_end = offsets[i + 1]
    cdef long long b = offsets[j], b_end = offsets[j + 1]
    cdef int n = 0
    while a < a_end and b < b_end:
        if terms[a] == terms[b]:
            n += 1
            a += 1
            b += 1
        elif terms[a] < terms[b]:
            a += 1
        else:
            b += 1
    return n


def mmr_select(relevance, terms, offsets, double beta):
    cdef Py_ssize_t n = len(relevance)
    if n == 0:
        return [], []
    cdef array rel_arr = array("d", relevance)
    cdef array term_arr = array("i", terms)
    cdef array off_arr = array("q", offsets)
    cdef double[:] rel = rel_arr
    cdef const int[:] tv = term_arr
    cdef const long long[:] ov = off_arr
    cdef array taken_arr = array("b", bytes(n))
    cdef signed char[:] taken = taken_arr
    cdef array ms_arr = array("d", bytes(8 * n))
    cdef double[:] max_sim = ms_arr
    cdef Py_ssize_t i, k, best = 0, pick
    cdef double gamma = 1.0 - beta, score, s
    cdef int sim
    order = []
    scores = []
    for i in range(1, n):
        if rel[i] > rel[best] + TIE:
            best = i
    score = rel[best]
    for k in range(n):
        taken[best] = 1
        order.append(best)
        scores.append(score)
        pick = best
        best = -1
        with nogil:
            for i in range(n):
                if taken[i]:
                    continue
                sim = _overlap(tv, ov, i, pick)
                if sim > max_sim[i]:
                    max_sim[i] = sim
                s = beta * rel[i] - gamma * max_sim[i]
                if best < 0 or s > score + TIE:
                    best = i
                    score = s
        if best < 0:
            break
    return order, scores
