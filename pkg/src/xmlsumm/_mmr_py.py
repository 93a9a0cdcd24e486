"""Pure-Python MMR selection kernel, used when the compiled one is unavailable."""

# Scores closer than this are ties and go to the lowest index.
TIE = 1e-12


def _overlap(terms, offsets, i, j):
    a, a_end = offsets[i], offsets[i + 1]
    b, b_end = offsets[j], offsets[j + 1]
    n = 0
    while a < a_end and b < b_end:
        x, y = terms[a], terms[b]
        if x == y:
            n += 1
            a += 1
            b += 1
        elif x < y:
            a += 1
        else:
            b += 1
    return n


def mmr_select(relevance, terms, offsets, beta):
    """Greedy maximal-marginal-relevance ordering.

    ``terms[offsets[i]:offsets[i + 1]]`` holds the sorted distinct term ids
    of value ``i``.  Returns ``(order, scores)`` where ``scores[k]`` is the
    score of ``order[k]`` at the moment it was picked; the first pick
    records its relevance.  Ties (within ``TIE``) go to the lowest index.
    """
    n = len(relevance)
    if n == 0:
        return [], []
    taken = [False] * n
    max_sim = [0.0] * n
    order = []
    scores = []
    best = 0
    for i in range(1, n):
        if relevance[i] > relevance[best] + TIE:
            best = i
    gamma = 1.0 - beta
    score = relevance[best]
    for _ in range(n):
        taken[best] = True
        order.append(best)
        scores.append(score)
        pick = best
        best = -1
        for i in range(n):
            if taken[i]:
                continue
            sim = _overlap(terms, offsets, i, pick)
            if sim > max_sim[i]:
                max_sim[i] = sim
            s = beta * relevance[i] - gamma * max_sim[i]
            if best < 0 or s > score + TIE:
                best = i
                score = s
        if best < 0:
            break
    return order, scores
