"""Compare the compiled and pure-Python MMR kernels.

    python benchmarks/bench_mmr.py [--sizes 100,500,2000] [--repeat 3]
"""

import argparse
import random
import sys
import time
from array import array

from xmlsumm import kernels


def random_unit(n, vocab=400, max_terms=12, seed=0):
    rng = random.Random(seed)
    terms, offsets = [], [0]
    for _ in range(n):
        k = rng.randint(1, max_terms)
        terms.extend(sorted(rng.sample(range(vocab), k)))
        offsets.append(len(terms))
    relevance = [rng.random() * 5 for _ in range(n)]
    return array("d", relevance), array("q", terms), array("q", offsets)


def best_of(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,500,1000,2000")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--beta", type=float, default=0.7)
    args = parser.parse_args(argv)

    if kernels.compiled_mmr_select is None:
        print("compiled kernel not built; only the Python kernel is timed")
    print(f"{'n':>6} {'python s':>10} {'compiled s':>11} {'speedup':>8}  same")
    for n in (int(s) for s in args.sizes.split(",")):
        unit = random_unit(n, seed=n) + (args.beta,)
        py_t, py_out = best_of(kernels.python_mmr_select, unit, args.repeat)
        if kernels.compiled_mmr_select is None:
            print(f"{n:>6} {py_t:>10.4f} {'-':>11} {'-':>8}  -")
            continue
        c_t, c_out = best_of(kernels.compiled_mmr_select, unit, args.repeat)
        same = list(py_out[0]) == list(c_out[0]) and list(py_out[1]) == list(c_out[1])
        print(f"{n:>6} {py_t:>10.4f} {c_t:>11.5f} {py_t / c_t:>7.1f}x  {same}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
