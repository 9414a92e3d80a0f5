"""Compiled kernels vs the numpy fallback on the naive table pass.

    python benchmarks/bench_kernels.py [--repeat 3] [--threads 1]

Prints one line per (q, n) with the best time of each backend, the
speedup, and the max scaled difference between the two results.
"""

import argparse
import time

import numpy as np

from kloosterman import _fallback, sums
from kloosterman.field import make_field

try:
    from kloosterman import _kernels
except ImportError:
    _kernels = None

CASES = [(64, 2, 6, 3), (64, 2, 6, 4), (49, 7, 2, 4), (1031, 1031, 1, 2), (10007, 10007, 1, 2)]


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled kernels not built; only the fallback can run")
    print(f"{'q':>6} {'n':>2} {'compiled s':>11} {'python s':>10} {'speedup':>8} {'max diff':>10}")
    for q, p, k, n in CASES:
        spec = sums.make_spec(make_field(p, k, cache_dir=False), n)
        f = spec.factor_matrix()
        chunk = sums.chunk_size(f.shape[1])
        t_py, ref = best_of(lambda: _fallback.naive_table(f, chunk), args.repeat)
        if _kernels is None:
            print(f"{q:>6} {n:>2} {'-':>11} {t_py:>10.4f}")
            continue
        t_c, out = best_of(lambda: _kernels.naive_table(f, chunk, args.threads), args.repeat)
        diff = float(np.max(np.abs(out - ref))) / spec.scale
        print(f"{q:>6} {n:>2} {t_c:>11.4f} {t_py:>10.4f} {t_py / t_c:>8.1f} {diff:>10.2e}")


if __name__ == "__main__":
    main()
