"""Time the 2^n mask kernels under numba and numpy.

    python3 benchmarks/bench_kernels.py [--sizes 12 16 20] [--repeat 3]

Each row is the best of --repeat runs after one untimed warm-up call.  The
two backends must return identical masks; a mismatch aborts.
"""

import argparse
import time

import numpy as np

from clusterexp import _kernels


def fence_below(n):
    # element i+1 above i for even i, below it for odd i
    below = [0] * n
    for i in range(n - 1):
        lo, hi = (i, i + 1) if i % 2 == 0 else (i + 1, i)
        below[hi] |= 1 << lo
    return below


def zigzag_corners(n):
    # corner positions that make every gap forbid one of the four bit pairs
    end0 = [(i % 3) for i in range(n)]
    end1 = [((i + 1) % 3) for i in range(n)]
    start0 = [((i + 1) % 3) for i in range(n)]
    start1 = [((i + 2) % 3) for i in range(n)]
    return end0, end1, start0, start1


def best(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[12, 16, 20])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["numpy"] + (["numba"] if _kernels.BACKEND == "numba" else [])
    print(f"{'kernel':<12}{'n':>4}" + "".join(f"{b:>12}" for b in backends) + f"{'count':>10}")
    for n in args.sizes:
        cases = [
            ("ideal_mask", lambda b, n=n: _kernels.ideal_mask(fence_below(n), backend=b)),
            ("walk_mask", lambda b, n=n: _kernels.walk_mask(*zigzag_corners(n), False, backend=b)),
        ]
        for name, run in cases:
            res = [best(lambda b=b: run(b), args.repeat) for b in backends]
            masks = [m for _, m in res]
            if any(not np.array_equal(masks[0], m) for m in masks[1:]):
                raise SystemExit(f"{name} n={n}: backends disagree")
            cells = "".join(f"{t * 1e3:>10.2f}ms" for t, _ in res)
            print(f"{name:<12}{n:>4}{cells}{int(masks[0].sum()):>10}")
    if len(backends) == 1:
        print("numba unavailable or disabled; numpy only")


if __name__ == "__main__":
    main()
