"""Compare the numba and NumPy oracle kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from negmultinom import _kernels, sample, validate_params
from negmultinom.oracle import _edges, _tables


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    cases = []
    for d, K in ((1, 4096), (2, 256), (3, 64)):
        params = validate_params(2.5, [0.5 / d] * d)
        p = [2] * d
        logw, g, level = _tables(params, p, True, K)
        cases.append((f"box_sum d={d} K={K}", (_edges(params, K), logw, g, level),
                      _kernels.box_sum_numba, _kernels.box_sum_numpy))
    params = validate_params(2.5, [0.2, 0.1, 0.15])
    draws = np.ascontiguousarray(sample(params, 10**6, 0))
    p = np.array([2, 1, 1], dtype=np.int64)
    cases.append(("monomial_stats n=1e6 d=3", (draws, p, np.array([0.9, 0.4, 0.6]), False),
                  _kernels.monomial_stats_numba, _kernels.monomial_stats_numpy))

    print(f"{'kernel':<28}{'numba [ms]':>12}{'numpy [ms]':>12}{'speedup':>9}")
    for name, a, nb, npf in cases:
        nb(*a)  # compile / warm the cache
        t_nb = best_of(lambda: nb(*a), args.repeat)
        t_np = best_of(lambda: npf(*a), args.repeat)
        print(f"{name:<28}{1e3 * t_nb:>12.2f}{1e3 * t_np:>12.2f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
