"""Timing comparison of the compiled kernels against the numpy fallback.

Run: python3 benchmarks/bench_kernels.py
"""
import time

import numpy as np

from fracgaussiso import _kernels_py

try:
    from fracgaussiso import _kernels
except ImportError:
    _kernels = None


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    K = 20_000
    x_grid = np.linspace(-8.0, 8.0, 4001)
    c = np.exp(-0.05 * np.arange(K + 1, dtype=float))

    cases = [
        ("coeff_antideriv_table (K=%d)" % K,
         lambda mod: mod.coeff_antideriv_table(0.7, K)),
        ("hermite_weighted_series (K=%d, n=%d)" % (K, x_grid.size),
         lambda mod: mod.hermite_weighted_series(c, x_grid)),
        ("halfspace_series_sum (K=%d)" % (50 * K),
         lambda mod: mod.halfspace_series_sum(0.3, -0.75, 50 * K)),
    ]
    print(f"{'kernel':45s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, call in cases:
        t_py = timeit(call, _kernels_py)
        if _kernels is None:
            print(f"{name:45s} {t_py:10.4f} {'n/a':>10s} {'n/a':>8s}")
            continue
        t_cy = timeit(call, _kernels)
        print(f"{name:45s} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:7.1f}x")
        # both backends must agree bit for bit
        a, b = call(_kernels_py), call(_kernels)
        assert np.array_equal(np.asarray(a), np.asarray(b)), name


if __name__ == "__main__":
    main()
