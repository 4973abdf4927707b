#!/usr/bin/env python3
"""Benchmark the compiled amplitude kernels against the pure-Python lane.

Usage: python benchmarks/bench_kernels.py [--det-max 160] [--perm-max 12]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from spinswap import _kernels_py
from spinswap import kernels

try:
    from spinswap import _kernels
except ImportError:
    _kernels = None


def best_of(func, arg, repeats: int = 5) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func(arg)
        best = min(best, time.perf_counter() - start)
    return best


def bench(name, sizes, compiled_func, python_func, make_input):
    print(f"\n{name}")
    print(f"{'n':>5} {'cython [ms]':>12} {'python [ms]':>12} {'speedup':>8}")
    for n in sizes:
        arg = make_input(n)
        python_time = best_of(python_func, arg)
        if compiled_func is None:
            print(f"{n:>5} {'-':>12} {python_time * 1e3:>12.3f} {'-':>8}")
        else:
            compiled_time = best_of(compiled_func, arg)
            ratio = python_time / compiled_time if compiled_time > 0 else float("inf")
            print(
                f"{n:>5} {compiled_time * 1e3:>12.3f} {python_time * 1e3:>12.3f} {ratio:>7.1f}x"
            )


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--perm-max", type=int, default=12)
    parser.add_argument("--det-max", type=int, default=160)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"active backend: {kernels.BACKEND}")
    if _kernels is None:
        print("compiled lane not built; timing the pure-Python lane only")

    def random_matrix(n):
        return np.ascontiguousarray(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))

    perm_sizes = [n for n in (6, 8, 10, 12) if n <= args.perm_max]
    bench(
        "permanent (Gray-coded inclusion-exclusion)",
        perm_sizes,
        None if _kernels is None else _kernels.permanent_ryser,
        _kernels_py.permanent_ryser,
        random_matrix,
    )

    det_sizes = [n for n in (20, 40, 80, 160) if n <= args.det_max]
    bench(
        "determinant (LU with partial pivoting)",
        det_sizes,
        None if _kernels is None else _kernels.det_lu,
        _kernels_py.det_lu,
        random_matrix,
    )


if __name__ == "__main__":
    main()
