#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times the two hot paths: pointwise infection-rate evaluation and the
adaptive-Simpson welfare integral.  Run from the repository root:

    python benchmarks/bench_kernels.py
"""

import math
import time

from epiplan import _kernels_py

try:
    from epiplan import _kernels
except ImportError:
    _kernels = None

A = math.log(99.0) / 6.14
B = 6.14
G_B = 1.0 + B / 15.0
LAM = 0.5
C = 0.15
T_END = 15.0
T_L = 4.860440557271052
T_R = 7.419559442728948


def bench_xdot(mod, n=200_000):
    f = mod.logistic_xdot
    start = time.perf_counter()
    acc = 0.0
    for i in range(n):
        acc += f(15.0 * i / n, A, B)
    elapsed = time.perf_counter() - start
    return elapsed, acc


def bench_integral(mod, n=300):
    f = mod.welfare_integral
    start = time.perf_counter()
    acc = 0.0
    for _ in range(n):
        acc += f(A, B, G_B, LAM, C, T_END, T_L, T_R, 1e-9, 60)
    elapsed = time.perf_counter() - start
    return elapsed, acc


def main():
    rows = []
    for label, bench, per_call in (
        ("logistic_xdot x200k", bench_xdot, 200_000),
        ("welfare_integral x300", bench_integral, 300),
    ):
        t_py, acc_py = bench(_kernels_py)
        if _kernels is not None:
            t_cy, acc_cy = bench(_kernels)
            if not math.isclose(acc_py, acc_cy, rel_tol=1e-9):
                raise AssertionError(
                    f"{label}: backends disagree ({acc_py} vs {acc_cy})")
            rows.append((label, t_py, t_cy, t_py / t_cy))
        else:
            rows.append((label, t_py, None, None))

    print(f"{'benchmark':<24} {'python [s]':>12} {'cython [s]':>12} {'speedup':>9}")
    for label, t_py, t_cy, speedup in rows:
        if t_cy is None:
            print(f"{label:<24} {t_py:>12.4f} {'n/a':>12} {'n/a':>9}")
        else:
            print(f"{label:<24} {t_py:>12.4f} {t_cy:>12.4f} {speedup:>8.1f}x")
    if _kernels is None:
        print("\ncompiled extension not available; only the fallback was timed")


if __name__ == "__main__":
    main()
