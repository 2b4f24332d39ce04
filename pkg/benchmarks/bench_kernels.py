"""Benchmark the hot kernels: numba-compiled loops vs the pure-numpy twins.

Run as ``python benchmarks/bench_kernels.py``. Needs the numba backend
(do not set DGFILTER_NO_NUMBA); both implementations are imported
explicitly, so the env flag is irrelevant here anyway.
"""

import time

import numpy as np

from dgfilter import kernels
from dgfilter.operators import build_operators

REPEATS = 200


def best_of(fn, *args, repeats=REPEATS):
    fn(*args)  # warmup / JIT compile
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_rhs_kernels():
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'N':>5s} {'numpy':>12s} {'numba':>12s} {'speedup':>9s}")
    for n in (32, 128, 256):
        ops = build_operators(n)
        u = rng.uniform(-1.0, 1.0, n + 1)
        a_nodes = 0.1 + np.abs(np.sin(ops.nodes))
        cases = [
            ("advection_rhs", (u, ops.D, ops.weights, 2.0, 1.0, 0.3),
             kernels.advection_rhs_numpy, kernels.advection_rhs_numba),
            ("burgers_cons_rhs", (u, ops.D, ops.weights, 1.0),
             kernels.burgers_cons_rhs_numpy, kernels.burgers_cons_rhs_numba),
            ("burgers_skew_rhs", (u, ops.D, ops.weights, 1.0),
             kernels.burgers_skew_rhs_numpy, kernels.burgers_skew_rhs_numba),
            ("varspeed_rhs", (u, ops.D, a_nodes, ops.weights, 1.0, a_nodes[0], 0.2),
             kernels.varspeed_rhs_numpy, kernels.varspeed_rhs_numba),
        ]
        for name, args, f_np, f_nb in cases:
            t_np = best_of(f_np, *args)
            if f_nb is None:
                print(f"{name:28s} {n:5d} {t_np * 1e6:10.2f}us {'-':>12s} {'-':>9s}")
                continue
            t_nb = best_of(f_nb, *args)
            print(f"{name:28s} {n:5d} {t_np * 1e6:10.2f}us {t_nb * 1e6:10.2f}us "
                  f"{t_np / t_nb:8.1f}x")


def bench_fv_sweep():
    x = np.linspace(1e-4, 2.0, 10000, endpoint=False)
    u0 = 0.2 * (1.0 + np.cos(np.pi * x))
    args = (u0, 2.0 / 10000, 0.9, 0.05)
    t_np = best_of(kernels.fv_burgers_numpy, *args, repeats=5)
    line = f"{'fv_burgers (0.05 t-units)':28s} {10000:5d} {t_np * 1e3:10.2f}ms"
    if kernels.fv_burgers_numba is None:
        print(line)
        return
    t_nb = best_of(kernels.fv_burgers_numba, *args, repeats=5)
    print(line + f" {t_nb * 1e3:10.2f}ms {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    print(f"active backend: {kernels.BACKEND}")
    bench_rhs_kernels()
    bench_fv_sweep()
