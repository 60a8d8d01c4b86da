#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the Jacobi eigensolver on batches of random Hermitian matrices and
the permutation scan on random amplitude-vector stacks, then prints a
table with the per-call cost of each path and the speedup. Run from the
repository root:

    python3 benchmarks/bench_kernels.py [--repeat 5]

Force-disabling numba (SKEWSUM_DISABLE_NUMBA=1) leaves only the numpy
column; the numba column also disappears when numba is not installed.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from skewsum import _kernels
from skewsum.bounds import scan_inputs
from skewsum.rng import SplitMix64


def random_hermitian(dim: int, gen: SplitMix64) -> np.ndarray:
    g = gen.complex_normals((dim, dim))
    return (g + g.conj().T) / 2.0


def time_call(fn, repeat: int) -> float:
    """Best-of-repeat wall time of fn() in seconds."""
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(dim: int, count: int, repeat: int, gen: SplitMix64):
    mats = [random_hermitian(dim, gen) for _ in range(count)]
    tol = 1e-13 * max(float(np.linalg.norm(m)) for m in mats)

    def run(kernel):
        def inner():
            for m in mats:
                a = m.copy()
                v = np.eye(dim, dtype=np.complex128)
                kernel(a, v, tol, 100)

        return inner

    rows = {}
    rows["numpy"] = time_call(run(_kernels.jacobi_sweeps_numpy), repeat) / count
    if _kernels.NUMBA_ENABLED:
        _kernels.jacobi_sweeps_numba(mats[0].copy(), np.eye(dim, dtype=np.complex128), tol, 100)
        rows["numba"] = time_call(run(_kernels.jacobi_sweeps_numba), repeat) / count
    return rows


def bench_scan(dim: int, n: int, repeat: int, gen: SplitMix64):
    avs = np.abs(gen.normals((n, dim)))
    _, args = scan_inputs(avs)

    rows = {}
    rows["numpy"] = time_call(lambda: _kernels.theorem1_scan_numpy(*args), repeat)
    if _kernels.NUMBA_ENABLED:
        _kernels.theorem1_scan_numba(*args)
        rows["numba"] = time_call(lambda: _kernels.theorem1_scan_numba(*args), repeat)
    return rows


def report(label: str, rows: dict, unit: float = 1e6):
    numpy_t = rows["numpy"] * unit
    if "numba" in rows:
        numba_t = rows["numba"] * unit
        speedup = numpy_t / numba_t if numba_t > 0 else float("inf")
        print(f"{label:<28} {numpy_t:>12.1f} {numba_t:>12.1f} {speedup:>9.1f}x")
    else:
        print(f"{label:<28} {numpy_t:>12.1f} {'-':>12} {'-':>10}")


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--repeat", type=int, default=5, help="best-of repetitions")
    args = parser.parse_args()

    gen = SplitMix64(20260814)
    print(f"kernel backend in use: {_kernels.backend()}")
    print(f"{'workload':<28} {'numpy (us)':>12} {'numba (us)':>12} {'speedup':>10}")
    for dim in (3, 6, 10):
        report(f"jacobi d={dim} (per solve)", bench_jacobi(dim, 200, args.repeat, gen))
    for dim, n in ((3, 3), (4, 3), (4, 4), (5, 3)):
        report(f"scan d={dim} N={n} (per scan)", bench_scan(dim, n, args.repeat, gen))


if __name__ == "__main__":
    main()
