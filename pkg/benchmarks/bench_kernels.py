#!/usr/bin/env python3
"""Benchmark the compiled Jacobi kernels against the NumPy fallback.

Times full eigendecompositions and SVDs through the public wrappers with
each backend swapped in, and prints a table with the speedup. Run:

    python3 benchmarks/bench_kernels.py [--sizes 8,16,32,64] [--repeats 5]
"""

import argparse
import time

import numpy as np

from ritzbounds import _kernels
from ritzbounds.linalg import hermitian_eig, hermitian_part, svd
from ritzbounds.rng import SplitMix64


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="8,16,32,64")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = {}
    for name in ("python", "cython"):
        try:
            backends[name] = _kernels.load_backend(name)
        except ImportError:
            print(f"backend {name} unavailable, skipping")
    gen = SplitMix64(2024)

    print(f"{'op':<10} {'d':>4} " + "".join(f"{n:>12}" for n in backends) + f" {'speedup':>9}")
    for d in sizes:
        A = hermitian_part(gen.complex_normal(d, d))
        B = gen.complex_normal(d + d // 2, d)
        for op, call in (("eig", lambda: hermitian_eig(A)), ("svd", lambda: svd(B))):
            times = {}
            for name, impl in backends.items():
                _kernels.active = impl
                times[name] = _time(call, args.repeats)
            row = "".join(f"{times[n] * 1e3:>10.3f}ms" for n in backends)
            speed = (f"{times['python'] / times['cython']:>8.1f}x"
                     if len(times) == 2 else "      n/a")
            print(f"{op:<10} {d:>4} {row} {speed}")
    _kernels.active, _ = _kernels._select()


if __name__ == "__main__":
    main()
