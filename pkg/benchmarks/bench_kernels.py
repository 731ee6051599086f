"""Time the compiled kernels against the numpy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--n 8] [--degree 2000] [--points 20000] [--repeat 5]

Both backends are imported directly, so one process measures both; outputs
are compared before timing.
"""
from __future__ import annotations

import argparse
import sys
import timeit

import numpy as np

from malmquist import _pykernels

try:
    from malmquist import _ckernels
except ImportError:
    _ckernels = None


def cases(n: int, degree: int, points: int, seed: int = 0):
    rng = np.random.default_rng(seed)
    lam = np.ascontiguousarray(0.9 * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n)))
    coords = np.ascontiguousarray(rng.standard_normal(n) + 1j * rng.standard_normal(n))
    z = np.ascontiguousarray(np.exp(2j * np.pi * np.arange(points) / points))
    return {
        "malmquist_taylor": (lam, degree),
        "malmquist_taylor_ext": (lam, degree // 4),
        "basis_eval": (lam, z),
        "combination_eval": (lam, coords, z),
        "blaschke_eval": (lam, z),
    }


def best_time(fn, args, repeat: int) -> float:
    number = 1
    while timeit.timeit(lambda: fn(*args), number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--degree", type=int, default=2000)
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1

    print(f"{'kernel':<22}{'cython (ms)':>14}{'python (ms)':>14}{'speedup':>10}{'max diff':>12}")
    for name, args_ in cases(args.n, args.degree, args.points).items():
        c_fn, py_fn = getattr(_ckernels, name), getattr(_pykernels, name)
        diff = float(np.max(np.abs(np.asarray(c_fn(*args_)) - np.asarray(py_fn(*args_)))))
        tc = best_time(c_fn, args_, args.repeat)
        tp = best_time(py_fn, args_, args.repeat)
        print(f"{name:<22}{1e3 * tc:>14.3f}{1e3 * tp:>14.3f}{tp / tc:>9.1f}x{diff:>12.1e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
