"""Time the numba stencil kernels against the pure-numpy fallback.

Runs the 3-D gradient and laplacian on a random cube for both backends,
reports best-of-N wall times and the speedup, and verifies that the two
implementations agree bit for bit.  Usage:

    python benchmarks/compare_backends.py --points 128 --repeats 5
"""

import argparse
import time

import numpy as np

from ke_lab import _fd_numpy

try:
    from ke_lab import _fd_numba
except ImportError:
    _fd_numba = None


def best_time(func, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - start)
    return best


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=128,
                        help="cube edge in grid points (default 128)")
    parser.add_argument("--repeats", type=int, default=5,
                        help="timing repeats, best one reported (default 5)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    values = rng.random((args.points,) * 3)
    spacing = 1.0 / args.points

    if _fd_numba is None:
        print("numba backend unavailable; nothing to compare against")
        return 1

    print(f"cube {args.points}^3, spacing {spacing:g}, best of {args.repeats}")
    print(f"{'kernel':<22}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}")
    for label, attr, periodic in (
        ("gradient open", "gradient", False),
        ("gradient periodic", "gradient", True),
        ("laplacian open", "laplacian", False),
        ("laplacian periodic", "laplacian", True),
    ):
        numpy_func = getattr(_fd_numpy, attr)
        numba_func = getattr(_fd_numba, attr)
        numba_func(values, spacing, periodic)  # compile before timing
        reference = numpy_func(values, spacing, periodic)
        candidate = numba_func(values, spacing, periodic)
        if attr == "gradient":
            matches = all(np.array_equal(a, b) for a, b in zip(reference, candidate))
        else:
            matches = np.array_equal(reference, candidate)
        if not matches:
            print(f"{label}: BACKEND MISMATCH")
            return 1
        t_numpy = best_time(lambda: numpy_func(values, spacing, periodic), args.repeats)
        t_numba = best_time(lambda: numba_func(values, spacing, periodic), args.repeats)
        print(f"{label:<22}{t_numpy:>12.4f}{t_numba:>12.4f}{t_numpy / t_numba:>10.2f}")
    print("backends agree bit for bit on every kernel")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
