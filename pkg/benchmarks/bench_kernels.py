#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the two hot paths (complex exponent evaluation at quadrature nodes and
the O(n^2) polyline self-intersection sweep) plus one end-to-end workload
(the embeddedness check of a level curve).

Usage: python benchmarks/bench_kernels.py [--segments 2000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from helend import _kernels_py
from helend import simple_family_end
from helend.geometry import level_curve

try:
    from helend import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def row(name, t_py, t_c):
    if t_c is None:
        print(f"{name:<38} {t_py * 1e3:>10.2f} ms {'-':>12}")
    else:
        print(f"{name:<38} {t_py * 1e3:>10.2f} ms {t_c * 1e3:>9.2f} ms "
              f"  x{t_py / t_c:.1f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--segments", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    d = simple_family_end(1)
    print(f"compiled extension available: {_kernels is not None}")
    print(f"{'workload':<38} {'python':>13} {'compiled':>12}")

    rng = np.random.default_rng(0)
    z = rng.uniform(0.6, 20, 200_000) * np.exp(1j * rng.uniform(0, 2 * np.pi,
                                                                200_000))
    c = list(d.coefficients)
    t_py = best_of(lambda: _kernels_py.eval_exponent(1.0, c, z), args.repeat)
    t_c = (best_of(lambda: _kernels.eval_exponent(1.0, c, z), args.repeat)
           if _kernels else None)
    row("eval_exponent (200k nodes)", t_py, t_c)

    curve = level_curve(d, 2.0, (-15.0, 15.0), args.segments + 1)
    pts = np.column_stack([curve.pts.real, curve.pts.imag])
    t_py = best_of(lambda: _kernels_py.polyline_intersections(pts), args.repeat)
    t_c = (best_of(lambda: _kernels.polyline_intersections(pts), args.repeat)
           if _kernels else None)
    row(f"polyline_intersections ({args.segments} segs)", t_py, t_c)

    # end-to-end: full embeddedness check with the kernel backend patched in
    from helend import kernels as selected
    from helend.geometry import embeddedness_check

    def embed_full(impl):
        def run():
            old = selected.polyline_intersections
            selected.polyline_intersections = impl.polyline_intersections
            try:
                embeddedness_check(d, [2.0, -2.0], (-15.0, 15.0),
                                   n=args.segments)
            finally:
                selected.polyline_intersections = old
        return run

    t_py = best_of(embed_full(_kernels_py), args.repeat)
    t_c = best_of(embed_full(_kernels), args.repeat) if _kernels else None
    row("embeddedness check (2 curves)", t_py, t_c)


if __name__ == "__main__":
    main()
