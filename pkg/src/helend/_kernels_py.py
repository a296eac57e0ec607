"""Pure-numpy implementations of the hot kernels (fallback backend).

Same call signatures as the compiled extension ``helend._kernels``.
"""

from __future__ import annotations

import numpy as np


def eval_exponent(c0, coeffs, z):
    """c0*z + sum_{k>=1} coeffs[k-1] * z^(1-2k) for complex z (any shape)."""
    z = np.asarray(z, dtype=complex)
    w = c0 * z
    if len(coeffs):
        inv2 = 1.0 / (z * z)
        p = z.copy()
        for ck in coeffs:
            p = p * inv2  # z^(1-2k) for k = 1, 2, ...
            w = w + ck * p
    if w.ndim == 0:
        return complex(w)
    return w


def log_derivative(c0, coeffs, z):
    """d/dz of the exponent: c0 + sum_{k>=1} (1-2k) * coeffs[k-1] * z^(-2k)."""
    z = np.asarray(z, dtype=complex)
    w = np.full_like(z, c0, dtype=complex)
    if len(coeffs):
        inv2 = 1.0 / (z * z)
        p = np.ones_like(z)
        for k, ck in enumerate(coeffs, start=1):
            p = p * inv2  # z^(-2k)
            w = w + (1 - 2 * k) * ck * p
    if w.ndim == 0:
        return complex(w)
    return w


def polyline_intersections(pts):
    """Indices (i, j) of non-adjacent segments of an open polyline that intersect.

    Segment i joins pts[i] to pts[i+1]; pairs with |i-j| <= 1 are skipped.
    Touching configurations (an endpoint exactly on the other segment) count
    as intersections.  Returns an (m, 2) int array sorted lexicographically.
    """
    pts = np.asarray(pts, dtype=float)
    n = len(pts) - 1
    if n < 3:
        return np.empty((0, 2), dtype=np.intp)
    p = pts[:-1]
    q = pts[1:]
    lo = np.minimum(p, q)
    hi = np.maximum(p, q)
    out = []
    for i in range(n - 2):
        j0 = i + 2
        # bounding-box prefilter against all later segments
        cand = np.nonzero(
            (lo[j0:, 0] <= hi[i, 0]) & (hi[j0:, 0] >= lo[i, 0]) &
            (lo[j0:, 1] <= hi[i, 1]) & (hi[j0:, 1] >= lo[i, 1]))[0] + j0
        if cand.size == 0:
            continue
        a, b = p[i], q[i]
        c, d = p[cand], q[cand]
        ab = b - a
        d1 = ab[0] * (c[:, 1] - a[1]) - ab[1] * (c[:, 0] - a[0])
        d2 = ab[0] * (d[:, 1] - a[1]) - ab[1] * (d[:, 0] - a[0])
        cd = d - c
        d3 = cd[:, 0] * (a[1] - c[:, 1]) - cd[:, 1] * (a[0] - c[:, 0])
        d4 = cd[:, 0] * (b[1] - c[:, 1]) - cd[:, 1] * (b[0] - c[:, 0])
        proper = (d1 * d2 < 0) & (d3 * d4 < 0)
        touching = (d1 * d2 == 0) | (d3 * d4 == 0)
        hit = proper | (touching & (d1 * d2 <= 0) & (d3 * d4 <= 0))
        for j in cand[hit]:
            out.append((i, int(j)))
    if not out:
        return np.empty((0, 2), dtype=np.intp)
    return np.array(sorted(out), dtype=np.intp)
