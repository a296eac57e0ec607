# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels.

Mirrors the API of ``helend._kernels_py``; selected at import by
``helend.kernels`` when available.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def eval_exponent(double c0, coeffs, z):
    """c0*z + sum_{k>=1} coeffs[k-1] * z^(1-2k) for complex z (any shape)."""
    cdef cnp.ndarray zf = np.ascontiguousarray(
        np.atleast_1d(np.asarray(z, dtype=complex)).ravel())
    cdef cnp.ndarray cf = np.ascontiguousarray(np.asarray(coeffs, dtype=float))
    cdef double complex[::1] zv = zf
    cdef double[::1] cv = cf
    cdef Py_ssize_t n = zv.shape[0], m = cv.shape[0]
    out_arr = np.empty(n, dtype=complex)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double complex w, p, inv2, zi
    for i in range(n):
        zi = zv[i]
        w = c0 * zi
        if m:
            inv2 = 1.0 / (zi * zi)
            p = zi
            for k in range(m):
                p = p * inv2
                w = w + cv[k] * p
        out[i] = w
    res = out_arr.reshape(np.shape(z))
    if res.ndim == 0:
        return complex(res)
    return res


def log_derivative(double c0, coeffs, z):
    """d/dz of the exponent: c0 + sum_{k>=1} (1-2k) * coeffs[k-1] * z^(-2k)."""
    cdef cnp.ndarray zf = np.ascontiguousarray(
        np.atleast_1d(np.asarray(z, dtype=complex)).ravel())
    cdef cnp.ndarray cf = np.ascontiguousarray(np.asarray(coeffs, dtype=float))
    cdef double complex[::1] zv = zf
    cdef double[::1] cv = cf
    cdef Py_ssize_t n = zv.shape[0], m = cv.shape[0]
    out_arr = np.empty(n, dtype=complex)
    cdef double complex[::1] out = out_arr
    cdef Py_ssize_t i, k
    cdef double complex w, p, inv2, zi
    for i in range(n):
        zi = zv[i]
        w = c0
        if m:
            inv2 = 1.0 / (zi * zi)
            p = 1.0
            for k in range(m):
                p = p * inv2
                w = w + (1.0 - 2.0 * (k + 1)) * cv[k] * p
        out[i] = w
    res = out_arr.reshape(np.shape(z))
    if res.ndim == 0:
        return complex(res)
    return res


def polyline_intersections(pts):
    """Indices (i, j) of non-adjacent segments of an open polyline that intersect.

    Touching configurations count; pairs with |i-j| <= 1 are skipped.
    """
    cdef cnp.ndarray pf = np.ascontiguousarray(np.asarray(pts, dtype=float))
    cdef double[:, ::1] p = pf
    cdef Py_ssize_t n = p.shape[0] - 1
    if n < 3:
        return np.empty((0, 2), dtype=np.intp)

    lo_arr = np.minimum(pf[:-1], pf[1:])
    hi_arr = np.maximum(pf[:-1], pf[1:])
    cdef double[:, ::1] lo = lo_arr
    cdef double[:, ::1] hi = hi_arr

    out = []
    cdef Py_ssize_t i, j
    cdef double ax, ay, bx, by, cx, cy, dx, dy
    cdef double abx, aby, cdx, cdy, d1, d2, d3, d4
    for i in range(n - 2):
        ax = p[i, 0]; ay = p[i, 1]
        bx = p[i + 1, 0]; by = p[i + 1, 1]
        abx = bx - ax; aby = by - ay
        for j in range(i + 2, n):
            if lo[j, 0] > hi[i, 0] or hi[j, 0] < lo[i, 0]:
                continue
            if lo[j, 1] > hi[i, 1] or hi[j, 1] < lo[i, 1]:
                continue
            cx = p[j, 0]; cy = p[j, 1]
            dx = p[j + 1, 0]; dy = p[j + 1, 1]
            d1 = abx * (cy - ay) - aby * (cx - ax)
            d2 = abx * (dy - ay) - aby * (dx - ax)
            if d1 * d2 > 0:
                continue
            cdx = dx - cx; cdy = dy - cy
            d3 = cdx * (ay - cy) - cdy * (ax - cx)
            d4 = cdx * (by - cy) - cdy * (bx - cx)
            if d3 * d4 > 0:
                continue
            out.append((i, j))
    if not out:
        return np.empty((0, 2), dtype=np.intp)
    return np.array(out, dtype=np.intp)
