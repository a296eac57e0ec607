"""Gauss map, immersion, and period closure for helicoid-type ends.

The immersion is X(z) = X(z0) + Re of the path integral of the one-form
``(phi1, phi2, phi3) dz`` with

    phi1 = i*sinh(W),  phi2 = cosh(W),  phi3 = -i,     W = log(A) + exponent(z),

which is the Weierstrass integrand for Gauss map g = exp(W) and height
differential dh = -i dz.  Positions are normalized so the default basepoint
i*(rmin+1) maps to (0, 0, rmin+1); the third coordinate then equals Im(z)
everywhere (up to quadrature error).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import kernels
from .descriptor import EndDescriptor
from .errors import DomainError, ToleranceError
from .paths import Arc, Segment, plan_route, segment_min_radius, through_waypoints

_GL16_X, _GL16_W = leggauss(16)
_GL32_X, _GL32_W = leggauss(32)

#: |Re W| beyond which exp/sinh/cosh of the exponent overflow double precision.
OVERFLOW_GUARD = 700.0

#: Maximum bisection depth per path piece (2^14 panels).
MAX_DEPTH = 14


@dataclass(frozen=True)
class SurfacePoint:
    """Immersion data at one parameter value."""

    z: complex
    position: np.ndarray  # shape (3,)
    gauss: complex
    logg_deriv: complex


@dataclass(frozen=True)
class PeriodReport:
    """Absolute period defects around a circle |z| = radius."""

    radius: float
    horizontal_defect: tuple[float, float]
    vertical_defect: float
    nodes: int

    @property
    def max_defect(self) -> float:
        return max(*self.horizontal_defect, self.vertical_defect)


def check_domain(d: EndDescriptor, z) -> None:
    z = np.asarray(z, dtype=complex)
    bad = np.abs(z) < d.rmin * (1.0 - 1e-12)
    if np.any(bad):
        offender = z.ravel()[np.argmax(bad.ravel())]
        raise DomainError(f"z = {offender:g} lies inside |z| < rmin = {d.rmin:g}")


def exponent(d: EndDescriptor, z):
    """W(z) = log(A) + c0*z + sum c_k z^(1-2k) (the log of the Gauss map)."""
    return kernels.eval_exponent(d.c0, d.coefficients, z) + d.integration_constant()


def gauss_map(d: EndDescriptor, z):
    """g(z) as a single exp of the summed exponent (branch-free)."""
    check_domain(d, z)
    w = exponent(d, z)
    _guard_overflow(w)
    return np.exp(w)


def log_derivative(d: EndDescriptor, z):
    """g'/g = c0 + sum (1-2k) c_k z^(-2k)."""
    check_domain(d, z)
    return kernels.log_derivative(d.c0, d.coefficients, z)


def _guard_overflow(w) -> None:
    m = np.max(np.abs(np.real(w))) if np.ndim(w) else abs(w.real)
    if m > OVERFLOW_GUARD:
        raise DomainError(
            f"|Re W| = {m:.3g} overflows double precision (guard {OVERFLOW_GUARD:g})")


def integrand(d: EndDescriptor, z):
    """The three components (phi1, phi2, phi3) at z; shape (3,) + z.shape."""
    w = exponent(d, z)
    _guard_overflow(w)
    return np.stack([1j * np.sinh(w), np.cosh(w),
                     np.full_like(np.asarray(w), -1j)])


def _panel(d, piece, s0, s1, xs, ws):
    mid = 0.5 * (s0 + s1)
    half = 0.5 * (s1 - s0)
    s = mid + half * xs
    z = piece.point(s)
    f = integrand(d, z) * piece.velocity(s)
    vals = f @ ws * half
    scale = float(np.abs(f).max()) * abs(half) * 2.0
    return vals, scale


def _integrate_piece(d, piece, tol, s0=0.0, s1=1.0, depth=0):
    i16, _ = _panel(d, piece, s0, s1, _GL16_X, _GL16_W)
    i32, scale = _panel(d, piece, s0, s1, _GL32_X, _GL32_W)
    err = float(np.abs(i32 - i16).max())
    # rounding floor: absolute agreement below eps * data scale is unattainable
    floor = 64.0 * np.finfo(float).eps * scale
    if err <= max(tol, floor):
        return i32, min(err, max(tol, floor))
    if depth >= MAX_DEPTH:
        raise ToleranceError(
            f"quadrature did not reach {tol:g} after {MAX_DEPTH} bisections "
            f"(achieved {err:g})", achieved=err)
    lv, le = _integrate_piece(d, piece, 0.5 * tol, s0, 0.5 * (s0 + s1), depth + 1)
    rv, re_ = _integrate_piece(d, piece, 0.5 * tol, 0.5 * (s0 + s1), s1, depth + 1)
    return lv + rv, le + re_


def integrate_path(d: EndDescriptor, pieces, tol: float = 1e-10):
    """Integral of (phi1, phi2, phi3) dz along the pieces, with error estimate."""
    total = np.zeros(3, dtype=complex)
    err = 0.0
    per_piece = tol / max(1, len(pieces))
    for piece in pieces:
        v, e = _integrate_piece(d, piece, per_piece)
        total += v
        err += e
    return total, err


def immersion(d: EndDescriptor, z: complex, basepoint: complex | None = None,
              waypoints=None, tol: float = 1e-10) -> SurfacePoint:
    """Immersion X(z) with the normalization X(i*(rmin+1)) = (0, 0, rmin+1).

    The route is an axis-parallel polyline from the basepoint with arc
    detours around the excluded disk; pass ``waypoints`` for an explicit
    polyline route instead (used to probe homotopy classes).
    """
    z = complex(z)
    check_domain(d, z)
    if basepoint is None:
        basepoint = d.basepoint()
    check_domain(d, basepoint)
    if waypoints is not None:
        pieces = through_waypoints([basepoint, *waypoints, z], d.rmin)
    else:
        pieces = plan_route(basepoint, z, d.rmin)
    integral, _ = integrate_path(d, pieces, tol)
    origin = np.array([0.0, 0.0, basepoint.imag])
    pos = origin + np.real(integral)
    return SurfacePoint(z=z, position=pos, gauss=complex(gauss_map(d, z)),
                        logg_deriv=complex(log_derivative(d, z)))


def immersion_along_line(d: EndDescriptor, z_start: complex, z_end: complex,
                         n: int, start_position: np.ndarray,
                         tol_per_gap: float = 1e-12):
    """Positions at n equispaced samples of the segment [z_start, z_end].

    The first sample is pinned to ``start_position``; consecutive gaps are
    integrated with a vectorized 16/32-node panel pass and only failing gaps
    fall back to the adaptive integrator (with disk detours when a gap dips
    inside |z| < rmin).
    """
    zs = np.linspace(complex(z_start), complex(z_end), n)
    gaps = list(zip(zs[:-1], zs[1:]))
    deltas = np.zeros((len(gaps), 3))
    direct = np.array([segment_min_radius(a, b) >= d.rmin for a, b in gaps])

    if np.any(direct):
        a = zs[:-1][direct]
        b = zs[1:][direct]
        d16 = _line_panels(d, a, b, _GL16_X, _GL16_W)
        d32 = _line_panels(d, a, b, _GL32_X, _GL32_W)
        err = np.abs(d32 - d16).max(axis=0)
        ok = err <= np.maximum(tol_per_gap,
                               64.0 * np.finfo(float).eps * np.abs(d32).max(axis=0))
        deltas[np.flatnonzero(direct)[ok]] = np.real(d32[:, ok]).T
        for idx in np.flatnonzero(direct)[~ok]:
            v, _ = integrate_path(d, [Segment(*gaps[idx])], tol_per_gap)
            deltas[idx] = np.real(v)
    for idx in np.flatnonzero(~direct):
        a, b = gaps[idx]
        v, _ = integrate_path(d, through_waypoints([a, b], d.rmin), tol_per_gap)
        deltas[idx] = np.real(v)

    pos = np.empty((n, 3))
    pos[0] = start_position
    np.cumsum(deltas, axis=0, out=pos[1:])
    pos[1:] += start_position
    return zs, pos


def _line_panels(d, a, b, xs, ws):
    half = 0.5 * (b - a)
    nodes = (a + half)[None, :] + np.outer(xs, half)
    f = integrand(d, nodes)  # (3, len(xs), len(a))
    return np.einsum("kij,i->kj", f, ws) * half[None, :]


def period_check(d: EndDescriptor, radius: float, tol: float = 1e-12,
                 nodes: int = 256, max_nodes: int = 1 << 16) -> PeriodReport:
    """Period defects of Eq.-closure type around |z| = radius.

    Computes |Re contour (g^-1 - g) dh|, |Re i contour (g^-1 + g) dh| and the
    x3 period |contour dh| by the trapezoid rule with node doubling.  All three
    vanish exactly when the residue condition holds and |A| is arbitrary.
    """
    if radius < d.rmin:
        raise DomainError(f"radius {radius:g} below rmin {d.rmin:g}")

    def defects(nn):
        theta = np.arange(nn) * (2.0 * math.pi / nn)
        z = radius * np.exp(1j * theta)
        w = exponent(d, z)
        _guard_overflow(w)
        g = np.exp(w)
        dz = 1j * z * (2.0 * math.pi / nn)  # trapezoid weight on the circle
        int_minus = np.sum((1.0 / g - g) * dz)
        int_plus = np.sum((1.0 / g + g) * dz)
        int_dz = np.sum(dz)
        h1 = (-1j * int_minus).real          # Re of (g^-1 - g) dh
        h2 = (1j * -1j * int_plus).real      # Re of i (g^-1 + g) dh
        v = abs((-1j * int_dz).real)
        return np.array([h1, h2, v])

    prev = defects(nodes)
    n = nodes
    while n <= max_nodes:
        n *= 2
        cur = defects(n)
        if np.max(np.abs(cur - prev)) <= tol * max(1.0, float(np.max(np.abs(cur)))):
            return PeriodReport(radius=radius,
                                horizontal_defect=(abs(cur[0]), abs(cur[1])),
                                vertical_defect=abs(cur[2]), nodes=n)
        prev = cur
    raise ToleranceError("period quadrature did not stabilize",
                         achieved=float(np.max(np.abs(cur - prev))))


def helicoid_closed_form(z):
    """Exact helicoid immersion (-sinh t sin a, sinh t cos a, a) at z = t + i*a."""
    z = np.asarray(z, dtype=complex)
    t, alpha = z.real, z.imag
    return np.stack([-np.sinh(t) * np.sin(alpha),
                     np.sinh(t) * np.cos(alpha),
                     alpha], axis=-1)
