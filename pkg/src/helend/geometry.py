"""Level-curve analytics and the geometric verification suite.

Covers horizontal/vertical rays, the total-curvature bound, tangent-direction
asymptotics, polyline embeddedness with cone membership, distance to the
reference helicoid, and the no-line-asymptote divergence check for the
one-coefficient family.

Curvature and speed of level curves follow the (1/4)(|g|+|g|^-1) metric
normalization used by the curvature bound; the immersion's Euclidean speed is
exactly twice the ``speed`` field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import kernels
from .descriptor import EndDescriptor
from .errors import DomainError, UnsupportedDescriptorError
from .paths import Arc
from .weierstrass import (gauss_map, immersion, immersion_along_line,
                          integrate_path, log_derivative)

_GL16_X, _GL16_W = leggauss(16)


def _wrap(x):
    """Representative of x in (-pi, pi], vectorized."""
    return np.angle(np.exp(1j * np.asarray(x, dtype=float)))


# ---------------------------------------------------------------------------
# report plumbing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    """One named measurement against a bound.

    kind "upper": pass iff measured <= bound + tolerance;
    kind "lower": pass iff measured >= bound - tolerance;
    kind "equality": pass iff |measured| <= tolerance (bound is 0).
    """

    name: str
    measured: float
    bound: float
    tolerance: float
    passed: bool
    kind: str = "upper"
    note: str = ""

    @classmethod
    def upper(cls, name, measured, bound, tolerance, note=""):
        return cls(name, float(measured), float(bound), float(tolerance),
                   float(measured) <= float(bound) + float(tolerance), "upper", note)

    @classmethod
    def lower(cls, name, measured, bound, tolerance=0.0, note=""):
        return cls(name, float(measured), float(bound), float(tolerance),
                   float(measured) >= float(bound) - float(tolerance), "lower", note)

    @classmethod
    def equality(cls, name, measured, tolerance, note=""):
        return cls(name, float(measured), 0.0, float(tolerance),
                   abs(float(measured)) <= float(tolerance), "equality", note)

    def to_dict(self):
        return {"name": self.name, "measured": self.measured, "bound": self.bound,
                "tolerance": self.tolerance, "pass": self.passed,
                "kind": self.kind, "note": self.note}


@dataclass(frozen=True)
class VerificationReport:
    """Named checks with measured values, bounds, and pass flags."""

    checks: tuple[CheckResult, ...]
    notes: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self):
        return {"pass": self.passed, "notes": self.notes,
                "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        lines = []
        for c in self.checks:
            rel = {"upper": "<=", "lower": ">=", "equality": "~"}[c.kind]
            lines.append(f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: "
                         f"{c.measured:.6g} {rel} {c.bound:.6g} "
                         f"(tol {c.tolerance:g}){'  # ' + c.note if c.note else ''}")
        if self.notes:
            lines.append(f"notes: {self.notes}")
        return "\n".join(lines)


def combine_reports(*reports: VerificationReport) -> VerificationReport:
    checks = tuple(c for r in reports for c in r.checks)
    notes = "; ".join(r.notes for r in reports if r.notes)
    return VerificationReport(checks=checks, notes=notes)


@dataclass(frozen=True)
class ConeNeighborhood:
    """Angular wedge of half-width epsilon about the ruling ray at height alpha."""

    alpha: float
    epsilon: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < math.pi / 2:
            raise ValueError("epsilon must lie in (0, pi/2)")

    @property
    def axis_angle(self) -> float:
        """Planar angle of the ruling direction at this height."""
        return math.pi / 2 + self.alpha

    def contains(self, points) -> np.ndarray:
        """Membership of planar points (complex array) in the wedge."""
        ang = np.angle(np.asarray(points, dtype=complex))
        return np.abs(_wrap(ang - self.axis_angle)) <= self.epsilon


# ---------------------------------------------------------------------------
# level curves
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LevelCurve:
    """Sampled level curve at height alpha (image of Im z = alpha)."""

    alpha: float
    ts: np.ndarray
    pts: np.ndarray           # planar projection x1 + i*x2
    x3: np.ndarray            # integrated heights (= alpha up to quadrature)
    tangents: np.ndarray      # unit tangents i*g/|g|
    kappa: np.ndarray         # planar curvature, (1/4)-metric normalization
    speed: np.ndarray         # ds/dt = (1/4)(|g| + |g|^-1)
    positions: np.ndarray = field(repr=False, default=None)

    def __len__(self):
        return len(self.ts)


def level_curve(d: EndDescriptor, alpha: float, t_range: tuple[float, float],
                n: int, tol_per_gap: float = 1e-12) -> LevelCurve:
    """Level curve gamma_alpha over t in t_range with n samples.

    Positions come from incremental integration along the line; curvature and
    speed are evaluated analytically from the Gauss map.
    """
    t0, t1 = t_range
    if not t0 < t1:
        raise ValueError("t_range must be increasing")
    ts = np.linspace(t0, t1, n)
    zs = ts + 1j * alpha
    radii = np.abs(zs)
    if np.any(radii < d.rmin * (1 - 1e-12)):
        bad = int(np.argmax(radii < d.rmin * (1 - 1e-12)))
        raise DomainError(
            f"sample t = {ts[bad]:g} at height {alpha:g} lies inside "
            f"|z| < rmin = {d.rmin:g}")
    if abs(alpha) < d.rmin and t0 < 0 < t1:
        raise DomainError(
            f"the line Im z = {alpha:g} crosses the excluded disk between "
            f"samples; restrict t_range away from 0")

    start = immersion(d, complex(zs[0]))
    _, positions = immersion_along_line(d, complex(zs[0]), complex(zs[-1]), n,
                                        start.position, tol_per_gap)
    g = gauss_map(d, zs)
    logd = log_derivative(d, zs)
    mag = np.abs(g)
    width = mag + 1.0 / mag
    return LevelCurve(alpha=float(alpha), ts=ts,
                      pts=positions[:, 0] + 1j * positions[:, 1],
                      x3=positions[:, 2],
                      tangents=1j * g / mag,
                      kappa=np.imag(logd) / width,
                      speed=width / 4.0,
                      positions=positions)


def total_curvature_check(curve: LevelCurve, S: float,
                          tol: float = 1e-6) -> VerificationReport:
    """Total absolute curvature of a level curve against S*pi/(4|alpha|).

    The embedded-line criterion (< pi) is additionally checked whenever
    |alpha| > S/4; for alpha = 0 the bound degenerates and only the measured
    value is reported.
    """
    measured = float(np.trapezoid(np.abs(curve.kappa) * curve.speed, curve.ts))
    checks = []
    if curve.alpha != 0.0:
        bound = S * math.pi / (4.0 * abs(curve.alpha))
        checks.append(CheckResult.upper(
            f"total_curvature[alpha={curve.alpha:g}]", measured, bound, tol,
            note=f"S = {S:g}"))
    if abs(curve.alpha) > S / 4.0:
        checks.append(CheckResult.upper(
            f"embedded_line_criterion[alpha={curve.alpha:g}]", measured,
            math.pi, 0.0, note="total |kappa| ds strictly below pi"))
    if not checks:
        checks.append(CheckResult.upper(
            f"total_curvature[alpha={curve.alpha:g}]", measured, math.inf, tol,
            note="alpha = 0: bound degenerate, value reported only"))
    return VerificationReport(checks=tuple(checks), notes=f"S = {S:g}")


# ---------------------------------------------------------------------------
# direction asymptotics
# ---------------------------------------------------------------------------

def tangent_direction_check(d: EndDescriptor, alphas, ts,
                            ratio_bound: float = 10.0,
                            radius_range: tuple[float, float] | None = None,
                            trend_tol: float = 0.1) -> VerificationReport:
    """Deviation of the level-curve tangent from pi/2 + alpha over a grid.

    Measures delta(z) = |arg gamma' - (pi/2 + c0*alpha)| (nearest
    representative) and tests that the products delta*|z| are uniformly
    bounded: max <= ratio_bound * median, and no growth trend of the product
    in |z| (normalized regression slope below ``trend_tol``).
    """
    if not d.normalized:
        raise UnsupportedDescriptorError(
            "direction asymptotics require the normalized end "
            "(modulus 1, phase 0)")
    tt, aa = np.meshgrid(np.asarray(ts, float), np.asarray(alphas, float))
    z = (tt + 1j * aa).ravel()
    r = np.abs(z)
    keep = r >= d.rmin
    if radius_range is not None:
        keep &= (r >= radius_range[0]) & (r <= radius_range[1])
    z, r = z[keep], r[keep]
    if z.size < 8:
        raise ValueError("grid too small after the radius filter")
    g = gauss_map(d, z)
    # arg gamma' = pi/2 + arg g; deviation from pi/2 + c0*alpha
    delta = np.abs(_wrap(np.angle(g) - d.c0 * z.imag))
    products = delta * r
    med = float(np.median(products))
    mx = float(np.max(products))
    if mx > 1e-10:
        slope = float(np.polyfit(r, products, 1)[0])
        norm_slope = slope * (r.max() - r.min()) / mx
    else:
        norm_slope = 0.0  # products at rounding noise: no trend to measure
    checks = (
        CheckResult.upper("direction_product_max_over_median",
                          mx / max(med, 1e-300), ratio_bound, 0.0,
                          note=f"fitted C = {mx:.6g}"),
        CheckResult.upper("direction_product_growth_trend", norm_slope,
                          0.0, trend_tol,
                          note="normalized slope of delta*|z| against |z|"),
    )
    return VerificationReport(checks=checks,
                              notes=f"fitted C = {mx:.6g} over {z.size} samples")


# ---------------------------------------------------------------------------
# rays
# ---------------------------------------------------------------------------

def _line_fit_residual(points: np.ndarray) -> float:
    """Max distance from 3-d points to their best-fit line (PCA)."""
    center = points.mean(axis=0)
    rel = points - center
    _, _, vt = np.linalg.svd(rel, full_matrices=False)
    axis = vt[0]
    residual = rel - np.outer(rel @ axis, axis)
    return float(np.sqrt((residual ** 2).sum(axis=1)).max())


def ray_check(d: EndDescriptor, t_range: tuple[float, float], n: int = 101,
              line_tol: float = 1e-8, x3_tol: float = 1e-10,
              sff_tol: float = 1e-12,
              re_lines=None) -> VerificationReport:
    """Horizontal/vertical ray verification.

    Checks (a) both images of |t| in t_range are straight horizontal rays,
    (b) the image of the imaginary axis is a vertical line with x3 = Im z
    (only when modulus == 1; otherwise a no-vertical-ray diagnostic samples
    |g| along vertical lines), and (c) the asymptotic-direction criterion
    Im(g'/g) = 0 along both axes.
    """
    t0, t1 = t_range
    if not d.rmin <= t0 < t1:
        raise ValueError("t_range must satisfy rmin <= t0 < t1")
    checks = []
    notes = []

    for sign, label in ((1.0, "positive"), (-1.0, "negative")):
        a, b = (sign * t0, sign * t1) if sign > 0 else (sign * t1, sign * t0)
        start = immersion(d, complex(a))
        _, pos = immersion_along_line(d, complex(a), complex(b), n, start.position)
        checks.append(CheckResult.upper(
            f"horizontal_ray_collinear[{label}]", _line_fit_residual(pos),
            0.0, line_tol))
        checks.append(CheckResult.upper(
            f"horizontal_ray_x3_constant[{label}]",
            float(pos[:, 2].max() - pos[:, 2].min()), 0.0, x3_tol))

    if d.unitary:
        y0, y1 = t0, t1
        start = immersion(d, complex(0.0, y0))
        _, pos = immersion_along_line(d, complex(0.0, y0), complex(0.0, y1),
                                      n, start.position)
        planar = float(np.abs(pos[:, :2]).max())
        checks.append(CheckResult.upper("vertical_ray_planar_deviation",
                                        planar, 0.0, line_tol))
        hts = np.linspace(y0, y1, n)
        checks.append(CheckResult.upper(
            "vertical_ray_x3_equals_height",
            float(np.abs(pos[:, 2] - hts).max()), 0.0, line_tol))
    else:
        diag = no_vertical_ray_diagnostic(d, re_lines=re_lines)
        checks.extend(diag.checks)
        notes.append("modulus != 1: no vertical ray expected; "
                     "|g| sampled along vertical lines instead")

    ts = np.linspace(t0, t1, n)
    im_real_axis = float(np.abs(np.imag(log_derivative(d, ts + 0j))).max())
    checks.append(CheckResult.upper(
        "asymptotic_direction_real_axis", im_real_axis, 0.0, sff_tol,
        note="Im(g'/g) on the real axis"))
    ys = np.linspace(max(t0, d.rmin), t1, n)
    im_imag_axis = float(np.abs(np.imag(log_derivative(d, 1j * ys))).max())
    checks.append(CheckResult.upper(
        "asymptotic_direction_imaginary_axis", im_imag_axis, 0.0, sff_tol,
        note="Im(g'/g) on the imaginary axis"))

    return VerificationReport(checks=tuple(checks), notes="; ".join(notes))


def no_vertical_ray_diagnostic(d: EndDescriptor, re_lines=None,
                               t_range: tuple[float, float] = (0.0, 10.0),
                               n: int = 200,
                               std_floor: float = 0.01) -> VerificationReport:
    """Sample |g| along vertical lines Re z = const.

    A vertical ray requires |g| constant on some such line; reporting the
    minimum standard deviation above ``std_floor`` supports its absence.
    """
    if re_lines is None:
        re_lines = np.linspace(0.5, 5.0, 20)
    stds = []
    for x in np.asarray(re_lines, dtype=float):
        ts = np.linspace(t_range[0], t_range[1], n)
        zs = x + 1j * ts
        zs = zs[np.abs(zs) >= d.rmin]
        stds.append(float(np.std(np.abs(gauss_map(d, zs)))))
    measured = min(stds)
    check = CheckResult.lower(
        "no_vertical_ray_min_gauss_std", measured, std_floor,
        note=f"min std of |g| over {len(stds)} vertical lines")
    return VerificationReport(checks=(check,))


# ---------------------------------------------------------------------------
# embeddedness
# ---------------------------------------------------------------------------

def _cone_transition(ts, member) -> float | None:
    """Smallest sampled |t| beyond which membership holds for all samples."""
    if member.size == 0:
        return None
    bad = np.flatnonzero(~member)
    if bad.size == 0:
        return float(np.min(np.abs(ts)))
    last_bad = bad[-1] if ts[0] >= 0 else bad[0]
    # samples are ordered by |t| along each half-curve
    idx = last_bad + 1 if ts[0] >= 0 else last_bad - 1
    if idx < 0 or idx >= len(ts):
        return None
    return float(abs(ts[idx]))


def embeddedness_check(d: EndDescriptor, alphas, t_range: tuple[float, float],
                       n: int = 2000, epsilon: float = 0.2) -> VerificationReport:
    """Polyline self-intersection test plus cone membership of the curve ends.

    For each alpha the level curve is sampled with ``n`` segments and every
    non-adjacent segment pair is tested exactly; additionally the two ends
    must enter the opposite wedges of half-width epsilon about the ruling
    directions, beyond a measured transition parameter T.
    """
    if not d.normalized:
        raise UnsupportedDescriptorError(
            "embeddedness verification requires the normalized end")
    checks = []
    t_max = max(abs(t_range[0]), abs(t_range[1]))
    for alpha in sorted(np.asarray(alphas, dtype=float)):
        curve = level_curve(d, float(alpha), t_range, n + 1)
        pts2 = np.column_stack([curve.pts.real, curve.pts.imag])
        hits = kernels.polyline_intersections(pts2)
        note = ""
        if len(hits):
            worst = ", ".join(f"(t={curve.ts[i]:.4g}, t={curve.ts[j]:.4g})"
                              for i, j in hits[:4])
            note = f"intersecting segment parameters: {worst}"
        checks.append(CheckResult.equality(
            f"self_intersections[alpha={alpha:g}]", float(len(hits)), 0.0,
            note=note))

        cone_pos = ConeNeighborhood(alpha=float(alpha), epsilon=epsilon)
        cone_neg = ConeNeighborhood(alpha=float(alpha) + math.pi, epsilon=epsilon)
        pos_side = curve.ts > 0
        neg_side = curve.ts < 0
        t_cones = []
        for side, cone, label in ((pos_side, cone_pos, "pos"),
                                  (neg_side, cone_neg, "neg")):
            if not np.any(side):
                continue
            tt = curve.ts[side]
            member = cone.contains(curve.pts[side])
            T = _cone_transition(tt, member)
            measured = T if T is not None else math.inf
            t_cones.append(measured)
            checks.append(CheckResult.upper(
                f"cone_membership_T[alpha={alpha:g},{label}]", measured,
                0.9 * t_max, 0.0,
                note=f"wedge half-width {epsilon:g} about angle "
                     f"{cone.axis_angle:.4g}"))
    return VerificationReport(checks=tuple(checks))


# ---------------------------------------------------------------------------
# distance to the reference helicoid
# ---------------------------------------------------------------------------

def helicoid_distance(point) -> float:
    """Euclidean distance from a point to the reference helicoid.

    For fixed height beta the closest ruling point is known in closed form
    (the ruling parameter enters only through sinh, which spans the reals),
    leaving a 1-d profile h(beta) = rho^2 cos^2(beta - chi) + (beta - x3)^2
    with (rho, chi) the polar coordinates of the planar projection.  The
    profile minima sit in narrow convex basins around the ruling alignments
    beta = chi + pi/2 + k*pi, so each nearby basin is polished by Newton
    iteration (machine accurate even for rho ~ 1e8, where the basin width
    ~1/rho^2 defeats derivative-free search); a coarse scan guards the
    small-rho regime.
    """
    p = np.asarray(point, dtype=float)
    rho = math.hypot(p[0], p[1])
    chi = math.atan2(p[1], p[0])
    height = p[2]

    def h(b):
        return (rho * math.cos(b - chi)) ** 2 + (b - height) ** 2

    def dh(b):
        return -rho * rho * math.sin(2.0 * (b - chi)) + 2.0 * (b - height)

    def ddh(b):
        return -2.0 * rho * rho * math.cos(2.0 * (b - chi)) + 2.0

    def polish(b):
        best = h(b)
        for _ in range(60):
            curv = ddh(b)
            if curv <= 0.0:
                break
            step = dh(b) / curv
            step = max(-0.5, min(0.5, step))
            b -= step
            val = h(b)
            if val < best:
                best = val
            if abs(step) <= 1e-16 * (1.0 + abs(b)):
                break
        return best

    k0 = round((height - chi - math.pi / 2) / math.pi)
    candidates = [chi + math.pi / 2 + k * math.pi for k in (k0 - 1, k0, k0 + 1)]
    candidates.append(height)
    betas = np.linspace(height - math.pi, height + math.pi, 721)
    vals = (rho * np.cos(betas - chi)) ** 2 + (betas - height) ** 2
    candidates.append(float(betas[int(np.argmin(vals))]))
    best = min(min(h(c) for c in candidates), min(polish(c) for c in candidates))
    return math.sqrt(max(best, 0.0))


def circle_samples(d: EndDescriptor, radius: float, n_theta: int = 48,
                   tol: float = 1e-8):
    """Immersion positions at n_theta points of |z| = radius.

    Starts on the vertical axis (z = i*radius) and steps around the circle
    with arc pieces, accumulating the integral incrementally.
    """
    if radius < d.rmin:
        raise DomainError(f"radius {radius:g} below rmin {d.rmin:g}")
    thetas = math.pi / 2 + np.linspace(0.0, 2.0 * math.pi, n_theta + 1)[:-1]
    start = immersion(d, complex(radius * np.exp(1j * thetas[0])), tol=tol)
    pos = np.empty((n_theta, 3))
    pos[0] = start.position
    per_gap = tol / n_theta
    for i in range(1, n_theta):
        arc = Arc(radius, float(thetas[i - 1]), float(thetas[i]))
        v, _ = integrate_path(d, [arc], per_gap)
        pos[i] = pos[i - 1] + np.real(v)
    zs = radius * np.exp(1j * thetas)
    return zs, pos


def helicoid_distance_check(d: EndDescriptor, radii, n_theta: int = 48,
                            eps: float = 0.1,
                            monotone_tol: float = 1e-3) -> VerificationReport:
    """Max distance to the reference helicoid over circles |z| = R.

    Passes when the sequence of maxima is non-increasing within
    ``monotone_tol`` and the value at the largest radius is below ``eps``.
    """
    if not d.normalized:
        raise UnsupportedDescriptorError(
            "helicoid asymptotics require the normalized end")
    radii = sorted(float(r) for r in radii)
    maxima = []
    for R in radii:
        _, pos = circle_samples(d, R, n_theta=n_theta)
        maxima.append(max(helicoid_distance(p) for p in pos))
    worst_increase = max((b - a for a, b in zip(maxima, maxima[1:])),
                         default=0.0)
    detail = ", ".join(f"R={R:g}: {m:.4g}" for R, m in zip(radii, maxima))
    checks = (
        CheckResult.upper("helicoid_distance_non_increasing", worst_increase,
                          0.0, monotone_tol, note=detail),
        CheckResult.upper(f"helicoid_distance_at_R={radii[-1]:g}",
                          maxima[-1], eps, 0.0, note=detail),
    )
    return VerificationReport(checks=checks, notes=detail)


# ---------------------------------------------------------------------------
# no-line-asymptote divergence
# ---------------------------------------------------------------------------

def line_asymptote_divergence(d: EndDescriptor, alpha: float,
                              t_range: tuple[float, float], n: int = 600,
                              c_threshold: float = 1e-3) -> VerificationReport:
    """Divergence of the rotated end's first coordinate for the simple family.

    Integrates x1_rot(t) = integral_0^t sin(alpha*a/(alpha^2+s^2)) *
    cosh(s + a*s/(alpha^2+s^2)) ds and tests that |x1_rot(t)| * t^2 * e^-t
    stays bounded below on the upper half of t_range (the curve escapes every
    line); with a = 0 the integrand vanishes and the ratio must be ~0.
    """
    if d.order > 1 or d.c0 != 1.0:
        raise UnsupportedDescriptorError(
            "divergence check applies to the canonical one-coefficient "
            "family only")
    a = d.coefficients[0] if d.order else 0.0
    t0, t1 = t_range
    if not 0 <= t0 < t1:
        raise ValueError("t_range must satisfy 0 <= t0 < t1")

    ts = np.linspace(0.0, t1, n)
    if a == 0.0 or alpha == 0.0:
        x1 = np.zeros_like(ts)  # the sine factor vanishes identically
    else:
        def f(s):
            s = np.asarray(s, dtype=float)
            return (np.sin(alpha * a / (alpha * alpha + s * s))
                    * np.cosh(s + a * s / (alpha * alpha + s * s)))

        mids = 0.5 * (ts[:-1] + ts[1:])
        halves = 0.5 * np.diff(ts)
        nodes = mids[None, :] + np.outer(_GL16_X, halves)
        gaps = (_GL16_W @ f(nodes)) * halves
        x1 = np.concatenate([[0.0], np.cumsum(gaps)])

    ratio = np.abs(x1) * ts * ts * np.exp(-ts)
    upper = ts >= 0.5 * (t0 + t1)
    if a != 0.0 and alpha != 0.0:
        c_lower = float(ratio[upper].min())
        check = CheckResult.lower(
            "divergence_ratio_lower_bound", c_lower, c_threshold,
            note=f"|x1_rot| t^2 e^-t on t in [{0.5 * (t0 + t1):g}, {t1:g}], "
                 f"alpha = {alpha:g}")
    else:
        reason = ("no negative-power coefficient: the curve is a straight line"
                  if a == 0.0 else "alpha = 0: the rotated integrand vanishes")
        check = CheckResult.equality(
            "divergence_ratio_vanishes", float(ratio[upper].max()), 1e-10,
            note=reason)
    return VerificationReport(checks=(check,))
