"""Residue of the Gauss-map factor G(z) = exp(c0*z + sum c_k z^(1-2k)) at 0.

Two independent routes are provided: the Laurent-series route (method of
record, explicit truncation-error control) and circle quadrature (the
cross-check).  The module also carries the Bessel-function machinery behind
the one-coefficient family and the 1-D admissibility solvers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from . import kernels
from .descriptor import EndDescriptor
from .errors import BracketError, DomainError, ToleranceError
from .laurent import LaurentPoly, laurent_exp

#: Power series for J1 are evaluated only on this range.
BESSEL_RANGE = 50.0


# ---------------------------------------------------------------------------
# residue of G
# ---------------------------------------------------------------------------

def _majorant(c0: float, coeffs, lam: float) -> float:
    """l1 norm of the exponent coefficients after the rescaling z -> lam*z."""
    m = abs(c0) * lam
    for k, ck in enumerate(coeffs, start=1):
        m += abs(ck) * lam ** (1 - 2 * k)
    return m


def _balance_scale(c0: float, coeffs) -> float:
    """Scale factor minimizing the exponent majorant (golden-section on log)."""
    if not coeffs or not any(coeffs):
        return 1.0
    f = lambda t: _majorant(c0, coeffs, math.exp(t))
    lo, hi = math.log(1e-3), math.log(1e3)
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c, d = b - gr * (b - a), a + gr * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(80):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - gr * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + gr * (b - a)
            fd = f(d)
    return math.exp(0.5 * (a + b))


def exponent_poly(d: EndDescriptor, scale: float = 1.0) -> LaurentPoly:
    """The exponent of G after z -> scale*z, as a Laurent polynomial."""
    terms = {1: d.c0 * scale}
    for k, ck in enumerate(d.coefficients, start=1):
        terms[1 - 2 * k] = terms.get(1 - 2 * k, 0.0) + ck * scale ** (1 - 2 * k)
    return LaurentPoly.from_terms(terms)


def residue_series(d: EndDescriptor, tol: float = 1e-12) -> float:
    """Res_{z=0} G(z) through the Laurent exponential series.

    The exponent is rescaled to minimize its coefficient majorant before
    exponentiating (Res G = lam * Res G(lam*z)), which keeps the alternating
    series well conditioned for coefficients up to a few units.  The residue
    of G is real for real coefficients; the imaginary part is asserted below
    1e-12 and discarded.
    """
    lam = _balance_scale(d.c0, d.coefficients)
    a = exponent_poly(d, scale=lam)
    e = laurent_exp(a, window=(-1, -1), tol=0.5 * tol / lam, relative=False)
    r = lam * e.coeff(-1)
    if abs(r.imag) >= 1e-12:
        raise ToleranceError(
            f"residue has unexpected imaginary part {r.imag:g}", achieved=abs(r.imag))
    return float(r.real)


def default_radius(d: EndDescriptor) -> float:
    """Contour radius: 1 for tame coefficients, else the balancing scale."""
    worst = max((abs(c) for c in d.coefficients), default=0.0)
    if worst <= 2.0 and abs(d.c0) <= 2.0:
        return 1.0
    return _balance_scale(d.c0, d.coefficients)


def residue_quadrature(d: EndDescriptor, radius: float | None = None,
                       nodes: int = 64, tol: float = 1e-12,
                       max_nodes: int = 1 << 16) -> complex:
    """(1/2*pi*i) * contour integral of G over |z| = radius, trapezoid rule.

    Equally spaced nodes are spectrally accurate here (G is analytic on the
    punctured plane).  The node count doubles until two successive values
    agree to ``tol``.
    """
    if radius is None:
        radius = default_radius(d)
    if radius <= 0:
        raise ValueError("radius must be positive")
    if nodes < 16:
        raise ValueError("at least 16 nodes required")
    if _majorant(d.c0, d.coefficients, radius) > 700.0:
        raise DomainError(
            f"radius {radius:g} overflows exp on the contour; choose a radius "
            "balancing |c0|*R against the negative-power terms")

    def eval_trapezoid(n):
        theta = np.arange(n) * (2.0 * math.pi / n)
        z = radius * np.exp(1j * theta)
        g = np.exp(kernels.eval_exponent(d.c0, d.coefficients, z))
        # (1/2*pi*i) * sum G(z_j) * (i*z_j*2*pi/n) = mean(G*z)
        return complex(np.mean(g * z))

    prev = eval_trapezoid(nodes)
    n = nodes
    while n <= max_nodes:
        n *= 2
        cur = eval_trapezoid(n)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur
        prev = cur
    raise ToleranceError(
        f"trapezoid rule did not stabilize to {tol:g} within {max_nodes} nodes",
        achieved=abs(cur - prev))


# ---------------------------------------------------------------------------
# Bessel J1 by power series (arbitrary-precision accumulation)
# ---------------------------------------------------------------------------

def bessel_j1(x: float) -> float:
    """J1(x) from its power series, |x| <= 50.

    The alternating terms grow like I1(|x|) before cancelling, so the sum is
    accumulated in arbitrary precision sized to the growth and rounded once.
    """
    if abs(x) > BESSEL_RANGE:
        raise DomainError(f"|x| = {abs(x):g} outside series range {BESSEL_RANGE}")
    if x == 0.0:
        return 0.0
    extra = int(0.4343 * abs(x)) + 5  # digits consumed by cancellation
    with mpmath.workdps(20 + extra):
        h = mpmath.mpf(x) / 2
        h2 = h * h
        term = h
        total = h
        m = 0
        while True:
            m += 1
            term *= -h2 / (m * (m + 1))
            total += term
            if abs(term) < mpmath.mpf(10) ** (-(20 + extra)) * (1 + abs(total)):
                break
        return float(total)


def bessel_j1_zeros(n: int, step: float = 0.2, xtol: float = 1e-13) -> list[float]:
    """First n positive zeros of J1 by sign-change scan and bisection."""
    if n < 1:
        raise ValueError("n must be >= 1")
    zeros = []
    x0 = 0.5  # skip the trivial zero at the origin
    f0 = bessel_j1(x0)
    x = x0
    while len(zeros) < n:
        x_next = x + step
        if x_next > BESSEL_RANGE:
            raise BracketError(
                f"only {len(zeros)} zeros of J1 below x = {BESSEL_RANGE}; "
                f"{n} requested")
        f_next = bessel_j1(x_next)
        if f0 == 0.0:
            zeros.append(x)
        elif f0 * f_next < 0:
            zeros.append(_bisect(bessel_j1, x, x_next, xtol))
        x, f0 = x_next, f_next
    return zeros[:n]


def _bisect(f, a, b, xtol):
    fa = f(a)
    while b - a > xtol:
        m = 0.5 * (a + b)
        fm = f(m)
        if fm == 0.0:
            return m
        if fa * fm < 0:
            b = m
        else:
            a, fa = m, fm
    return 0.5 * (a + b)


# ---------------------------------------------------------------------------
# admissibility solvers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootList:
    """Roots of a residue equation with their residuals and search brackets."""

    values: tuple[float, ...]
    residuals: tuple[float, ...]
    brackets: tuple[tuple[float, float], ...]
    notes: tuple[str, ...] = ()
    scan: tuple[tuple[float, float], ...] = field(default=(), repr=False)

    def __post_init__(self):
        mags = [abs(v) for v in self.values]
        if any(b < a for a, b in zip(mags, mags[1:])):
            raise ValueError("roots must be ordered by increasing magnitude")


def solve_simple_family(n: int, residual_tol: float = 1e-10) -> RootList:
    """First n coefficients a < 0 with Res(exp(z + a/z)) = 0.

    These are a_k = -(j_k/2)^2 for the positive zeros j_k of J1; each value is
    verified against the residue series.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    jzeros = bessel_j1_zeros(n)
    values, residuals, brackets = [], [], []
    for j in jzeros:
        a = -(j / 2.0) ** 2
        r = abs(residue_series(EndDescriptor(coefficients=(a,))))
        if r >= residual_tol:
            raise ToleranceError(
                f"candidate a = {a:.12g} has residue {r:g} >= {residual_tol:g}",
                achieved=r)
        values.append(a)
        residuals.append(r)
        brackets.append((-((j + 0.1) / 2.0) ** 2, -((j - 0.1) / 2.0) ** 2))
    return RootList(tuple(values), tuple(residuals), tuple(brackets))


def solve_coefficient(d: EndDescriptor, free_index: int,
                      bracket: tuple[float, float], scan_fraction: float = 0.05,
                      xtol: float = 1e-12, residual_tol: float = 1e-10) -> RootList:
    """All roots of Res(G) = 0 in ``bracket`` as a function of c_{free_index}.

    Scans at ``scan_fraction`` of the bracket width for sign changes, then
    bisects; realness of the residue makes the 1-D bracketing well posed.
    Sign-change-free local minima below 1e-8 are reported as suspected double
    roots in ``notes``, never as roots.
    """
    if not 1 <= free_index <= max(d.order, 1):
        raise ValueError(
            f"free_index {free_index} out of range 1..{max(d.order, 1)}")
    lo, hi = bracket
    if not lo < hi:
        raise ValueError("bracket must satisfy lo < hi")

    coeffs = list(d.coefficients)
    while len(coeffs) < free_index:
        coeffs.append(0.0)

    def f(x: float) -> float:
        coeffs[free_index - 1] = x
        return residue_series(d.replace(coefficients=tuple(coeffs)))

    n_steps = max(2, int(round(1.0 / scan_fraction)))
    xs = np.linspace(lo, hi, n_steps + 1)
    fs = np.array([f(x) for x in xs])

    values, residuals, brackets, notes = [], [], [], []
    for i in range(n_steps):
        if fs[i] == 0.0:
            values.append(float(xs[i]))
            residuals.append(0.0)
            brackets.append((float(xs[i]), float(xs[i])))
        elif fs[i] * fs[i + 1] < 0:
            root = _bisect(f, float(xs[i]), float(xs[i + 1]), xtol)
            res = abs(f(root))
            if res >= residual_tol:
                raise ToleranceError(
                    f"root {root:.12g} has residual {res:g} >= {residual_tol:g}",
                    achieved=res)
            values.append(root)
            residuals.append(res)
            brackets.append((float(xs[i]), float(xs[i + 1])))
    # suspected double roots: interior |f| minima below 1e-8 without sign change
    for i in range(1, n_steps):
        fi = abs(fs[i])
        if (fi < 1e-8 and fi <= abs(fs[i - 1]) and fi <= abs(fs[i + 1])
                and fs[i - 1] * fs[i] > 0 and fs[i] * fs[i + 1] > 0):
            notes.append(f"suspected double root near c_{free_index} = {xs[i]:.6g} "
                         f"(|residue| = {fi:.2g} without sign change)")

    order = np.argsort([abs(v) for v in values])
    return RootList(tuple(values[i] for i in order),
                    tuple(residuals[i] for i in order),
                    tuple(brackets[i] for i in order),
                    notes=tuple(notes),
                    scan=tuple((float(x), float(v)) for x, v in zip(xs, fs)))


def simple_family_end(k: int = 1, rmin: float = 0.5) -> EndDescriptor:
    """The end with Gauss map exp(z + a_k/z), a_k from the k-th J1 zero."""
    roots = solve_simple_family(k)
    return EndDescriptor(coefficients=(roots.values[k - 1],), rmin=rmin)
