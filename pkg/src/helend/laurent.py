"""Truncated Laurent expansions about z = 0 with dense complex coefficients.

This is the series backend for the residue computation: the windows involved
stay small (a few hundred exponents), so coefficients are stored densely over
the support [lo, hi].
"""

from __future__ import annotations

import math

import numpy as np

from .errors import SupportSizeError, ToleranceError

#: Hard cap on the width of any coefficient window.
MAX_SUPPORT = 1 << 20


class LaurentPoly:
    """A finite Laurent expansion ``sum_{k=lo..hi} coeffs[k-lo] * z^k``.

    Instances are immutable in spirit: operations return new objects, the
    coefficient array is never mutated after construction.  Construction trims
    zero coefficients at both ends so ``lo``/``hi`` describe the true support
    (the zero polynomial is stored as a single zero coefficient at exponent 0).
    """

    __slots__ = ("lo", "coeffs")

    def __init__(self, lo: int, coeffs):
        arr = np.atleast_1d(np.asarray(coeffs, dtype=complex))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a nonempty 1-d sequence")
        if arr.size > MAX_SUPPORT:
            raise SupportSizeError(f"support of width {arr.size} exceeds {MAX_SUPPORT}")
        nz = np.nonzero(arr)[0]
        if nz.size == 0:
            lo, arr = 0, np.zeros(1, dtype=complex)
        else:
            first, last = int(nz[0]), int(nz[-1])
            lo, arr = lo + first, arr[first:last + 1].copy()
        self.lo = int(lo)
        self.coeffs = arr
        self.coeffs.setflags(write=False)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(0, [0.0])

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(0, [1.0])

    @classmethod
    def from_terms(cls, terms: dict[int, complex]) -> "LaurentPoly":
        """Build from an {exponent: coefficient} mapping."""
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        if hi - lo + 1 > MAX_SUPPORT:
            raise SupportSizeError(f"window [{lo},{hi}] exceeds {MAX_SUPPORT}")
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for k, c in terms.items():
            arr[k - lo] += c
        return cls(lo, arr)

    # -- accessors ---------------------------------------------------------

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def coeff(self, k: int) -> complex:
        """Coefficient of z^k; exactly zero outside [lo, hi]."""
        if self.lo <= k <= self.hi:
            return complex(self.coeffs[k - self.lo])
        return 0j

    @property
    def residue(self) -> complex:
        """Coefficient of z^(-1)."""
        return self.coeff(-1)

    @property
    def l1(self) -> float:
        """Sum of coefficient magnitudes (the sub-multiplicative majorant)."""
        return float(np.abs(self.coeffs).sum())

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def window(self, lo: int, hi: int) -> "LaurentPoly":
        """Restrict to exponents in [lo, hi] (coefficients outside are dropped)."""
        if hi < lo:
            raise ValueError("window bounds out of order")
        out = np.zeros(hi - lo + 1, dtype=complex)
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo:b - lo + 1] = self.coeffs[a - self.lo:b - self.lo + 1]
        return LaurentPoly(lo, out)

    def max_imag(self) -> float:
        return float(np.abs(self.coeffs.imag).max())

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            width = len(self.coeffs) + len(other.coeffs) - 1
            if width > MAX_SUPPORT:
                raise SupportSizeError(
                    f"product support of width {width} exceeds {MAX_SUPPORT}")
            return LaurentPoly(self.lo + other.lo,
                               np.convolve(self.coeffs, other.coeffs))
        if isinstance(other, (int, float, complex)):
            return LaurentPoly(self.lo, self.coeffs * other)
        return NotImplemented

    __rmul__ = __mul__

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = LaurentPoly(0, [other])
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = np.zeros(hi - lo + 1, dtype=complex)
        out[self.lo - lo:self.hi - lo + 1] += self.coeffs
        out[other.lo - lo:other.hi - lo + 1] += other.coeffs
        return LaurentPoly(lo, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-1.0) * other

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.lo, self.coeffs.tobytes()))

    def allclose(self, other: "LaurentPoly", tol: float = 1e-12) -> bool:
        diff = self - other
        return float(np.abs(diff.coeffs).max()) <= tol

    def __repr__(self):
        terms = ", ".join(f"z^{k}: {c:.6g}"
                          for k, c in zip(range(self.lo, self.hi + 1), self.coeffs))
        return f"LaurentPoly({terms})"


def laurent_exp(a: LaurentPoly, window: tuple[int, int] | None = None,
                tol: float = 1e-14, relative: bool = True,
                max_terms: int = 500) -> LaurentPoly:
    """exp(a) as a truncated Laurent expansion.

    Sums ``a^n / n!`` until the discarded tail, bounded through the
    sub-multiplicative coefficient majorant ``m = sum|coeffs|`` by
    ``m^(n+1)/(n+1)! * 1/(1 - m/(n+2))``, drops below the tolerance.  With
    ``relative=True`` the tolerance is measured against the result's majorant
    bound ``e^m``; otherwise it is absolute on the coefficient sum.

    Intermediate products keep their full support (truncating them could lose
    contributions that re-enter the window); the window is applied at the end.
    """
    m = a.l1
    if not math.isfinite(m):
        raise ValueError("input has non-finite coefficients")
    threshold = tol * (math.exp(min(m, 700.0)) if relative else 1.0)

    acc = LaurentPoly.one()
    term = LaurentPoly.one()
    bound = None
    for n in range(1, max_terms + 1):
        term = term * a * (1.0 / n)
        acc = acc + term
        # tail after n terms: sum_{j>n} m^j/j!
        log_head = (n + 1) * math.log(m) - math.lgamma(n + 2) if m > 0 else -math.inf
        geo = 1.0 / (1.0 - m / (n + 2)) if n + 2 > m else math.inf
        bound = math.exp(min(log_head, 700.0)) * geo
        if bound <= threshold:
            break
    else:
        raise ToleranceError(
            f"exp series did not reach tolerance {threshold:g} within "
            f"{max_terms} terms (achieved bound {bound:g})", achieved=bound)

    if window is not None:
        acc = acc.window(*window)
    return acc
