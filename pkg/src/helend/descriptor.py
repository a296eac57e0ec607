"""End descriptors: the real coefficient data defining a helicoid-type end.

A descriptor fixes the Gauss map ``g(z) = A * exp(c0*z + sum_k c_k z^(1-2k))``
and the height differential ``dh = -i dz`` on the neighborhood of infinity
``|z| >= rmin``.  ``A = modulus * exp(i*phase)`` is the integration constant;
ends with a vertical ray have ``modulus == 1``.
"""

from __future__ import annotations

import cmath
import dataclasses
import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EndDescriptor:
    """Coefficients of a helicoid-type end.

    ``coefficients[k-1]`` is the coefficient ``c_k`` of ``z^(1-2k)`` in the
    exponent of the Gauss map, for ``k = 1..K``.  The alternative coefficient
    set ``r_{2k} = (1-2k) c_k`` (the ``dg/g`` expansion) is derived on demand
    and never stored.
    """

    c0: float = 1.0
    coefficients: tuple[float, ...] = ()
    phase: float = 0.0
    modulus: float = 1.0
    rmin: float = 0.5

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           tuple(float(c) for c in self.coefficients))
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValueError("coefficients must be finite reals")
        if self.c0 == 0 or not math.isfinite(self.c0):
            raise ValueError("c0 must be nonzero and finite")
        if self.modulus <= 0:
            raise ValueError("modulus must be positive")
        if self.rmin <= 0:
            raise ValueError("rmin must be positive")

    @property
    def order(self) -> int:
        """Number of negative-power coefficients K."""
        return len(self.coefficients)

    @property
    def r_coefficients(self) -> tuple[float, ...]:
        """The dg/g coefficients r_{2k} = (1-2k) c_k for k >= 1."""
        return tuple((1 - 2 * k) * c for k, c in enumerate(self.coefficients, start=1))

    @classmethod
    def from_r_coefficients(cls, r0: float, r: tuple[float, ...] = (),
                            **kwargs) -> "EndDescriptor":
        """Build from dg/g data: c0 = r0 and c_k = r_{2k} / (1-2k)."""
        coeffs = tuple(rk / (1 - 2 * k) for k, rk in enumerate(r, start=1))
        return cls(c0=r0, coefficients=coeffs, **kwargs)

    def replace(self, **changes) -> "EndDescriptor":
        return dataclasses.replace(self, **changes)

    def integration_constant(self) -> complex:
        """log A = ln(modulus) + i*phase."""
        return complex(math.log(self.modulus), self.phase)

    @property
    def unitary(self) -> bool:
        return abs(self.modulus - 1.0) < 1e-15

    @property
    def normalized(self) -> bool:
        """Unitary with zero phase: the representative used by the verifiers."""
        return self.unitary and self.phase == 0.0

    def curvature_series_bound(self) -> float:
        """Worst-case bound S >= sup_{|z|>=rmin} |sum_k r_{2k} z^(2-2k)|.

        The k = 1 term is constant; every later term peaks on |z| = rmin.
        """
        return sum(abs(rk) * self.rmin ** (2 - 2 * k)
                   for k, rk in enumerate(self.r_coefficients, start=1))

    def basepoint(self) -> complex:
        """Default integration basepoint i*(rmin + 1) on the vertical axis."""
        return complex(0.0, self.rmin + 1.0)

    def gauss_constant(self) -> complex:
        """The multiplicative constant A."""
        return self.modulus * cmath.exp(1j * self.phase)


def helicoid(rmin: float = 1e-8) -> EndDescriptor:
    """The helicoid end: g = e^z, no negative powers.

    The data is entire, so rmin is only a formal inner radius.
    """
    return EndDescriptor(c0=1.0, coefficients=(), phase=0.0, modulus=1.0, rmin=rmin)
