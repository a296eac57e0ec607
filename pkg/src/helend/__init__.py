"""Helicoidal minimal annular ends.

Construction of complete minimal ends of helicoid type from real coefficient
data, the residue admissibility condition, immersion evaluation by complex
path quadrature, and a desk-scale geometric verification suite.
"""

from .descriptor import EndDescriptor, helicoid
from .errors import (BracketError, DomainError, HelendError, SupportSizeError,
                     ToleranceError, UnsupportedDescriptorError)
from .geometry import (CheckResult, ConeNeighborhood, LevelCurve,
                       VerificationReport, combine_reports, embeddedness_check,
                       helicoid_distance, helicoid_distance_check, level_curve,
                       line_asymptote_divergence, no_vertical_ray_diagnostic,
                       ray_check, tangent_direction_check, total_curvature_check)
from .kernels import BACKEND
from .laurent import LaurentPoly, laurent_exp
from .residue import (RootList, bessel_j1, bessel_j1_zeros, residue_quadrature,
                      residue_series, simple_family_end, solve_coefficient,
                      solve_simple_family)
from .weierstrass import (PeriodReport, SurfacePoint, gauss_map,
                          helicoid_closed_form, immersion,
                          immersion_along_line, log_derivative, period_check)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BracketError", "CheckResult", "ConeNeighborhood",
    "DomainError", "EndDescriptor", "HelendError", "LaurentPoly", "LevelCurve",
    "PeriodReport", "RootList", "SupportSizeError", "SurfacePoint",
    "ToleranceError", "UnsupportedDescriptorError", "VerificationReport",
    "bessel_j1", "bessel_j1_zeros", "combine_reports", "embeddedness_check",
    "gauss_map", "helicoid", "helicoid_closed_form", "helicoid_distance",
    "helicoid_distance_check", "immersion", "immersion_along_line",
    "laurent_exp", "level_curve", "line_asymptote_divergence",
    "log_derivative", "no_vertical_ray_diagnostic", "period_check",
    "ray_check", "residue_quadrature", "residue_series", "simple_family_end",
    "solve_coefficient", "solve_simple_family", "tangent_direction_check",
    "total_curvature_check",
]
