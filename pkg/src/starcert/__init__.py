"""Numerical certification of sector conditions for analytic functions on the unit disk."""

__version__ = "0.1.0"

from .criteria import (  # noqa: E402
    ALowerBound,
    SectorParam,
    TheoremReport,
    Verdict,
    a_of,
    c1_threshold,
    c3_threshold,
    c4_bounds,
    check,
    g1_profile,
    rho_star,
    t1_threshold,
    t2_bounds,
    t3_margin,
)
from .disk import DiskGrid, ExtremumEstimate, estimate_inf, estimate_sup, min_modulus  # noqa: E402
from .series import DiskPoint, HClassFunction, NormalizedFunction, PowerSeries  # noqa: E402
from .subordination import RotatedHalfPlaneTarget, Witness, mm_witness  # noqa: E402

__all__ = [
    "ALowerBound", "DiskGrid", "DiskPoint", "ExtremumEstimate", "HClassFunction",
    "NormalizedFunction", "PowerSeries", "RotatedHalfPlaneTarget", "SectorParam",
    "TheoremReport", "Verdict", "Witness", "a_of", "c1_threshold", "c3_threshold",
    "c4_bounds", "check", "estimate_inf", "estimate_sup", "g1_profile", "min_modulus",
    "mm_witness", "rho_star", "t1_threshold", "t2_bounds", "t3_margin",
]
