"""Grids, constants, special functions, and oscillation-aware quadrature."""

from .bessel import bessel_j, bessel_j_prime
from .constants import Constants, constants
from .grids import (
    Dimension,
    LogGrid,
    RadialGrid,
    as_dimension,
    make_log_grid,
    make_radial_grid,
    sphere_measure,
)
from .hankel import radial_analysis, radial_synthesis
from .quadrature import BesselIntegralResult, bessel_log_integral
from .kernels import piecewise_transform

__all__ = [
    "BesselIntegralResult",
    "Constants",
    "Dimension",
    "LogGrid",
    "RadialGrid",
    "as_dimension",
    "bessel_j",
    "bessel_j_prime",
    "bessel_log_integral",
    "constants",
    "make_log_grid",
    "make_radial_grid",
    "piecewise_transform",
    "radial_analysis",
    "radial_synthesis",
    "sphere_measure",
]
