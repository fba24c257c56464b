"""Numerics for completed Selberg-type zeta functions, heat traces and
regularized determinants on Hilbert modular surfaces of real quadratic
fields with class number one."""

from .field import (
    AlgebraicInteger,
    EllipticLocus,
    FieldError,
    ParityViolation,
    QuadraticField,
    UnitSearchError,
    euler_characteristic,
    load_surface_config,
    make_field,
    validate_surface,
    zeta_K_minus1,
)
from .geodesics import (
    GeodesicClass,
    GeodesicError,
    GroupElement,
    classify,
    enumerate_he,
    expand_powers,
    load_geodesics,
    save_geodesics,
)
from .zeta import ZetaDomainError, ZetaFactorization, log_Zhat
from .spectral import (
    GeometricSideBreakdown,
    HeatTestPair,
    SpectralError,
    Spectrum,
    corollary_log_det,
    geometric_theta,
    small_t_fit,
    telescoping_residual,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicInteger",
    "EllipticLocus",
    "FieldError",
    "GeodesicClass",
    "GeodesicError",
    "GeometricSideBreakdown",
    "GroupElement",
    "HeatTestPair",
    "ParityViolation",
    "QuadraticField",
    "SpectralError",
    "Spectrum",
    "UnitSearchError",
    "ZetaDomainError",
    "ZetaFactorization",
    "classify",
    "corollary_log_det",
    "enumerate_he",
    "euler_characteristic",
    "expand_powers",
    "geometric_theta",
    "load_geodesics",
    "load_surface_config",
    "log_Zhat",
    "make_field",
    "save_geodesics",
    "small_t_fit",
    "telescoping_residual",
    "validate_surface",
    "zeta_K_minus1",
]
