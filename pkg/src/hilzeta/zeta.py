"""Truncated Euler products, the completed-zeta factors, their assembly, and
the large-s asymptotics and polynomial constants of the determinant identities.

The hyperbolic-elliptic Euler product is only evaluated for Re s > 1 from a
supplied finite list of primitive classes; the magnitude of the first omitted
truncation term is always reported.  No analytic continuation is attempted.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import List, Optional

from .combinatorics import C_const, alpha0, ell_exponent
from .field import EllipticLocus, QuadraticField
from .geodesics import GeodesicClass
from .specfun import log_gamma2


class ZetaDomainError(ValueError):
    pass


@dataclass(frozen=True)
class ZetaFactorization:
    s: complex
    m: int
    log_he: complex
    log_id: float
    log_ell: float
    log_parsct: Optional[float]  # m = 2 only
    log_hyp2sct: float
    log_total: complex
    truncation_norm: float

    def to_json(self) -> dict:
        return {
            "s_re": self.s.real,
            "s_im": self.s.imag,
            "m": self.m,
            "log_he_re": self.log_he.real,
            "log_he_im": self.log_he.imag,
            "log_id": self.log_id,
            "log_ell": self.log_ell,
            "log_parsct": self.log_parsct,
            "log_hyp2sct": self.log_hyp2sct,
            "log_total_re": self.log_total.real,
            "log_total_im": self.log_total.imag,
            "truncation_norm": self.truncation_norm,
        }


def _check_m(m: int) -> None:
    if m < 2 or m % 2 != 0:
        raise ZetaDomainError(f"m={m} must be an even integer >= 2")


def log_Z_he(s, m: int, primitives: List[GeodesicClass], k_max: int):
    """Truncated log of the hyperbolic-elliptic Euler product.

    Returns (value, truncation_norm) where the norm is the magnitude of the
    largest first omitted k-term.  The m=2 value carries the square-root
    factor 1/2.
    """
    _check_m(m)
    if k_max < 1:
        raise ZetaDomainError(f"k_max={k_max} must be >= 1")
    sc = complex(s)
    if not primitives:
        return 0.0 + 0.0j, 0.0
    if sc.real <= 1.0:
        raise ZetaDomainError(
            f"Euler product truncation requires Re s > 1, got s={s}"
        )
    half = 0.5 if m == 2 else 1.0
    total = 0.0 + 0.0j
    trunc = 0.0
    for p in primitives:
        if not p.primitive:
            raise ZetaDomainError(
                "log_Z_he sums over primitive classes; power-expanded input rejected"
            )
        for k in range(1, k_max + 1):
            phase = cmath.exp(1j * k * (m - 2) * p.omega)
            total += (
                p.mult
                * phase
                * p.norm ** (-k * sc)
                / (k * (1.0 - p.norm ** (-k)))
            )
        k1 = k_max + 1
        omitted = (
            p.mult * p.norm ** (-k1 * sc.real) / (k1 * (1.0 - p.norm ** (-k1)))
        )
        trunc = max(trunc, half * omitted)
    return half * total, trunc


def log_Z_id(s: float, fld: QuadraticField, m: int) -> float:
    """Identity factor: zeta_K(-1) (log Gamma_2(s) + log Gamma_2(s+1)),
    doubled for m >= 4."""
    _check_m(m)
    s = float(s)
    if s <= 0.0:
        raise ZetaDomainError(f"identity factor requires s > 0, got {s}")
    half = float(fld.zeta_m1) * (log_gamma2(s) + log_gamma2(s + 1.0))
    return half if m == 2 else 2.0 * half


def log_Z_ell(s: float, m: int, locus: EllipticLocus) -> float:
    """Elliptic factor: sum of exponent-weighted log Gamma((s+l)/nu) terms."""
    _check_m(m)
    s = float(s)
    total = 0.0
    for j, (nu, t, count) in enumerate(locus):
        for l in range(nu):
            arg = (s + l) / nu
            if arg <= 0.0 and arg == round(arg):
                raise ZetaDomainError(
                    f"Gamma pole at (s+l)/nu for entry j={j}, l={l} (s={s})"
                )
            expo = ell_exponent(l, m, nu, t)
            if expo != 0:
                total += count * float(expo) * math.lgamma(arg)
    return total


def log_Z_parsct(s: float, fld: QuadraticField) -> float:
    """Parabolic/scattering half factor for m=2: -s log eps."""
    return -float(s) * fld.log_eps


def log_zeta_eps(s: float, fld: QuadraticField) -> float:
    """log zeta_eps(s) = -log(1 - eps^(-2s))."""
    if s == 0.0:
        raise ZetaDomainError("zeta_eps pole at argument 0")
    val = 1.0 - math.exp(-2.0 * s * fld.log_eps)
    if val <= 0.0:
        raise ZetaDomainError(f"zeta_eps argument {s} outside the log domain")
    return -math.log(val)


def log_Z_hyp2sct(s: float, fld: QuadraticField, m: int) -> float:
    """Type-2-hyperbolic/scattering factor: zeta_eps(s) for m=2,
    zeta_eps(s+m/2-1)/zeta_eps(s+m/2-2) for m >= 4."""
    _check_m(m)
    s = float(s)
    if m == 2:
        return log_zeta_eps(s, fld)
    return log_zeta_eps(s + m / 2 - 1.0, fld) - log_zeta_eps(s + m / 2 - 2.0, fld)


def log_Zhat(
    s,
    m: int,
    fld: QuadraticField,
    locus: EllipticLocus,
    primitives: List[GeodesicClass],
    k_max: int,
) -> ZetaFactorization:
    """Assemble the completed zeta at s: four half factors for m=2, three
    factors (no par/sct) for m >= 4."""
    _check_m(m)
    sr = float(complex(s).real)
    if complex(s).imag != 0.0:
        raise ZetaDomainError("completed factors are evaluated on the real axis")
    he, trunc = log_Z_he(s, m, primitives, k_max)
    lid = log_Z_id(sr, fld, m)
    lell = log_Z_ell(sr, m, locus)
    lhyp = log_Z_hyp2sct(sr, fld, m)
    if m == 2:
        lpar = log_Z_parsct(sr, fld)
        total = he + lid + lell + lpar + lhyp
    else:
        lpar = None
        total = he + lid + lell + lhyp
    return ZetaFactorization(
        s=complex(s),
        m=m,
        log_he=he,
        log_id=lid,
        log_ell=lell,
        log_parsct=lpar,
        log_hyp2sct=lhyp,
        log_total=total,
        truncation_norm=trunc,
    )


def _id_main_term(s: float) -> float:
    return 1.5 * s * s - s - (s * s - s + 1.0 / 3.0) * math.log(s)


def asymptotic_remainder(s: float, m: int, fld: QuadraticField, locus: EllipticLocus) -> float:
    """log of the completed zeta (hyperbolic-elliptic part set to 0) minus its
    displayed large-s main terms; tends to 0 as s grows."""
    _check_m(m)
    s = float(s)
    zeta = float(fld.zeta_m1)
    if m == 2:
        actual = (
            log_Z_id(s, fld, 2)
            + log_Z_ell(s, 2, locus)
            + log_Z_parsct(s, fld)
            + log_Z_hyp2sct(s, fld, 2)
        )
        main = zeta * _id_main_term(s) - s * fld.log_eps
        for nu, _t, count in locus:
            main -= count * (nu * nu - 1) / (12.0 * nu) * math.log(s / nu)
    else:
        actual = log_Z_id(s, fld, m) + log_Z_ell(s, m, locus) + log_Z_hyp2sct(s, fld, m)
        main = 2.0 * zeta * _id_main_term(s)
        for nu, t, count in locus:
            a0 = alpha0(nu, t, m)
            main -= (
                count
                * (nu * nu - 1 - 6 * a0 * (nu - a0))
                / (6.0 * nu)
                * math.log(s / nu)
            )
    return actual - main


def P_polynomial(s: float, m: int, fld: QuadraticField, locus: EllipticLocus) -> float:
    """The polynomial relating the completed zeta to the determinant ratio:
    (s-1/2)^2 zeta_K(-1) + C_2 for m=2, 2(s-1/2)^2 zeta_K(-1) + C_m for m >= 4."""
    _check_m(m)
    zeta = float(fld.zeta_m1)
    sq = (s - 0.5) ** 2
    if m == 2:
        return sq * zeta + C_const(2, fld, locus)
    return 2.0 * sq * zeta + C_const(m, fld, locus)
