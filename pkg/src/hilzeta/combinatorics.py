"""Finite combinatorics attached to elliptic fixed points: the residue tables
alpha_l, alpha_bar_l, elliptic zeta-factor exponents, heat coefficients b0(m)
and the constants C_m of the determinant identities.

Everything here is exact rational arithmetic; floats appear only in C_const,
which carries log nu and log eps terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .field import EllipticLocus, QuadraticField


def _check_params(nu: int, t: int, m: int) -> None:
    if nu < 2:
        raise ValueError(f"nu={nu} must be >= 2")
    if math.gcd(t, nu) != 1:
        raise ValueError(f"gcd(t, nu) != 1 for (t, nu)=({t}, {nu})")
    if m < 2 or m % 2 != 0:
        raise ValueError(f"m={m} must be an even integer >= 2")


@dataclass(frozen=True)
class AlphaTable:
    nu: int
    t: int
    m: int
    alpha: tuple
    alpha_bar: tuple


def alpha_table(nu: int, t: int, m: int) -> AlphaTable:
    """Residues alpha_l = l + t(m-2)/2 and alpha_bar_l = l - t(m-2)/2 mod nu."""
    _check_params(nu, t, m)
    shift = t * (m - 2) // 2
    alpha = tuple((l + shift) % nu for l in range(nu))
    alpha_bar = tuple((l - shift) % nu for l in range(nu))
    return AlphaTable(nu=nu, t=t, m=m, alpha=alpha, alpha_bar=alpha_bar)


def alpha0(nu: int, t: int, m: int) -> int:
    _check_params(nu, t, m)
    return (t * (m - 2) // 2) % nu


def piecewise_alpha_check(table: AlphaTable) -> bool:
    """Check alpha_l = alpha_0 + l below the wrap point and alpha_0 - nu + l above."""
    nu = table.nu
    a0 = table.alpha[0]
    for l in range(nu):
        expected = a0 + l if l <= nu - a0 - 1 else a0 - nu + l
        if table.alpha[l] != expected:
            return False
    return True


def weighted_sum_identity(table: AlphaTable):
    """Both sides of sum_l l*alpha_l/nu^2 = (nu-1)(2nu-1)/(6nu) + alpha_0(alpha_0-nu)/(2nu)."""
    nu = table.nu
    a0 = table.alpha[0]
    lhs = sum(Fraction(l * table.alpha[l], nu * nu) for l in range(nu))
    rhs = Fraction((nu - 1) * (2 * nu - 1), 6 * nu) + Fraction(a0 * (a0 - nu), 2 * nu)
    return lhs, rhs


def cosecant_sum(nu: int, tol: float = 1e-10) -> Fraction:
    """sum_{k=1}^{nu-1} 1/(1 - cos(2 pi k/nu)) as the closed form (nu^2-1)/6.

    The floating trigonometric sum is evaluated and asserted against the
    closed form before the exact value is returned.
    """
    if nu < 2:
        raise ValueError(f"nu={nu} must be >= 2")
    closed = Fraction(nu * nu - 1, 6)
    numeric = sum(1.0 / (1.0 - math.cos(2.0 * math.pi * k / nu)) for k in range(1, nu))
    if abs(numeric - float(closed)) > tol * max(1.0, float(closed)):
        raise AssertionError(
            f"cosecant sum mismatch for nu={nu}: {numeric} vs {float(closed)}"
        )
    return closed


def b0(m: int, locus: EllipticLocus) -> Fraction:
    """Heat-trace constant b0(m) of the elliptic contribution.

    b0(2) = -sum (nu^2-1)/(24 nu);
    b0(m) = -sum (nu^2-1-6 a0(nu-a0))/(12 nu) for m >= 4,
    with locus counts as multiplicities.
    """
    if m < 2 or m % 2 != 0:
        raise ValueError(f"m={m} must be an even integer >= 2")
    total = Fraction(0)
    for nu, t, count in locus:
        if m == 2:
            total -= count * Fraction(nu * nu - 1, 24 * nu)
        else:
            a0 = alpha0(nu, t, m)
            total -= count * Fraction(nu * nu - 1 - 6 * a0 * (nu - a0), 12 * nu)
    return total


def C_const(m: int, fld: QuadraticField, locus: EllipticLocus) -> float:
    """The additive constant C_m of the determinant identities.

    C_2 = -1/2 log eps + sum (nu^2-1)/(12 nu) log nu;
    C_m = sum (nu^2-1-6 a0(nu-a0))/(6 nu) log nu for m >= 4.
    """
    if m < 2 or m % 2 != 0:
        raise ValueError(f"m={m} must be an even integer >= 2")
    total = 0.0
    if m == 2:
        total -= 0.5 * fld.log_eps
        for nu, _t, count in locus:
            total += count * (nu * nu - 1) / (12.0 * nu) * math.log(nu)
    else:
        for nu, t, count in locus:
            a0 = alpha0(nu, t, m)
            total += (
                count
                * (nu * nu - 1 - 6 * a0 * (nu - a0))
                / (6.0 * nu)
                * math.log(nu)
            )
    return total


def ell_exponent(l: int, m: int, nu: int, t: int) -> Fraction:
    """Exact exponent of Gamma((s+l)/nu) in the elliptic zeta factor.

    (nu-1-2l)/(2 nu) for the m=2 half factor,
    (nu-1-alpha_l-alpha_bar_l)/nu for m >= 4.
    """
    _check_params(nu, t, m)
    if not (0 <= l < nu):
        raise ValueError(f"l={l} out of range for nu={nu}")
    if m == 2:
        return Fraction(nu - 1 - 2 * l, 2 * nu)
    table = alpha_table(nu, t, m)
    return Fraction(nu - 1 - table.alpha[l] - table.alpha_bar[l], nu)
