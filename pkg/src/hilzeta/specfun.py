"""Special-function kernels: log Gamma, Barnes G, the double Gamma function,
and a slow double-sum oracle for the zeta-regularized definition of Gamma_2.

All evaluation is in binary64.  The double Gamma normalization is fixed by
    log Gamma_2(x) = zeta'(-1) + ((x-1)/2) log(2 pi) - log G(x),
cross-checked against the defining double zeta sum by `double_zeta_oracle`.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import loggamma as _sp_loggamma
from scipy.special import zeta as _sp_zeta

LOG_TWO_PI = math.log(2.0 * math.pi)
EULER_GAMMA = 0.5772156649015328606
#: zeta'(-1) = 1/12 - log(Glaisher A); validated against double_zeta_oracle in tests.
ZETA_PRIME_M1 = -0.16542114370045092921


def log_gamma(z):
    """Principal branch of log Gamma(z) for Re z > 0."""
    zc = complex(z)
    if zc.real <= 0.0:
        if zc.imag == 0.0 and zc.real == int(zc.real):
            raise ValueError(f"Gamma pole at z={z}")
        raise ValueError(f"log_gamma requires Re z > 0, got {z}")
    out = _sp_loggamma(zc)
    if isinstance(z, complex):
        return complex(out)
    return float(out.real)


# Taylor coefficients of log G(1+z) about z=0: sum_{n>=3} (-1)^(n-1) zeta(n-1) z^n / n.
_G_SERIES_N = 120
_G_SERIES_COEF = [
    (-1.0) ** (n - 1) * float(_sp_zeta(n - 1, 1)) / n for n in range(3, _G_SERIES_N)
]


def _log_barnes_g_base(w: float) -> float:
    """log G(w) for w in [0.5, 1.5) by the Taylor series of the defining product."""
    z = w - 1.0
    acc = 0.5 * z * LOG_TWO_PI - 0.5 * (z + z * z * (1.0 + EULER_GAMMA))
    zn = z * z
    # compensated summation of the tail
    s = 0.0
    c = 0.0
    for coef in _G_SERIES_COEF:
        zn *= z
        term = coef * zn
        y = term - c
        t = s + y
        c = (t - s) - y
        s = t
        if abs(term) < 1e-18 and abs(zn) < 1e-16:
            break
    return acc + s


def log_barnes_g(x: float) -> float:
    """log of the Barnes G-function for x > 0.

    Evaluated by the Taylor series of the defining product near x=1 and the
    recurrence G(x+1) = Gamma(x) G(x) elsewhere.
    """
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"log_barnes_g requires x > 0, got {x}")
    acc = 0.0
    w = x
    while w >= 1.5:
        w -= 1.0
        acc += math.lgamma(w)
    while w < 0.5:
        acc -= math.lgamma(w)
        w += 1.0
    return acc + _log_barnes_g_base(w)


def log_gamma2(x: float) -> float:
    """log of the double Gamma function Gamma_2 on the positive real axis."""
    x = float(x)
    if x <= 0.0:
        raise ValueError(f"log_gamma2 requires x > 0, got {x}")
    return ZETA_PRIME_M1 + 0.5 * (x - 1.0) * LOG_TWO_PI - log_barnes_g(x)


# Bernoulli numbers B_2 .. B_12 for the Euler-Maclaurin tail.
_BERNOULLI = [
    (2, 1.0 / 6.0),
    (4, -1.0 / 30.0),
    (6, 1.0 / 42.0),
    (8, -1.0 / 30.0),
    (10, 5.0 / 66.0),
    (12, -691.0 / 2730.0),
]


def _hurwitz_em(s: float, a: float, n_terms: int = 40) -> float:
    """Hurwitz zeta(s, a) for real s != 1, a > 0, by Euler-Maclaurin."""
    if s == 1.0:
        raise ValueError("pole at s=1")
    total = sum((a + k) ** (-s) for k in range(n_terms))
    na = a + n_terms
    total += na ** (1.0 - s) / (s - 1.0)
    total += 0.5 * na ** (-s)
    poch = s
    fact = 1.0
    for two_j, b in _BERNOULLI:
        fact *= (two_j - 1) * two_j
        total += b / fact * poch * na ** (-s - two_j + 1.0)
        poch *= (s + two_j - 1.0) * (s + two_j)
    return total


def _hurwitz_em_ds(s: float, a: float, h: float = 1e-4) -> float:
    """d/ds of the Euler-Maclaurin Hurwitz zeta, by central difference."""
    return (_hurwitz_em(s + h, a) - _hurwitz_em(s - h, a)) / (2.0 * h)


def double_zeta_oracle(x: float) -> float:
    """log Gamma_2(x) straight from the double-sum definition.

    Groups the double sum as sum_k (k+1)(k+x)^(-s), writes (k+1) =
    (k+x) + (1-x), and differentiates the resulting Hurwitz-type
    continuation at s=0.  Slow; intended as an independent cross-check
    of log_gamma2 on 0 < x <= 10.
    """
    x = float(x)
    if not (0.0 < x <= 10.0):
        raise ValueError(f"double_zeta_oracle covers 0 < x <= 10, got {x}")
    return _hurwitz_em_ds(-1.0, x) + (1.0 - x) * _hurwitz_em_ds(0.0, x)


def gamma2_stirling_remainder(z: float) -> float:
    """log Gamma_2(z+1) minus its quadratic-log main terms; tends to 0 as z grows."""
    z = float(z)
    if z <= 0.0:
        raise ValueError(f"requires z > 0, got {z}")
    main = 0.75 * z * z - (0.5 * z * z - 1.0 / 12.0) * math.log(z)
    return log_gamma2(z + 1.0) - main
