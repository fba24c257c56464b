"""Heat-theta functions over supplied spectra, the geometric side of the
double-difference trace formulas under the Gaussian heat test pair, small-t
coefficient extraction, the eta continuation functions, finite-spectrum
determinants and the determinant expressions of the completed zetas.

True eigenvalue spectra are not computable here; determinants are evaluated
exactly for finite user-supplied spectra, and the closed right-hand sides are
evaluated independently from the zeta assembly.
"""

from __future__ import annotations

import cmath
import csv
import math
import warnings
from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np
from scipy.integrate import quad
from scipy.special import gamma as _sp_gamma

from .combinatorics import C_const, b0
from .field import EllipticLocus, QuadraticField
from .geodesics import GeodesicClass
from .zeta import ZetaDomainError, log_Zhat

QUAD_EPSABS = 1e-12
IMAG_TOL = 1e-10


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    m: int
    lambdas: tuple

    def __post_init__(self):
        lams = tuple(float(x) for x in self.lambdas)
        if any(x <= 0.0 for x in lams):
            raise SpectralError("eigenvalues must be strictly positive")
        if list(lams) != sorted(lams):
            raise SpectralError("eigenvalues must be sorted ascending")
        object.__setattr__(self, "lambdas", lams)

    def __len__(self):
        return len(self.lambdas)


@dataclass(frozen=True)
class HeatTestPair:
    """Gaussian heat test pair h1(r) = e^(-t(r^2+1/4)),
    g1(u) = (4 pi t)^(-1/2) e^(-t/4 - u^2/4t)."""

    t: float

    def __post_init__(self):
        if not self.t > 0.0:
            raise SpectralError(f"t={self.t} must be positive")

    def h1(self, r: float) -> float:
        return math.exp(-self.t * (r * r + 0.25))

    def g1(self, u: float) -> float:
        return math.exp(-self.t / 4.0 - u * u / (4.0 * self.t)) / math.sqrt(
            4.0 * math.pi * self.t
        )


@dataclass(frozen=True)
class GeometricSideBreakdown:
    t: float
    m: int
    I: float
    E: float
    HE: float
    PS: float  # zero for m >= 4
    HS: float
    total: float

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "m": self.m,
            "I": self.I,
            "E": self.E,
            "HE": self.HE,
            "PS": self.PS,
            "HS": self.HS,
            "total": self.total,
        }


def theta(spectrum: Spectrum, t: float) -> float:
    """Heat trace sum e^(-t lambda) over the supplied finite spectrum."""
    if t <= 0.0:
        raise SpectralError(f"t={t} must be positive")
    return sum(math.exp(-t * lam) for lam in spectrum.lambdas)


def identity_term(fld: QuadraticField, m: int, t: float) -> float:
    """Volume term of the geometric side: weight-dependent multiple of
    the r tanh(pi r) heat integral."""
    pair = HeatTestPair(t)
    pref = float(fld.zeta_m1) * (0.5 if m == 2 else 1.0)

    def integrand(r):
        return pair.h1(r) * r * math.tanh(math.pi * r)

    val, err = quad(integrand, 0.0, np.inf, epsabs=QUAD_EPSABS, epsrel=1e-12, limit=400)
    if err > 1e-8 * max(1.0, abs(val)):
        raise SpectralError(f"identity-term quadrature did not converge (err={err})")
    return pref * 2.0 * val


def _elliptic_class_integral(pair: HeatTestPair, th1: float) -> complex:
    """Gaussian-smoothed integral of e^(-u/2)(e^u - e^(2i th1))/(cosh u - cos 2 th1)."""
    umax = 14.0 * math.sqrt(pair.t) + 2.0
    e2i = cmath.exp(2j * th1)
    c2 = math.cos(2.0 * th1)

    def f(u, part):
        br = (cmath.exp(u) - e2i) / (math.cosh(u) - c2)
        v = pair.g1(u) * math.exp(-u / 2.0) * br
        return v.real if part == 0 else v.imag

    re, _ = quad(f, -umax, umax, args=(0,), epsabs=QUAD_EPSABS, limit=400, points=[0.0])
    im, _ = quad(f, -umax, umax, args=(1,), epsabs=QUAD_EPSABS, limit=400, points=[0.0])
    return complex(re, im)


def elliptic_term(locus: EllipticLocus, m: int, t: float) -> float:
    """Elliptic-class contribution to the geometric side.

    Each locus entry (nu, t_j) is expanded into the classes k = 1..nu-1 with
    angles (k pi/nu, k t_j pi/nu); the k <-> nu-k pairing makes the class sum
    real, which is asserted.
    """
    pair = HeatTestPair(t)
    den = 8.0 if m == 2 else 4.0
    total = 0.0 + 0.0j
    for nu, tj, count in locus:
        for k in range(1, nu):
            th1 = k * math.pi / nu
            th2 = k * tj * math.pi / nu
            pref = (
                -1j
                * cmath.exp(-1j * th1)
                * cmath.exp(1j * (m - 2) * th2)
                / (den * nu * math.sin(th1))
            )
            total += count * pref * _elliptic_class_integral(pair, th1)
    if abs(total.imag) > IMAG_TOL:
        raise SpectralError(
            f"elliptic term has imaginary residue {total.imag} above {IMAG_TOL}"
        )
    return total.real


def he_term(geodesics: Sequence[GeodesicClass], m: int, t: float) -> float:
    """Hyperbolic-elliptic contribution under the Gaussian pair; the input is
    expected to be power-expanded (a purely primitive list is flagged)."""
    pair = HeatTestPair(t)
    if geodesics and all(g.primitive for g in geodesics):
        warnings.warn(
            "he_term received a purely primitive list; did you forget expand_powers?",
            stacklevel=2,
        )
    pref = -0.5 if m == 2 else -1.0
    total = 0.0 + 0.0j
    for g in geodesics:
        weight = (
            g.mult
            * math.log(g.primitive_norm)
            / (math.sqrt(g.norm) - 1.0 / math.sqrt(g.norm))
        )
        phase = 1.0 if m == 2 else cmath.exp(1j * (m - 2) * g.omega)
        total += pref * weight * pair.g1(math.log(g.norm)) * phase
    if abs(total.imag) > IMAG_TOL:
        raise SpectralError(
            f"hyperbolic-elliptic term has imaginary residue {total.imag}"
        )
    return total.real


def parabolic_and_hyp2_terms(
    fld: QuadraticField, m: int, t: float, tail_tol: float = 1e-18
) -> Tuple[float, float]:
    """(PS, HS): cusp/scattering terms.  PS exists only for m=2."""
    pair = HeatTestPair(t)
    loge = fld.log_eps
    ps = -loge * pair.g1(0.0) if m == 2 else 0.0
    hs = 0.0
    k = 1
    while True:
        g = pair.g1(2.0 * k * loge)
        if m == 2:
            term = -2.0 * loge * g * math.exp(-k * loge)
        else:
            term = (
                -2.0
                * loge
                * g
                * (math.exp(-k * (m - 1) * loge) - math.exp(-k * (m - 3) * loge))
            )
        hs += term
        if abs(term) < tail_tol or k > 10000:
            break
        k += 1
    return ps, hs


def geometric_theta(
    fld: QuadraticField,
    locus: EllipticLocus,
    geodesics: Sequence[GeodesicClass],
    m: int,
    t: float,
) -> GeometricSideBreakdown:
    """Assembled geometric side of the double-difference trace formula.

    For m=2 the implied heat-trace estimate is total + 1 (the h1(i/2) term);
    for m >= 4 the total estimates theta_m - theta_{m-2} (+ delta_{m,4})."""
    I = identity_term(fld, m, t)
    E = elliptic_term(locus, m, t)
    HE = he_term(geodesics, m, t)
    PS, HS = parabolic_and_hyp2_terms(fld, m, t)
    return GeometricSideBreakdown(
        t=t, m=m, I=I, E=E, HE=HE, PS=PS, HS=HS, total=I + E + HE + PS + HS
    )


def small_t_fit(samples: Sequence[Tuple[float, float]]) -> Tuple[float, float, float]:
    """Least-squares fit of a/t + b/sqrt(t) + c through (t, value) samples."""
    if len(samples) < 3:
        raise SpectralError("small_t_fit needs at least 3 samples")
    ts = np.array([t for t, _ in samples], dtype=float)
    vs = np.array([v for _, v in samples], dtype=float)
    A = np.column_stack([1.0 / ts, 1.0 / np.sqrt(ts), np.ones_like(ts)])
    coef, *_ = np.linalg.lstsq(A, vs, rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def richardson_limit(f, t0: float, ratio: float = 2.0, levels: int = 3) -> float:
    """t -> 0 limit of f(t) = L + c1 t + c2 t^2 + ... by Richardson extrapolation
    on the geometric grid t0, t0/ratio, ..."""
    vals = [f(t0 / ratio**i) for i in range(levels)]
    for order in range(1, levels):
        r = ratio**order
        vals = [
            (r * vals[i + 1] - vals[i]) / (r - 1.0) for i in range(len(vals) - 1)
        ]
    return vals[0]


def elliptic_small_t_limit(
    locus: EllipticLocus, m: int, t0: float = 0.004, levels: int = 3
) -> float:
    """Extrapolated t -> 0 limit of the elliptic heat term.

    For m=2 this matches the closed-form b0(2); see b0 for the m >= 4 closed form.
    """
    return richardson_limit(lambda t: elliptic_term(locus, m, t), t0, levels=levels)


_ETA_PS = (0.0, 0.5, 1.0)


def eta(w, s: float, p: float) -> complex:
    """eta_p(w, s) = Gamma(w-p) (s(s-1))^(p-w) / Gamma(w) for p in {0, 1/2, 1}.

    The 1/Gamma(w) cancellation at w=0 is handled analytically, so the value
    is finite (and exact) at w=0.
    """
    if p not in _ETA_PS:
        raise SpectralError(f"p={p} must be one of 0, 1/2, 1")
    x = s * (s - 1.0)
    if x <= 0.0:
        raise SpectralError(f"s(s-1)={x} must be positive")
    wc = complex(w)
    if p == 0.0:
        ratio = 1.0 + 0.0j
    elif p == 1.0:
        ratio = 1.0 / (wc - 1.0)
    else:
        if wc == 0:
            ratio = 0.0 + 0.0j
        else:
            ratio = complex(_sp_gamma(wc - 0.5) / _sp_gamma(wc))
    return ratio * x ** (p - wc)


def eta_deriv0(s: float, p: float) -> float:
    """Closed-form d/dw eta_p(w, s) at w=0."""
    if p not in _ETA_PS:
        raise SpectralError(f"p={p} must be one of 0, 1/2, 1")
    x = s * (s - 1.0)
    if x <= 0.0:
        raise SpectralError(f"s(s-1)={x} must be positive")
    if p == 0.0:
        return -math.log(x)
    if p == 0.5:
        return -2.0 * math.sqrt(math.pi) * math.sqrt(x)
    return x * (math.log(x) - 1.0)


def finite_log_det(spectrum: Spectrum, s: float) -> float:
    """log Det over a finite spectrum: sum of log(lambda + s(s-1)).

    This is the exact regularization for a finite eigenvalue list."""
    x = s * (s - 1.0)
    total = 0.0
    for lam in spectrum.lambdas:
        shifted = lam + x
        if shifted <= 0.0:
            raise SpectralError(f"shifted eigenvalue {shifted} is not positive")
        total += math.log(shifted)
    return total


def corollary_log_det(
    s: float,
    m: int,
    fld: QuadraticField,
    locus: EllipticLocus,
    primitives: List[GeodesicClass],
    k_max: int,
) -> float:
    """log of the determinant expression assembled from the completed zetas:

    m=2:   log(s(s-1)) - (s-1/2)^2 zeta_K(-1) - C_2 + log Zhat_2^(1/2)(s)
    m>=4:  -(m-1)(s-1/2)^2 zeta_K(-1) - (C_2+...+C_m)
           + log Zhat_2^(1/2)(s) + log Zhat_4(s) + ... + log Zhat_m(s)
    """
    if m < 2 or m % 2 != 0:
        raise SpectralError(f"m={m} must be an even integer >= 2")
    x = s * (s - 1.0)
    if x <= 0.0:
        raise SpectralError(f"s(s-1)={x} must be positive")
    zeta = float(fld.zeta_m1)
    sq = (s - 0.5) ** 2
    total = -(m - 1) * sq * zeta
    for q in range(2, m + 1, 2):
        total -= C_const(q, fld, locus)
        total += log_Zhat(s, q, fld, locus, primitives, k_max).log_total.real
    if m == 2:
        total += math.log(x)
    return total


def telescoping_residual(
    s: float,
    m: int,
    fld: QuadraticField,
    locus: EllipticLocus,
    primitives: List[GeodesicClass],
    k_max: int,
) -> float:
    """Residual between the single-weight completed-zeta identity and the
    difference of chained determinant expressions; pure algebra, so it should
    vanish to rounding."""
    zeta = float(fld.zeta_m1)
    sq = (s - 0.5) ** 2
    zm = log_Zhat(s, m, fld, locus, primitives, k_max).log_total.real
    if m == 2:
        rhs = (
            sq * zeta
            + C_const(2, fld, locus)
            + corollary_log_det(s, 2, fld, locus, primitives, k_max)
            - math.log(s * (s - 1.0))
        )
        return zm - rhs
    lhs = corollary_log_det(s, m, fld, locus, primitives, k_max) - corollary_log_det(
        s, m - 2, fld, locus, primitives, k_max
    )
    rhs = zm - 2.0 * sq * zeta - C_const(m, fld, locus)
    if m == 4:
        rhs -= math.log(s * (s - 1.0))
    return lhs - rhs


def weyl_slope(spectrum: Spectrum, T_grid: Sequence[float]) -> float:
    """Least-squares slope of the eigenvalue counting function over the grid."""
    if len(T_grid) == 0:
        raise SpectralError("empty T grid")
    if len(spectrum) == 0:
        return 0.0
    lams = np.array(spectrum.lambdas)
    ts = np.asarray(T_grid, dtype=float)
    counts = np.array([(lams <= T).sum() for T in ts], dtype=float)
    A = np.column_stack([ts, np.ones_like(ts)])
    coef, *_ = np.linalg.lstsq(A, counts, rcond=None)
    return float(coef[0])


def sech2_moment() -> float:
    """Quadrature of the cited integral: int_0^inf r^2 / cosh^2(pi r) dr = 1/(12 pi)."""
    def integrand(r):
        x = math.pi * r
        if x > 350.0:
            return 0.0
        return r * r / math.cosh(x) ** 2

    val, _ = quad(integrand, 0.0, np.inf, epsabs=1e-14, epsrel=1e-13, limit=400)
    return val


def load_spectrum(path, m: int) -> Spectrum:
    """Spectrum CSV: header `lambda`, one positive real per row."""
    lams = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["lambda"]:
            raise SpectralError(f"bad spectrum header {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            try:
                lams.append(float(row[0]))
            except ValueError as exc:
                raise SpectralError(f"{path}: line {lineno}: {exc}") from exc
    return Spectrum(m=m, lambdas=tuple(sorted(lams)))
