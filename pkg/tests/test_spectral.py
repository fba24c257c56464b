import math

import numpy as np
import pytest

from hilzeta.combinatorics import b0
from hilzeta.field import EllipticLocus, make_field
from hilzeta.geodesics import GeodesicClass, enumerate_he, expand_powers
from hilzeta.spectral import (
    HeatTestPair,
    SpectralError,
    Spectrum,
    corollary_log_det,
    elliptic_small_t_limit,
    elliptic_term,
    eta,
    eta_deriv0,
    finite_log_det,
    geometric_theta,
    he_term,
    identity_term,
    load_spectrum,
    parabolic_and_hyp2_terms,
    richardson_limit,
    sech2_moment,
    small_t_fit,
    telescoping_residual,
    theta,
    weyl_slope,
)

D5_LOCUS = EllipticLocus(((2, 1, 2), (3, 1, 2), (5, 1, 1), (5, 2, 1)))


@pytest.fixture(scope="module")
def fld():
    return make_field(5)


def test_spectrum_validation():
    with pytest.raises(SpectralError):
        Spectrum(m=2, lambdas=(1.0, -1.0))
    with pytest.raises(SpectralError):
        Spectrum(m=2, lambdas=(2.0, 1.0))
    assert len(Spectrum(m=2, lambdas=())) == 0


def test_theta_examples():
    assert theta(Spectrum(m=2, lambdas=()), 1.0) == 0.0
    assert math.isclose(theta(Spectrum(m=2, lambdas=(1.0,)), 1.0), math.exp(-1.0))
    assert math.isclose(
        theta(Spectrum(m=2, lambdas=(1.0, 2.0)), 0.5),
        math.exp(-0.5) + math.exp(-1.0),
    )
    with pytest.raises(SpectralError):
        theta(Spectrum(m=2, lambdas=(1.0,)), 0.0)


def test_heat_pair():
    pair = HeatTestPair(0.01)
    assert math.isclose(pair.h1(0.0), math.exp(-0.0025))
    assert math.isclose(
        pair.g1(0.0), math.exp(-0.0025) / math.sqrt(0.04 * math.pi)
    )
    with pytest.raises(SpectralError):
        HeatTestPair(0.0)


def test_identity_term(fld):
    i2 = identity_term(fld, 2, 0.01)
    assert abs(i2 - 1.661122) < 1e-4
    i4 = identity_term(fld, 4, 0.01)
    assert math.isclose(i4, 2.0 * i2, rel_tol=1e-10)
    # t * I(t) -> zeta/2 as t -> 0
    lim = richardson_limit(lambda t: t * identity_term(fld, 2, t), 0.02)
    assert abs(lim - float(fld.zeta_m1) / 2.0) < 1e-6


def test_elliptic_term_limits():
    assert elliptic_term(EllipticLocus(()), 2, 0.01) == 0.0
    lim = elliptic_small_t_limit(EllipticLocus(((3, 1, 1),)), 2)
    assert abs(lim - (-1.0 / 9.0)) < 1e-6
    lim2 = elliptic_small_t_limit(EllipticLocus(((2, 1, 1),)), 2)
    assert abs(lim2 - (-1.0 / 16.0)) < 1e-6


def test_elliptic_term_limits_m4():
    for nu, t in ((5, 1), (5, 2), (3, 1)):
        loc = EllipticLocus(((nu, t, 1),))
        lim = elliptic_small_t_limit(loc, 4)
        assert abs(lim - float(b0(4, loc))) < 1e-6, (nu, t)


def test_he_term():
    assert he_term([], 2, 0.01) == 0.0
    cls = GeodesicClass(norm=11.0, omega=1.0)
    geos = expand_powers([cls], 200.0)
    # Gaussian decay at small t
    assert abs(he_term(geos, 2, 0.01)) < 1e-60
    v = he_term(geos, 2, 1.0)
    assert v < 0.0 and abs(v) < 1.0


def test_he_term_warns_on_primitive_only():
    cls = GeodesicClass(norm=11.0, omega=1.0)
    with pytest.warns(UserWarning):
        he_term([cls], 2, 1.0)


def test_parabolic_and_hyp2(fld):
    ps, hs = parabolic_and_hyp2_terms(fld, 2, 0.01)
    closed = -fld.log_eps * math.exp(-0.0025) / math.sqrt(0.04 * math.pi)
    assert math.isclose(ps, closed, rel_tol=1e-12)
    assert abs(ps - (-1.354)) < 1e-3
    assert abs(hs) < 1e-9  # Gaussian at 2 log eps
    ps4, hs4 = parabolic_and_hyp2_terms(fld, 4, 0.01)
    assert ps4 == 0.0
    assert abs(hs4) < 1e-9


def test_geometric_theta_assembly(fld):
    bd = geometric_theta(fld, D5_LOCUS, [], 2, 0.01)
    assert math.isclose(
        bd.total, bd.I + bd.E + bd.HE + bd.PS + bd.HS, rel_tol=1e-14
    )
    assert abs(bd.I - 1.661) < 1e-2
    assert abs(bd.PS - (-1.357)) < 1e-2
    js = bd.to_json()
    assert set(js) == {"t", "m", "I", "E", "HE", "PS", "HS", "total"}
    bd4 = geometric_theta(fld, D5_LOCUS, [], 4, 0.01)
    assert bd4.PS == 0.0


def test_small_t_fit_exact():
    a, b, c = 0.4, -1.3, 2.2
    samples = [(t, a / t + b / math.sqrt(t) + c) for t in (0.02, 0.01, 0.005, 0.002)]
    fa, fb, fc = small_t_fit(samples)
    assert abs(fa - a) < 1e-10 and abs(fb - b) < 1e-10 and abs(fc - c) < 1e-10
    with pytest.raises(SpectralError):
        small_t_fit(samples[:2])


def test_m4_over_m2_coefficient_scaling(fld):
    ts = (0.02, 0.01, 0.005)
    s2 = [(t, geometric_theta(fld, D5_LOCUS, [], 2, t).total + 1.0) for t in ts]
    s4 = [(t, geometric_theta(fld, D5_LOCUS, [], 4, t).total) for t in ts]
    a2 = small_t_fit(s2)[0]
    a4 = small_t_fit(s4)[0]
    # theta_4 - theta_2 has 1/t coefficient zeta = 2 * (zeta/2)
    assert abs(a4 / a2 - 2.0) < 0.05


def test_eta_values():
    assert eta(0.0, 2.0, 0.0) == pytest.approx(1.0)
    assert eta(0.0, 2.0, 1.0).real == pytest.approx(-2.0)
    assert eta(0.0, 2.0, 0.5) == 0.0
    with pytest.raises(SpectralError):
        eta(0.0, 2.0, 0.25)
    with pytest.raises(SpectralError):
        eta(0.0, 0.5, 0.0)


def test_eta_deriv0_closed_forms():
    assert abs(eta_deriv0(2.0, 0.0) - (-math.log(2.0))) < 1e-10
    assert abs(eta_deriv0(2.0, 0.5) - (-2.0 * math.sqrt(2.0 * math.pi))) < 1e-10
    assert abs(eta_deriv0(2.0, 1.0) - 2.0 * (math.log(2.0) - 1.0)) < 1e-10


def test_eta_deriv0_finite_difference():
    h = 1e-4
    for p in (0.0, 0.5, 1.0):
        for s in (2.0, 3.0, 5.0):
            fd = (eta(h, s, p) - eta(-h, s, p)).real / (2 * h)
            cf = eta_deriv0(s, p)
            assert abs(fd - cf) < 1e-6 * max(1.0, abs(cf)), (p, s)


def test_finite_log_det():
    assert math.isclose(finite_log_det(Spectrum(m=2, lambdas=(1.0,)), 2.0), math.log(3.0))
    assert math.isclose(
        finite_log_det(Spectrum(m=2, lambdas=(1.0, 2.0)), 2.0), math.log(12.0)
    )
    assert finite_log_det(Spectrum(m=2, lambdas=()), 2.0) == 0.0
    # additivity
    base = finite_log_det(Spectrum(m=2, lambdas=(1.0, 2.0)), 3.0)
    more = finite_log_det(Spectrum(m=2, lambdas=(1.0, 2.0, 5.0)), 3.0)
    assert math.isclose(more - base, math.log(5.0 + 6.0), rel_tol=1e-14)
    with pytest.raises(SpectralError):
        finite_log_det(Spectrum(m=2, lambdas=(0.2,)), 0.5)


def test_corollary_log_det_truncation_stability(fld):
    prims = [g for g in enumerate_he(fld, 5) if g.primitive]
    v1 = corollary_log_det(3.0, 2, fld, D5_LOCUS, prims, 20)
    v2 = corollary_log_det(3.0, 2, fld, D5_LOCUS, prims, 21)
    from hilzeta.zeta import log_Zhat

    trunc = log_Zhat(3.0, 2, fld, D5_LOCUS, prims, 20).truncation_norm
    assert abs(v1 - v2) <= trunc + 1e-18


def test_telescoping(fld):
    prims = [g for g in enumerate_he(fld, 4) if g.primitive]
    for s in (2.0, 3.5, 10.0):
        for m in (2, 4, 6):
            assert abs(telescoping_residual(s, m, fld, D5_LOCUS, prims, 15)) < 1e-12


def test_weyl_slope():
    lam = tuple(j / 0.25 for j in range(1, 200))
    spec = Spectrum(m=2, lambdas=lam)
    slope = weyl_slope(spec, [100.0, 200.0, 400.0, 700.0])
    assert abs(slope - 0.25) < 0.01
    assert weyl_slope(Spectrum(m=2, lambdas=()), [1.0]) == 0.0
    with pytest.raises(SpectralError):
        weyl_slope(spec, [])


def test_sech2_moment():
    assert abs(sech2_moment() - 1.0 / (12.0 * math.pi)) < 1e-10


def test_load_spectrum(tmp_path):
    p = tmp_path / "spec.csv"
    p.write_text("lambda\n2.5\n1.5\n")
    spec = load_spectrum(p, 2)
    assert spec.lambdas == (1.5, 2.5)
    bad = tmp_path / "bad.csv"
    bad.write_text("eigenvalue\n1.0\n")
    with pytest.raises(SpectralError):
        load_spectrum(bad, 2)
