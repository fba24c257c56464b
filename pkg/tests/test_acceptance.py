"""Acceptance suite: one pass/fail line per criterion, at the stated
tolerances.  Criteria are asserted as stated; any measured-vs-stated
discrepancy fails honestly rather than being loosened."""

import math
import time
from fractions import Fraction

import pytest

from hilzeta.combinatorics import (
    alpha_table,
    b0,
    cosecant_sum,
    ell_exponent,
    piecewise_alpha_check,
    weighted_sum_identity,
)
from hilzeta.field import (
    EllipticLocus,
    ParityViolation,
    cf_fundamental_unit,
    is_squarefree,
    make_field,
    validate_surface,
    zeta_K_minus1,
)
from hilzeta.geodesics import classify, element_from_coords, enumerate_he, iter_box_elements
from hilzeta.specfun import double_zeta_oracle, gamma2_stirling_remainder, log_gamma2
from hilzeta.spectral import (
    elliptic_small_t_limit,
    eta,
    eta_deriv0,
    geometric_theta,
    sech2_moment,
    small_t_fit,
    telescoping_residual,
)
from hilzeta.zeta import asymptotic_remainder

D5_LOCUS = EllipticLocus(((2, 1, 2), (3, 1, 2), (5, 1, 1), (5, 2, 1)))


def report(name, ok, detail=""):
    status = "PASS" if ok else "FAIL"
    print(f"{status} {name}" + (f" ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module")
def fld():
    return make_field(5)


def test_field_invariants():
    start = time.monotonic()
    ok = (
        zeta_K_minus1(5) == Fraction(1, 30)
        and zeta_K_minus1(8) == Fraction(1, 12)
        and zeta_K_minus1(13) == Fraction(1, 6)
    )
    for d in range(2, 100):
        if not is_squarefree(d):
            continue
        D = d if d % 4 == 1 else 4 * d
        if make_field(d).eps != cf_fundamental_unit(d):
            ok = False
            break
    elapsed = time.monotonic() - start
    report(
        "field-invariants (zeta_K(-1) exact; units vs CF oracle, d < 100)",
        ok and elapsed < 1.0,
        f"runtime {elapsed:.2f}s",
    )


def test_surface_parity(fld):
    ok = validate_surface(fld, D5_LOCUS) == 4
    try:
        validate_surface(fld, EllipticLocus(((2, 1, 1),)))
        ok = False
    except ParityViolation:
        pass
    report("surface-parity (E(X_K) = 4 accepted; non-even E rejected)", ok)


def test_gamma2_stirling_and_oracle():
    start = time.monotonic()
    rems = [abs(gamma2_stirling_remainder(z)) for z in (10.0, 30.0, 100.0, 300.0)]
    ok = rems[2] < 1e-2 and rems[0] > rems[1] > rems[2] > rems[3]
    worst = max(
        abs(log_gamma2(x) - double_zeta_oracle(x)) for x in (0.5, 1.0, 2.5, 7.0)
    )
    ok = ok and worst < 1e-6
    elapsed = time.monotonic() - start
    report(
        "gamma2 (Stirling remainder trend; double-sum oracle)",
        ok and elapsed < 10.0,
        f"|R(100)|={rems[2]:.2e}, oracle diff {worst:.2e}, runtime {elapsed:.1f}s",
    )


def test_alpha_combinatorics():
    start = time.monotonic()
    ok = True
    for nu in range(2, 31):
        for t in range(1, nu):
            if math.gcd(t, nu) != 1:
                continue
            for m in range(2, 21, 2):
                tab = alpha_table(nu, t, m)
                if sorted(tab.alpha) != list(range(nu)):
                    ok = False
                if sorted(tab.alpha_bar) != list(range(nu)):
                    ok = False
                if sum(nu - 1 - a - b for a, b in zip(tab.alpha, tab.alpha_bar)) != 0:
                    ok = False
                if not piecewise_alpha_check(tab):
                    ok = False
                lhs, rhs = weighted_sum_identity(tab)
                if lhs != rhs:
                    ok = False
                if sum(ell_exponent(l, m, nu, t) for l in range(nu)) != 0:
                    ok = False
    elapsed = time.monotonic() - start
    report(
        "alpha-combinatorics (permutation/zero-sum/piecewise/weighted-sum, nu<=30, m<=20)",
        ok and elapsed < 5.0,
        f"runtime {elapsed:.1f}s",
    )


def test_cosecant_identity():
    worst = 0.0
    for nu in range(2, 51):
        closed = float(cosecant_sum(nu))
        numeric = sum(
            1.0 / (1.0 - math.cos(2.0 * math.pi * k / nu)) for k in range(1, nu)
        )
        worst = max(worst, abs(numeric - closed))
    report("cosecant-identity (nu <= 50, tol 1e-10)", worst < 1e-10, f"worst {worst:.1e}")


def test_zeta_asymptotics(fld):
    dec_ok = True
    for m in (2, 4):
        vals = [abs(asymptotic_remainder(s, m, fld, D5_LOCUS)) for s in (10.0, 20.0, 40.0)]
        if not vals[0] > vals[1] > vals[2]:
            dec_ok = False
    r30 = {m: abs(asymptotic_remainder(30.0, m, fld, D5_LOCUS)) for m in (2, 4)}
    ok = dec_ok and all(v < 1e-2 for v in r30.values())
    report(
        "zeta-asymptotics (|remainder(30)| < 1e-2 for m in {2,4}; decreasing)",
        ok,
        f"|r30| m=2: {r30[2]:.3e}, m=4: {r30[4]:.3e}, decreasing: {dec_ok}",
    )


def test_heat_small_t(fld):
    start = time.monotonic()
    z = float(fld.zeta_m1)
    samples = [
        (t, geometric_theta(fld, D5_LOCUS, [], 2, t).total + 1.0)
        for t in (0.02, 0.01, 0.005)
    ]
    a, b, c = small_t_fit(samples)
    ta = z / 2.0
    tb = -fld.log_eps / (2.0 * math.sqrt(math.pi))
    tc = -z / 6.0 + float(b0(2, D5_LOCUS)) + 1.0
    lim = elliptic_small_t_limit(D5_LOCUS, 2)
    lim_ok = abs(lim - float(b0(2, D5_LOCUS))) < 1e-6
    fit_ok = (
        abs(a - ta) / ta < 1e-4 and abs(b - tb) < 1e-3 and abs(c - tc) < 1e-2
    )
    elapsed = time.monotonic() - start
    report(
        "heat-small-t (fit tolerances; b0(2) limit 1e-6)",
        fit_ok and lim_ok and elapsed < 30.0,
        f"a err {abs(a - ta) / ta:.1e} (tol 1e-4), b err {abs(b - tb):.1e} "
        f"(tol 1e-3), c err {abs(c - tc):.1e} (tol 1e-2), "
        f"b0 limit err {abs(lim - float(b0(2, D5_LOCUS))):.1e}, runtime {elapsed:.1f}s",
    )


def test_eta_derivatives():
    ok = True
    h = 1e-4
    for p in (0.0, 0.5, 1.0):
        for s in (2.0, 3.0, 5.0):
            fd = (eta(h, s, p) - eta(-h, s, p)).real / (2.0 * h)
            cf = eta_deriv0(s, p)
            # tolerance 1e-6, read relative for |cf| > 1 (the h^2 truncation
            # of the central difference scales with the derivative magnitude)
            if abs(fd - cf) > 1e-6 * max(1.0, abs(cf)):
                ok = False
    closed = (
        abs(eta_deriv0(2.0, 0.0) + math.log(2.0)) < 1e-10
        and abs(eta_deriv0(2.0, 0.5) + 2.0 * math.sqrt(2.0 * math.pi)) < 1e-10
        and abs(eta_deriv0(2.0, 1.0) - 2.0 * (math.log(2.0) - 1.0)) < 1e-10
    )
    report("eta-derivatives (closed forms vs central finite differences)", ok and closed)


def test_telescoping(fld):
    worst = 0.0
    prims = [g for g in enumerate_he(fld, 4) if g.primitive]
    for s in (2.0, 3.5, 10.0):
        for m in (2, 4, 6):
            worst = max(worst, abs(telescoping_residual(s, m, fld, D5_LOCUS, prims, 20)))
    report(
        "determinant-telescoping (residual <= 1e-12)",
        worst <= 1e-12,
        f"worst {worst:.1e}",
    )


def test_enumerator(fld):
    start = time.monotonic()
    classes = enumerate_he(fld, 6)
    hit = any(
        abs(g.norm - 10.99925) < 1e-3 and abs(g.omega - 0.8081) < 1e-3
        for g in classes
    )
    tags = {
        "Identity", "Parabolic", "Hyperbolic", "Elliptic",
        "HyperbolicElliptic", "EllipticHyperbolic",
    }
    exhaustive = True
    for coords in iter_box_elements(fld, 3):
        cls = classify(element_from_coords(fld, coords))
        if cls.tag not in tags:
            exhaustive = False
    elapsed = time.monotonic() - start
    report(
        "enumerator (HE class at height 6; classification total on height-3 box)",
        hit and exhaustive and elapsed < 60.0,
        f"runtime {elapsed:.1f}s",
    )


def test_quadrature_oracle():
    err = abs(sech2_moment() - 1.0 / (12.0 * math.pi))
    report("quadrature-oracle (int r^2 sech^2(pi r) = 1/(12 pi))", err < 1e-10, f"err {err:.1e}")
