import math

import pytest

from hilzeta.specfun import (
    ZETA_PRIME_M1,
    double_zeta_oracle,
    gamma2_stirling_remainder,
    log_barnes_g,
    log_gamma,
    log_gamma2,
)


def test_log_gamma_basic():
    assert abs(log_gamma(1.0)) < 1e-14
    assert abs(log_gamma(2.0)) < 1e-14
    assert math.isclose(log_gamma(0.5), 0.5 * math.log(math.pi), rel_tol=1e-14)
    with pytest.raises(ValueError):
        log_gamma(0.0)
    with pytest.raises(ValueError):
        log_gamma(-2.0)


def test_barnes_g_small_values():
    # G(1) = G(2) = G(3) = 1
    assert abs(log_barnes_g(1.0)) < 1e-13
    assert abs(log_barnes_g(2.0)) < 1e-13
    assert abs(log_barnes_g(3.0)) < 1e-13
    # G(4) = 2
    assert math.isclose(log_barnes_g(4.0), math.log(2.0), rel_tol=1e-12)


def test_gamma2_special_values():
    # Gamma_2(1) = exp(zeta'(-1))
    assert math.isclose(log_gamma2(1.0), ZETA_PRIME_M1, rel_tol=1e-12)
    # Gamma_2(2) = exp(zeta'(-1)) * sqrt(2 pi) / G(2)
    expected = ZETA_PRIME_M1 + 0.5 * math.log(2.0 * math.pi)
    assert math.isclose(log_gamma2(2.0), expected, rel_tol=1e-12)
    assert math.isclose(log_gamma2(2.0), 0.7535173895008136, rel_tol=1e-10)


def test_gamma2_recurrence_consistency():
    # Gamma_2(z+1) = Gamma_2(z) sqrt(2 pi) / Gamma(z) (from G(z+1) = Gamma(z) G(z))
    for z in (0.7, 1.3, 2.5, 6.0):
        lhs = log_gamma2(z + 1.0)
        rhs = log_gamma2(z) + 0.5 * math.log(2.0 * math.pi) - log_gamma(z)
        assert abs(lhs - rhs) < 1e-11, z


def test_double_zeta_oracle_agreement():
    for x in (0.5, 1.0, 2.5, 7.0):
        assert abs(log_gamma2(x) - double_zeta_oracle(x)) < 1e-6, x


def test_stirling_remainder_trend():
    vals = [abs(gamma2_stirling_remainder(z)) for z in (10.0, 30.0, 100.0, 300.0)]
    assert vals[2] < 1e-2
    assert vals[0] > vals[1] > vals[2] > vals[3]
