import random
from fractions import Fraction

import pytest

from diophlab.constants import (alpha_fraction, beta_fraction, certified_decimal,
                                compute_constants, p2_value, power_interval,
                                prop_identity_gap, theta_fraction)
from diophlab.dyadic import Interval
from diophlab.realspec import builtin_spec


@pytest.fixture(scope="module")
def consts():
    return compute_constants(spec=builtin_spec("2^(1/4)"))


def test_published_truncations(consts):
    assert consts.digits("lambda3", 4) == "0.4245"
    assert consts.digits("lambda2", 4) == "0.4241"
    assert consts.digits("tau4", 4) == "3.3556"
    assert consts.digits("gamma_over_lambda3", 3) == "3.811"
    assert consts.digits("sqrt2_minus_1", 4) == "0.4142"
    assert consts.digits("gamma", 4) == "1.6180"


def test_closed_forms_agree_to_fifty_digits(consts):
    assert consts.digits("lambda3", 50) == certified_decimal(consts.lambda3_alt, 50)
    gap = consts.lambda3 - consts.lambda3_alt
    bound = max(abs(gap.lo.as_fraction()), abs(gap.hi.as_fraction()))
    assert bound < Fraction(1, 10**45)


def test_lambda3_is_quadratic_root(consts):
    one_plus_2g = Interval.from_int(1) + consts.gamma.scale_int(2)
    val = consts.lambda3.pow_int(2) - one_plus_2g * consts.lambda3 + consts.gamma
    bound = max(abs(val.lo.as_fraction()), abs(val.hi.as_fraction()))
    assert bound < Fraction(1, 10**45)


def test_cross_identity_checks_all_pass(consts):
    assert all(consts.checks.values()), consts.checks


def test_ordering_of_gate_values(consts):
    assert (consts.sqrt2_minus_1.hi.as_fraction()
            < consts.lambda2.lo.as_fraction())
    assert consts.lambda2.hi.as_fraction() < consts.lambda3.lo.as_fraction()
    assert consts.lambda3.hi.as_fraction() < Fraction(1, 2)


def test_p2_has_negative_value_left_of_root(consts):
    assert p2_value(Fraction(4241, 10000)) < 0
    assert p2_value(Fraction(4242, 10000)) > 0


def test_identity_gap_zero_at_random_rationals():
    rng = random.Random(13)
    for _ in range(100):
        lam = Fraction(rng.randint(3400, 5000), 10000)
        assert prop_identity_gap(lam) == 0


def test_alpha_beta_theta_rational_paths():
    lam = Fraction(43, 100)
    assert theta_fraction(lam) == Fraction(57, 43)
    assert beta_fraction(lam) == (1 - lam) / (lam * lam - lam + 1)
    # alpha denominator lam*(lam^2-lam+1)
    expect = (-lam**4 + lam**3 + lam**2 - 3 * lam + 1) / (lam * (lam**2 - lam + 1))
    assert alpha_fraction(lam) == expect


def test_theta_edges():
    cs = compute_constants(Fraction(1, 2))
    assert abs(cs.theta.mid_float() - 1.0) < 1e-30
    cs = compute_constants(Fraction(1))
    assert abs(cs.theta.mid_float()) < 1e-30
    assert cs.regime["theta_ge_1"] is False
    assert cs.regime["lambda_le_half"] is False
    with pytest.raises(ValueError):
        compute_constants(Fraction(0))
    with pytest.raises(ValueError):
        compute_constants(Fraction(3, 2))


def test_c1_for_unit_and_large_values(consts):
    # xi = 2^(1/4): c1 = 2 * 2^(3*lam/4)
    expect = 2 * 2 ** (3 * consts.lam.mid_float() / 4)
    assert abs(consts.c1.mid_float() - expect) < 1e-12
    small = compute_constants(spec=builtin_spec("golden"))
    assert small.c1.lo.as_fraction() > 2  # golden ratio > 1
    inside = compute_constants(
        spec=builtin_spec("golden").continued_fraction(0, [2], label="cf"))
    assert inside.c1.lo.as_fraction() == 2  # |xi| < 1 collapses the max


def test_power_interval_is_certified():
    base = Interval.from_fractions(Fraction(2), Fraction(2), 80)
    expo = Interval.from_fractions(Fraction(1, 2), Fraction(1, 2), 80)
    out = power_interval(base, expo, 100)
    assert out.lo.as_fraction() ** 2 < 2 < out.hi.as_fraction() ** 2


def test_digits_refuses_uncertified():
    cs = compute_constants(bits=64)
    with pytest.raises(ValueError):
        cs.digits("lambda3", 50)
