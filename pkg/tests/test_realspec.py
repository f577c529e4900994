import json
from fractions import Fraction

import pytest

from diophlab import polys
from diophlab.dyadic import sqrt_interval_fraction
from diophlab.realspec import (EscalationError, InvalidSpecError,
                               PrecisionContext, RealContext, RealSpec,
                               SuspectedRationalityError, builtin_spec,
                               degree_precheck, evaluate_powers,
                               nearest_integer_multiple)


def test_sqrt2_square_enclosure_pins_two():
    enc = evaluate_powers(builtin_spec("sqrt2"), 2, bits=64)[1]
    assert enc.contains_fraction(Fraction(2))
    assert enc.width().as_fraction() <= Fraction(1, 1 << 60)


def test_truncated_golden_cf_encloses_golden_ratio():
    # depth-40 truncation: a rational within ~1/F40^2 of (1+sqrt5)/2
    spec = RealSpec.continued_fraction(1, [1] * 40, label="golden-trunc")
    enc = evaluate_powers(spec, 1, bits=80)[0]
    golden = sqrt_interval_fraction(Fraction(5), 120)  # independent via isqrt
    golden_lo = (1 + golden.lo.as_fraction()) / 2
    golden_hi = (1 + golden.hi.as_fraction()) / 2
    tol = Fraction(1, 10**10)
    assert enc.lo.as_fraction() - tol <= golden_lo
    assert golden_hi <= enc.hi.as_fraction() + tol
    assert abs(float(enc.mid()) - 1.618033988749) < 1e-10


def test_quartic_powers_bracket_true_roots():
    encs = evaluate_powers(builtin_spec("2^(1/4)"), 3, bits=100)
    # independent check in exact rational arithmetic: endpoints straddle
    # the unique positive roots of x^4 = 2, x^2 = 2, x^4 = 8
    assert encs[0].lo.as_fraction() ** 4 < 2 < encs[0].hi.as_fraction() ** 4
    assert encs[1].lo.as_fraction() ** 2 < 2 < encs[1].hi.as_fraction() ** 2
    assert encs[2].lo.as_fraction() ** 4 < 8 < encs[2].hi.as_fraction() ** 4


def test_enclosure_sign_change_is_exact(quartic_spec):
    rcx = RealContext(quartic_spec)
    enc = rcx.enclosure(96)
    p = list(quartic_spec.poly)
    assert (polys.eval_fraction(p, enc.lo.as_fraction())
            * polys.eval_fraction(p, enc.hi.as_fraction()) < 0)


def test_monotone_refinement(quartic_rcx):
    coarse = quartic_rcx.power(3, 80)
    fine = quartic_rcx.power(3, 160)
    assert fine.is_subset(coarse)


def test_power_consistency(quartic_rcx):
    base = quartic_rcx.power(1, 120)
    for i in (1, 2):
        prod = quartic_rcx.power(i, 120) * base
        nxt = quartic_rcx.power(i + 1, 120)
        assert nxt.lo <= prod.hi and prod.lo <= nxt.hi  # intervals intersect


@pytest.mark.parametrize("name,x0,i,expected", [
    ("sqrt2", 5, 1, 7),     # 5*sqrt2 = 7.071...
    ("sqrt2", 1, 2, 2),     # exactly 2
    ("2^(1/4)", 12, 3, 20),  # 12*2^(3/4) = 20.18...
])
def test_nearest_integer_multiple(name, x0, i, expected):
    assert nearest_integer_multiple(builtin_spec(name), x0, i) == expected


def test_nearest_integer_idempotent_under_escalation(quartic_spec):
    lo = nearest_integer_multiple(quartic_spec, 1234, 3,
                                  PrecisionContext(initial_bits=64))
    hi = nearest_integer_multiple(quartic_spec, 1234, 3,
                                  PrecisionContext(initial_bits=4096))
    assert lo == hi


def test_half_integer_tie_raises():
    # xi = 3/2 exactly, both as a finite continued fraction and as a root
    cf = RealSpec.continued_fraction(1, [2], label="3/2")
    with pytest.raises(SuspectedRationalityError):
        nearest_integer_multiple(cf, 1, 1)
    alg = RealSpec.algebraic([-3, 2], 1, 2, label="3/2")
    with pytest.raises(SuspectedRationalityError):
        nearest_integer_multiple(alg, 1, 1)


def test_escalation_error_reports_width():
    ctx = PrecisionContext(initial_bits=64, cap_bits=128)
    with pytest.raises(EscalationError) as exc:
        evaluate_powers(builtin_spec("2^(1/4)"), 2, ctx, bits=4096)
    assert exc.value.achieved_width is not None
    assert exc.value.achieved_width.as_fraction() > 0


def test_degree_precheck_cases():
    ok = degree_precheck(builtin_spec("2^(1/4)"))
    assert ok["checks_passed"] and not ok["irreducibility_certified"]

    low = degree_precheck(builtin_spec("sqrt2"))
    assert not low["checks"]["degree_gt_3"]
    assert low["checks"]["squarefree"] and low["checks"]["no_rational_roots"]

    # x^4 - 4 = (x^2-2)(x^2+2): every mechanical check passes, yet the
    # report must keep irreducibility uncertified
    risky = degree_precheck(RealSpec.algebraic([-4, 0, 0, 0, 1], 1, 2))
    assert risky["checks_passed"]
    assert risky["irreducibility_certified"] is False


def test_degree_precheck_on_cf_specs():
    golden = degree_precheck(builtin_spec("golden"))
    assert golden["degree_claim"] == 2
    assert not golden["checks"]["degree_gt_3"]
    rational = degree_precheck(RealSpec.continued_fraction(1, [2]))
    assert rational["degree_claim"] == 1


def test_spec_validation_errors():
    with pytest.raises(InvalidSpecError):
        RealSpec.algebraic([1], 0, 1)                 # degree 0
    with pytest.raises(InvalidSpecError):
        RealSpec.algebraic([-2, 0, 1], 2, 3)          # no sign change
    with pytest.raises(InvalidSpecError):
        RealSpec.algebraic([2, 0, -3, 1], -10, 10)    # several roots inside
    with pytest.raises(InvalidSpecError):
        RealSpec.continued_fraction(1, [1, 0, 2])     # quotient < 1
    with pytest.raises(InvalidSpecError):
        RealSpec.from_json({"kind": "nope"})


def test_spec_json_roundtrip():
    for name in ("2^(1/4)", "golden", "sqrt2"):
        spec = builtin_spec(name)
        again = RealSpec.from_json(json.dumps(spec.to_json()))
        assert again == spec
    inline = RealSpec.from_json('{"kind":"algebraic","poly":[-2,0,0,0,1],'
                                '"interval":["1","2"],"label":"2^(1/4)"}')
    assert inline.poly == (-2, 0, 0, 0, 1)
    assert inline.interval == (Fraction(1), Fraction(2))
    cf = RealSpec.from_json('{"kind":"cf","a0":1,"quotients":[1,1,1],'
                            '"periodic":true,"label":"golden"}')
    assert cf.periodic and cf.quotients == (1, 1, 1)


def test_periodic_cf_quadratic_is_certified():
    rcx = RealContext(builtin_spec("golden"))
    assert rcx.defining == [-1, -1, 1]
    assert rcx.poly_is_zero_at_xi([-1, -1, 1])
    assert not rcx.poly_is_zero_at_xi([-1, 0, 1])
    # sqrt(3) = [1; 1, 2, 1, 2, ...]
    rt3 = RealSpec.continued_fraction(1, [1, 2], periodic=True, label="sqrt3")
    rcx3 = RealContext(rt3)
    assert rcx3.poly_is_zero_at_xi([-3, 0, 1])
    enc = rcx3.enclosure(100)
    assert enc.lo.as_fraction() ** 2 < 3 < enc.hi.as_fraction() ** 2
