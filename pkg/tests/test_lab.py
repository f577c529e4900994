import math
import random

import pytest

from diophlab import approx, lab
from diophlab.lab import (LEMMA_IDS, build_lab_run, c_specialization_residual,
                          compute_C, det_identity_residual, identity_suite,
                          run_exact_suite, theorem_gate, verify_lemma_ratios,
                          verify_pointy)
from diophlab.realspec import builtin_spec


# -- the integer pair C(x, y) -------------------------------------------------

def test_C_vanishes_on_the_diagonal():
    rng = random.Random(0)
    for _ in range(200):
        x = tuple(rng.randint(-100, 100) for _ in range(4))
        assert compute_C(x, x) == (0, 0)


def test_C_example_pair():
    assert compute_C((1, 2, 3, 4), (0, 1, 0, 1)) == (2, -2)
    assert compute_C((1, 2, 3, 4), (0, 2, 0, 2)) == (4, -4)  # linear in y


def test_C_bilinearity_random():
    rng = random.Random(1)
    for _ in range(200):
        x = tuple(rng.randint(-50, 50) for _ in range(4))
        y = tuple(rng.randint(-50, 50) for _ in range(4))
        z = tuple(rng.randint(-50, 50) for _ in range(4))
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        ayz = tuple(a * u + b * v for u, v in zip(y, z))
        cy, cz = compute_C(x, y), compute_C(x, z)
        assert compute_C(x, ayz) == (a * cy[0] + b * cz[0],
                                     a * cy[1] + b * cz[1])


# -- determinant identity -------------------------------------------------------

def test_det_identity_repeated_row():
    w = (3, -1, 4)
    assert det_identity_residual(w, w, (1, 5, 9), (2, 6, 5)) == (0, 0, 0)


def test_det_identity_basis_case():
    assert det_identity_residual((1, 0, 0), (0, 1, 0), (0, 0, 1),
                                 (1, 1, 1)) == (0, 0, 0)


def test_det_identity_random_batch():
    rng = random.Random(2)
    for _ in range(2000):
        w, x, y, z = (tuple(rng.randint(-100, 100) for _ in range(3))
                      for _ in range(4))
        assert det_identity_residual(w, x, y, z) == (0, 0, 0)


def test_specialization_residual_zero():
    rng = random.Random(3)
    for _ in range(300):
        x = tuple(rng.randint(-60, 60) for _ in range(4))
        y = tuple(rng.randint(-60, 60) for _ in range(4))
        assert c_specialization_residual(x, y) == (0, 0, 0)


# -- transfer bounds ---------------------------------------------------------

def test_pointy_degenerate_branch_exact(quartic_rcx):
    rep = verify_pointy((1, 2), (1, 2, 4, 8), quartic_rcx)
    assert rep["y_is_zero"] and rep["both_primitive"]
    assert rep["norm_identity_exact"]
    rep = verify_pointy((1, 1), (1, 2, 4, 8), quartic_rcx)
    assert not rep["y_is_zero"]
    assert rep["y"] == (-1, -2, -4)


def test_pointy_fitted_c2_stays_below_coarse_bound(quartic_rcx):
    rng = random.Random(4)
    bound = 3 * 2 ** 0.25
    worst = 0.0
    for _ in range(150):
        c = (rng.randint(-30, 30), rng.randint(-30, 30))
        if not any(c) or math.gcd(abs(c[0]), abs(c[1])) != 1:
            continue
        x = tuple(rng.randint(-200, 200) for _ in range(4))
        if not any(x):
            continue
        rep = verify_pointy(c, x, quartic_rcx)
        if not rep["y_is_zero"]:
            worst = max(worst, rep.get("c2_from_norm", 0.0),
                        rep.get("c2_from_l", 0.0))
    assert 0 < worst <= bound


def test_pointy_geometric_progressions_all_n(quartic_rcx):
    rng = random.Random(5)
    for _ in range(100):
        a, b = rng.randint(1, 20), rng.randint(1, 20)
        if math.gcd(a, b) != 1:
            continue
        for n in (1, 2, 3):
            x = tuple(a ** (n - k) * b ** k for k in range(n + 1))
            rep = verify_pointy((a, b), x, quartic_rcx)
            assert rep["y_is_zero"] and rep["norm_identity_exact"]


# -- run structure ------------------------------------------------------------

def test_structure_wrappers(seq_1e4, run_1e4):
    from diophlab.lab import build_V, build_W, index_sets, verify_det_identity
    W, basis_ok = build_W(seq_1e4)
    assert set(W) == set(run_1e4.W) and all(basis_ok.values())
    i0, V, deps = build_V(seq_1e4)
    assert i0 == run_1e4.i0 and set(V) == set(run_1e4.V)
    I, J, complement = index_sets(run_1e4)
    assert set(J) <= set(I)
    assert set(J).isdisjoint(complement)
    assert sorted(J + complement) == I[:-1]
    assert verify_det_identity((1, 0, 0), (0, 1, 0), (0, 0, 1),
                               (1, 1, 1)) == (0, 0, 0)


def test_lab_run_structure(run_1e4):
    assert run_1e4.i0 is not None
    assert all(run_1e4.W[i].dim == 2 for i in run_1e4.W)
    assert all(run_1e4.Wsum[i].dim == 3 for i in run_1e4.I)
    assert set(run_1e4.J) <= set(run_1e4.I)
    assert all(run_1e4.W_basis_exact.values())


def test_geometric_progression_has_dependent_truncations():
    # x = (a^3, a^2 b, a b^2, b^3) has proportional truncations
    x = (8, 12, 18, 27)
    assert compute_C(x, x) == (0, 0)
    minors = (x[0] * x[2] - x[1] * x[1], x[0] * x[3] - x[1] * x[2],
              x[1] * x[3] - x[2] * x[2])
    assert not any(minors)


def test_independent_truncations_example():
    x = (1, 2, 3, 4)
    assert 1 * 3 - 2 * 2 != 0  # leading 2x2 minor of (x-, x+)


def test_v_equality_matches_C_vanishing(run_1e4):
    run = run_1e4
    for i in range(run.i0, run.m + 1):
        for j in range(i + 1, run.m + 1):
            same = run.V[i] == run.V[j]
            assert same == (run.C(i, j) == (0, 0))
            assert same == (run.C(j, i) == (0, 0))


def test_I_membership_rank_characterization(run_1e4):
    from diophlab.subspaces import hnf
    run = run_1e4
    for i in range(2, run.m):
        rank3 = len(hnf((run.vec[i - 1], run.vec[i], run.vec[i + 1]), 4)) == 3
        assert rank3 == (i in run.I)


def test_exact_suite_green(run_1e4):
    checks = run_exact_suite(run_1e4)
    assert all(c["passed"] for c in checks), [c["name"] for c in checks
                                              if not c["passed"]]


def test_identity_suite_green():
    checks = identity_suite(random.Random(6), quadruples=500, c_pairs=100,
                            pointy_cases=100)
    assert all(c["passed"] for c in checks)


# -- reports -------------------------------------------------------------------

def test_all_reports_well_formed(run_1e4):
    for lid in LEMMA_IDS:
        rep = verify_lemma_ratios(run_1e4, lid)
        assert rep.lemma == lid
        assert rep.exact_ok(), rep.exact_checks
        for row in rep.rows:
            assert row["ratio"] >= 0
            assert math.isfinite(row["ratio"])
        if rep.rows:
            assert rep.max_ratio is not None and rep.max_ratio > 0
        else:
            assert rep.verdict == "no applicable index"
        doc = rep.to_json()
        assert doc["lemma"] == lid and "rows" in doc


def test_unknown_lemma_id(run_1e4):
    with pytest.raises(ValueError):
        verify_lemma_ratios(run_1e4, "nope")


def test_lemma_41_rows_cover_all_window_pairs(run_1e4):
    rep = verify_lemma_ratios(run_1e4, "4.1")
    w = run_1e4.window()
    pairs = {(i, j) for i in w for j in w if i < j}
    seen = {tuple(r["indices"]) for r in rep.rows}
    assert seen == pairs


def test_lemma_42_exact_proportionality(run_1e4):
    rep = verify_lemma_ratios(run_1e4, "4.2")
    for chk in rep.exact_checks:
        assert chk["passed"]


def test_prop52_vacuous_or_rows(run_1e4):
    rep = verify_lemma_ratios(run_1e4, "prop5.2")
    if not rep.rows:
        assert rep.verdict == "no applicable index"


def test_report_respects_lambda_override(run_1e4):
    low = verify_lemma_ratios(run_1e4, "3.3", lam=0.35)
    high = verify_lemma_ratios(run_1e4, "3.3", lam=0.45)
    assert low.params["lambda"] == 0.35
    assert high.params["lambda"] == 0.45
    if low.rows and high.rows:
        assert low.max_ratio != high.max_ratio


# -- the gate -------------------------------------------------------------------

def test_gate_on_quartic(seq_1e4, run_1e4):
    gate = theorem_gate(seq_1e4, run=run_1e4)
    assert gate["applicable"]
    assert gate["tail_ok"] and gate["c_norm_ok"]
    assert "no desk-scale observation contradicts" in gate["verdict"]
    for row in gate["c_norm_rows"]:
        assert row["norm_C"] >= 1


def test_gate_hypothesis_filter(sqrt2_spec):
    seq = approx.minimal_points(sqrt2_spec, 1, 2000)
    gate = theorem_gate(seq)
    assert not gate["applicable"]
    assert "not applicable" in gate["verdict"]
    est = approx.exponent_estimates(seq)
    tail = [r["uniform_hat"] for r in est["rows"] if r["X_next"] > 500]
    assert tail and min(tail) > 0.9  # the n = 1 exponent heads to 1


def test_lab_run_rejects_wrong_dimension(sqrt2_spec):
    seq = approx.minimal_points(sqrt2_spec, 1, 50)
    with pytest.raises(ValueError):
        build_lab_run(seq)
