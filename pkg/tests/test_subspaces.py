import random
from fractions import Fraction
from itertools import combinations

import pytest

from diophlab.subspaces import (RationalSubspace, det_bareiss, height,
                                height_product_ratio, hnf, hodge_star,
                                integer_kernel, intersect,
                                orthogonal_complement, plucker_residuals,
                                random_subspace, random_unimodular, saturate,
                                sign_normalize, subspace_sum, wedge)


# -- saturation ---------------------------------------------------------------

def test_saturate_divides_content():
    assert saturate([(2, 4)], 2).basis == ((1, 2),)


def test_saturate_keeps_saturated_basis():
    assert saturate([(1, 0, 0), (0, 1, 0)], 3).basis == ((1, 0, 0), (0, 1, 0))


def test_saturate_finds_hidden_integer_points():
    # (1,0,0) = ((1,1,0)+(1,-1,0))/2 lies in the rational span and in Z^3
    sub = saturate([(1, 1, 0), (1, -1, 0)], 3)
    assert sub.basis == ((1, 0, 0), (0, 1, 0))
    assert sub.contains_vector((1, 0, 0))


def test_saturation_idempotent():
    rng = random.Random(0)
    for _ in range(100):
        n = rng.randint(1, 5)
        vecs = [[rng.randint(-9, 9) for _ in range(n)]
                for _ in range(rng.randint(1, n))]
        once = saturate(vecs, n)
        twice = saturate(once.basis, n)
        assert once == twice


# -- wedge / Grassmann --------------------------------------------------------

def test_wedge_examples():
    assert wedge([(1, 0, 0), (0, 1, 0)], 3) == (1, 0, 0)
    assert wedge([(1, 2), (3, 4)], 2) == (-2,)
    assert wedge([(1, 0, -1), (0, 1, 2)], 3) == (1, 2, 1)


def _fraction_minor(basis, cols):
    # independent oracle: Laplace expansion over exact rationals
    rows = [[Fraction(basis[r][c]) for c in cols] for r in range(len(basis))]

    def laplace(m):
        if len(m) == 1:
            return m[0][0]
        total = Fraction(0)
        for j in range(len(m)):
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * laplace(minor)
        return total

    return laplace(rows)


def test_wedge_matches_minor_enumeration_oracle():
    rng = random.Random(1)
    for _ in range(150):
        n = rng.randint(1, 5)
        p = rng.randint(1, n)
        basis = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(p)]
        got = wedge(basis, n)
        expect = tuple(int(_fraction_minor(basis, cols))
                       for cols in combinations(range(n), p))
        assert got == expect


def test_plucker_relations_on_decomposables():
    rng = random.Random(2)
    for _ in range(150):
        n = rng.randint(2, 5)
        p = rng.randint(1, n)
        sub = random_subspace(rng, n, p)
        assert all(r == 0 for r in plucker_residuals(sub.grassmann_raw, n, p))


def test_plucker_relation_detects_non_decomposable():
    # (1,0,0,0,0,1) in wedge^2(R^4): g01*g23 - g02*g13 + g03*g12 = 1 != 0
    assert any(plucker_residuals((1, 0, 0, 0, 0, 1), 4, 2))


# -- heights -----------------------------------------------------------------

def test_height_of_zero_subspace_is_one():
    assert RationalSubspace.zero(3).height_sup == 1
    assert RationalSubspace.zero(3).height_euclid_sq == 1


def test_height_of_full_space_is_one():
    assert RationalSubspace.full(4).height_sup == 1


def test_height_examples():
    line = saturate([(1, 2, 3)], 3)
    assert height(line, "sup") == 3
    plane = RationalSubspace(3, integer_kernel([(1, 2, 3)], 3))
    assert height(plane, "sup") == 3
    assert orthogonal_complement(line) == plane


def test_wedge_of_saturated_basis_is_primitive():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(1, 5)
        sub = random_subspace(rng, n, rng.randint(1, n))
        assert sub.wedge_content == 1


def test_duality_exact_both_norms():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 5)
        p = rng.randint(0, n)
        sub = (random_subspace(rng, n, p) if p else RationalSubspace.zero(n))
        comp = sub.complement()
        assert sub.height_sup == comp.height_sup
        assert sub.height_euclid_sq == comp.height_euclid_sq
        assert comp.complement() == sub


def test_dual_grassmann_is_signed_permutation():
    rng = random.Random(5)
    for _ in range(150):
        n = rng.randint(2, 5)
        p = rng.randint(1, n - 1)
        sub = random_subspace(rng, n, p)
        comp = sub.complement()
        star = hodge_star(sub.grassmann_raw, n, p)
        assert sign_normalize(star) == sign_normalize(comp.grassmann_raw)


# -- sum / intersection --------------------------------------------------------

def test_sum_intersect_examples():
    e = [tuple(1 if j == i else 0 for j in range(3)) for i in range(3)]
    s = saturate([e[0], e[1]], 3)
    t = saturate([e[1], e[2]], 3)
    assert subspace_sum(s, t).dim == 3
    assert intersect(s, t).basis == ((0, 1, 0),)
    assert subspace_sum(s, s) == s and intersect(s, s) == s

    a = saturate([(1, 1, 0, 0), (0, 0, 1, 1)], 4)
    b = saturate([(1, -1, 0, 0), (0, 0, 1, -1)], 4)
    assert intersect(a, b).dim == 0
    assert subspace_sum(a, b).dim == 4


def test_dimension_formula_random():
    rng = random.Random(6)
    for _ in range(300):
        n = rng.randint(2, 5)
        s = random_subspace(rng, n, rng.randint(1, n))
        t = random_subspace(rng, n, rng.randint(1, n))
        assert s.dim + t.dim == subspace_sum(s, t).dim + intersect(s, t).dim


def test_sum_intersect_algebra_laws():
    rng = random.Random(17)
    for _ in range(100):
        n = rng.randint(2, 5)
        s = random_subspace(rng, n, rng.randint(1, n))
        t = random_subspace(rng, n, rng.randint(1, n))
        u = random_subspace(rng, n, rng.randint(1, n))
        assert subspace_sum(s, t) == subspace_sum(t, s)
        assert intersect(s, t) == intersect(t, s)
        assert subspace_sum(subspace_sum(s, t), u) == subspace_sum(
            s, subspace_sum(t, u))
        assert intersect(intersect(s, t), u) == intersect(s, intersect(t, u))
        # complement swaps sums and intersections
        assert subspace_sum(s, t).complement() == intersect(
            s.complement(), t.complement())


def test_height_product_ratio_examples():
    e = [tuple(1 if j == i else 0 for j in range(3)) for i in range(3)]
    s = saturate([e[0], e[1]], 3)
    t = saturate([e[1], e[2]], 3)
    ratio, _ = height_product_ratio(s, t, "sup")
    assert ratio == 1
    ratio, _ = height_product_ratio(s, s, "sup")
    assert ratio == 1


def test_euclid_ratio_never_exceeds_one():
    # lines and planes in R^4; the squared ratio comparison is exact
    rng = random.Random(7)
    for _ in range(2000):
        s = random_subspace(rng, 4, rng.choice((1, 2)))
        t = random_subspace(rng, 4, rng.choice((1, 2, 3)))
        ratio_sq, _ = height_product_ratio(s, t, "euclid")
        assert ratio_sq <= 1


def test_height_basis_independent_under_unimodular_transforms():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(2, 5)
        p = rng.randint(1, n)
        sub = random_subspace(rng, n, p)
        for _ in range(100):
            u = random_unimodular(rng, p)
            newb = [[sum(u[i][k] * sub.basis[k][j] for k in range(p))
                     for j in range(n)] for i in range(p)]
            other = RationalSubspace(n, newb)
            assert other.height_sup == sub.height_sup
            assert other.height_euclid_sq == sub.height_euclid_sq
            assert other.grassmann == sub.grassmann


# -- misc ----------------------------------------------------------------------

def test_det_bareiss_matches_fraction_oracle():
    rng = random.Random(9)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert det_bareiss(m) == int(_fraction_minor(m, tuple(range(n))))


def test_dependent_rows_rejected():
    with pytest.raises(ValueError):
        RationalSubspace(3, ((1, 2, 3), (2, 4, 6)))


def test_hnf_is_canonical():
    h = hnf([(2, 4, 6), (1, 1, 1)], 3)
    assert h == ((1, 1, 1), (0, 2, 4))
    # pivots positive, entries above pivots reduced
    assert all(row[next(i for i, v in enumerate(row) if v)] > 0 for row in h)


def test_subspace_json():
    doc = saturate([(1, 2, 3)], 3).to_json()
    assert doc["n"] == 3 and doc["p"] == 1
    assert doc["H_sup"] == "3"
    assert doc["grassmann"] == ["1", "2", "3"]
