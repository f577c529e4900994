"""Exact integer/rational linear algebra for subspaces of R^n over Q.

A subspace is stored through the canonical Hermite-normal-form basis of its
full lattice of integer points (saturation by a double integer kernel, no
rational matrices anywhere).  Grassmann coordinates are the p x p minors of
that basis in lexicographic column order; heights are norms of that wedge.
Subspace equality is therefore a bit-exact tuple comparison.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations


def _row_sub(m, u, i, j, q):
    if q:
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        if u is not None:
            u[i] = [a - q * b for a, b in zip(u[i], u[j])]


def hnf_with_transform(rows, ncols):
    """Row-style HNF with unimodular transform: U * rows == H (zero rows kept)."""
    m = [list(r) for r in rows]
    nr = len(m)
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    piv = 0
    for col in range(ncols):
        while True:
            nz = [i for i in range(piv, nr) if m[i][col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(m[i][col]))
            if best != piv:
                m[piv], m[best] = m[best], m[piv]
                u[piv], u[best] = u[best], u[piv]
            clean = True
            for i in range(piv + 1, nr):
                if m[i][col]:
                    _row_sub(m, u, i, piv, m[i][col] // m[piv][col])
                    if m[i][col]:
                        clean = False
            if clean:
                break
        if piv < nr and m[piv][col]:
            if m[piv][col] < 0:
                m[piv] = [-a for a in m[piv]]
                u[piv] = [-a for a in u[piv]]
            for i in range(piv):
                _row_sub(m, u, i, piv, m[i][col] // m[piv][col])
            piv += 1
    return m, u, piv


def hnf(rows, ncols):
    """Canonical basis rows (HNF, zero rows dropped)."""
    m, _, rank = hnf_with_transform(rows, ncols)
    return tuple(tuple(r) for r in m[:rank])


def integer_kernel(rows, ncols):
    """Saturated basis of {x in Z^ncols : rows . x = 0} (HNF canonical)."""
    rows = [list(r) for r in rows]
    if not rows:
        return tuple(tuple(1 if i == j else 0 for j in range(ncols))
                     for i in range(ncols))
    # columns of `rows` are the rows of the transposed system
    transposed = [[rows[r][c] for r in range(len(rows))] for c in range(ncols)]
    h, u, rank = hnf_with_transform(transposed, len(rows))
    kernel_rows = [tuple(u[i]) for i in range(len(transposed))
                   if not any(h[i])]
    return hnf(kernel_rows, ncols)


def saturate_basis(vectors, ncols):
    """Basis of all integer points of the rational span (kernel of kernel)."""
    k1 = integer_kernel(vectors, ncols)
    return integer_kernel(k1, ncols)


def det_bareiss(matrix) -> int:
    """Exact integer determinant (fraction-free elimination)."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def wedge(basis, n) -> tuple[int, ...]:
    """p x p minors of the basis rows, lexicographic column order."""
    basis = [list(r) for r in basis]
    p = len(basis)
    if p == 0:
        return (1,)
    return tuple(det_bareiss([[row[j] for j in cols] for row in basis])
                 for cols in combinations(range(n), p))


def _content(values) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, abs(v))
    return g


def sign_normalize(values) -> tuple[int, ...]:
    for v in values:
        if v:
            if v < 0:
                return tuple(-x for x in values)
            break
    return tuple(values)


class RationalSubspace:
    """Canonical saturated subspace of R^n defined over Q."""

    __slots__ = ("n", "basis", "grassmann_raw", "grassmann", "wedge_content",
                 "height_sup", "height_euclid_sq")

    def __init__(self, n: int, basis):
        self.n = n
        self.basis = tuple(tuple(int(c) for c in row) for row in basis)
        for row in self.basis:
            if len(row) != n:
                raise ValueError("basis row has wrong length")
        raw = wedge(self.basis, n)
        self.grassmann_raw = raw
        self.wedge_content = _content(raw) if any(raw) else 0
        if self.wedge_content == 0:
            raise ValueError("basis rows are linearly dependent")
        self.grassmann = sign_normalize(tuple(v // self.wedge_content
                                              for v in raw))
        self.height_sup = max(abs(v) for v in raw)
        self.height_euclid_sq = sum(v * v for v in raw)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_vectors(vectors, n: int) -> "RationalSubspace":
        return RationalSubspace(n, saturate_basis(list(vectors), n))

    @staticmethod
    def zero(n: int) -> "RationalSubspace":
        return RationalSubspace(n, ())

    @staticmethod
    def full(n: int) -> "RationalSubspace":
        return RationalSubspace(n, [[1 if i == j else 0 for j in range(n)]
                                    for i in range(n)])

    # -- structure --------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def height_euclid(self) -> float:
        return math.sqrt(self.height_euclid_sq)

    def height(self, norm: str = "sup"):
        if norm == "sup":
            return self.height_sup
        if norm == "euclid":
            return self.height_euclid
        raise ValueError("norm must be 'sup' or 'euclid'")

    def __eq__(self, other):
        return (isinstance(other, RationalSubspace)
                and self.n == other.n and self.basis == other.basis)

    def __hash__(self):
        return hash((self.n, self.basis))

    def __repr__(self):
        return f"RationalSubspace(n={self.n}, dim={self.dim})"

    # -- lattice operations --------------------------------------------------

    def sum_with(self, other: "RationalSubspace") -> "RationalSubspace":
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        return RationalSubspace.from_vectors(self.basis + other.basis, self.n)

    def intersect(self, other: "RationalSubspace") -> "RationalSubspace":
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        stacked = integer_kernel(self.basis, self.n) + integer_kernel(
            other.basis, other.n)
        return RationalSubspace(self.n, integer_kernel(stacked, self.n))

    def complement(self) -> "RationalSubspace":
        return RationalSubspace(self.n, integer_kernel(self.basis, self.n))

    def contains_vector(self, vec) -> bool:
        return hnf(self.basis + (tuple(vec),), self.n) == hnf(self.basis, self.n) \
            if self.basis else not any(vec)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.dim,
            "basis": [[str(c) for c in row] for row in self.basis],
            "grassmann": [str(v) for v in self.grassmann],
            "H_sup": str(self.height_sup),
            "H_euclid": self.height_euclid,
        }


# ---------------------------------------------------------------------------
# module-level operations mirroring the subspace contract
# ---------------------------------------------------------------------------

def saturate(vectors, n: int) -> RationalSubspace:
    return RationalSubspace.from_vectors(vectors, n)


def height(s: RationalSubspace, norm: str = "sup"):
    return s.height(norm)


def subspace_sum(s, t):
    return s.sum_with(t)


def intersect(s, t):
    return s.intersect(t)


def orthogonal_complement(s):
    return s.complement()


def height_product_ratio(s: RationalSubspace, t: RationalSubspace,
                         norm: str = "sup"):
    """H(S cap T) * H(S + T) / (H(S) * H(T)); exact Fraction for both norms
    (the euclid value is returned as the exact squared ratio alongside the
    float)."""
    inter = s.intersect(t)
    total = s.sum_with(t)
    if norm == "sup":
        ratio = Fraction(inter.height_sup * total.height_sup,
                         s.height_sup * t.height_sup)
        return ratio, float(ratio)
    ratio_sq = Fraction(inter.height_euclid_sq * total.height_euclid_sq,
                        s.height_euclid_sq * t.height_euclid_sq)
    return ratio_sq, math.sqrt(float(ratio_sq))


def hodge_star(entries, n: int, p: int) -> tuple[int, ...]:
    """Dual Grassmann vector: entry at the complement index with the
    permutation sign of (J, complement(J))."""
    subsets = list(combinations(range(n), p))
    comp_subsets = list(combinations(range(n), n - p))
    out = [0] * len(comp_subsets)
    for value, cols in zip(entries, subsets):
        comp = tuple(sorted(set(range(n)) - set(cols)))
        perm = list(cols) + list(comp)
        sign = _permutation_sign(perm)
        out[comp_subsets.index(comp)] = sign * value
    return tuple(out)


def _permutation_sign(perm) -> int:
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            sign = -sign
    return sign


def plucker_residuals(entries, n: int, p: int) -> list[int]:
    """Quadratic relation residuals; all zero iff decomposable-consistent."""
    if p in (0, 1, n - 1, n):
        return [0]
    idx = {cols: k for k, cols in enumerate(combinations(range(n), p))}

    def coeff(base, extra):
        if extra in base:
            return 0, None
        merged = tuple(sorted(base + (extra,)))
        sign = (-1) ** sum(1 for b in base if b > extra)
        return sign, merged

    out = []
    for a in combinations(range(n), p - 1):
        for b in combinations(range(n), p + 1):
            acc = 0
            for pos, x in enumerate(b):
                s1, left = coeff(a, x)
                if s1 == 0:
                    continue
                right = tuple(v for v in b if v != x)
                acc += ((-1) ** pos) * s1 * entries[idx[left]] * entries[idx[right]]
            out.append(acc)
    return out


def random_subspace(rng, n: int, p: int, coeff_bound: int = 9) -> RationalSubspace:
    while True:
        rows = [[rng.randint(-coeff_bound, coeff_bound) for _ in range(n)]
                for _ in range(p)]
        sub = RationalSubspace.from_vectors(rows, n)
        if sub.dim == p:
            return sub


def random_unimodular(rng, n: int, steps: int = 12):
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        q = rng.randint(-3, 3)
        m[i] = [a + q * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5 and n > 1:
        m[0], m[1] = m[1], m[0]
    return m
