"""Small exact-polynomial toolbox (coefficients constant-first).

Everything here works on plain lists of ints or Fractions; degrees stay
tiny (at most the degree of a defining polynomial), so no attempt is made
at asymptotically clever algorithms.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .dyadic import Interval


def trim(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


def degree(coeffs) -> int:
    c = trim(coeffs)
    return len(c) - 1 if c else -1


def is_zero(coeffs) -> bool:
    return not trim(coeffs)


def content(coeffs) -> int:
    g = 0
    for c in coeffs:
        g = gcd(g, abs(c))
    return g


def primitive(coeffs) -> list[int]:
    """Divide by the content; normalize the leading coefficient positive."""
    c = trim(coeffs)
    if not c:
        return []
    g = content(c)
    c = [x // g for x in c]
    if c[-1] < 0:
        c = [-x for x in c]
    return c


def eval_fraction(coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def eval_int(coeffs, x: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = acc * x + c
    return acc


def eval_interval(coeffs, x: Interval) -> Interval:
    acc = Interval.from_int(0)
    for c in reversed(list(coeffs)):
        acc = acc * x + Interval.from_int(c)
    return acc


def derivative(coeffs) -> list[int]:
    return [i * c for i, c in enumerate(coeffs)][1:]


def _frac(coeffs):
    return [Fraction(c) for c in coeffs]


def _divmod_frac(a, b):
    a = _frac(trim(a))
    b = _frac(trim(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = a[:]
    while len(r) >= len(b) and trim(r):
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            r[shift + i] -= f * bc
        r = trim(r)
    return q, r


def gcd_primitive(a, b) -> list[int]:
    """Primitive integer gcd of two integer polynomials (Euclid over Q)."""
    a, b = trim(a), trim(b)
    while b:
        _, r = _divmod_frac(a, b)
        a, b = b, r
    if not a:
        return []
    # clear denominators, then take the primitive part
    den = 1
    for c in a:
        den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
    return primitive([int(Fraction(c) * den) for c in a])


def squarefree_part(coeffs) -> list[int]:
    c = primitive(coeffs)
    if degree(c) <= 1:
        return c
    g = gcd_primitive(c, derivative(c))
    if degree(g) <= 0:
        return c
    q, r = _divmod_frac(c, g)
    assert is_zero(r)
    den = 1
    for x in q:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive([int(x * den) for x in q])


def rational_roots(coeffs) -> list[Fraction]:
    """All rational roots of an integer polynomial (finite search)."""
    c = primitive(coeffs)
    if not c:
        return []
    # strip x = 0 roots
    roots = []
    while c and c[0] == 0:
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
        c = c[1:]
    if degree(c) < 1:
        return roots
    a0, an = abs(c[0]), abs(c[-1])
    ps = [d for d in range(1, a0 + 1) if a0 % d == 0]
    qs = [d for d in range(1, an + 1) if an % d == 0]
    for p in ps:
        for q in qs:
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and eval_fraction(c, cand) == 0:
                    roots.append(cand)
    return sorted(roots)
