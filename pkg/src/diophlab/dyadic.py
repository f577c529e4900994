"""Exact dyadic rationals and closed-interval arithmetic.

All certified numerics in this package bottom out here: a Dyadic is an
exact value m * 2**e on Python integers, an Interval is a closed interval
with Dyadic endpoints.  Addition, subtraction and multiplication are exact
(dyadics are closed under them); division, square roots and decimal output
are directed-rounded to a requested number of bits so every Interval that
leaves this module contains the true real value it stands for.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _normalize(m: int, e: int) -> tuple[int, int]:
    if m == 0:
        return 0, 0
    # strip factors of two from the mantissa
    t = (m & -m).bit_length() - 1
    if t:
        m >>= t
        e += t
    return m, e


class Dyadic:
    """Exact m * 2**e with odd (or zero) mantissa."""

    __slots__ = ("m", "e")

    def __init__(self, m: int, e: int = 0):
        self.m, self.e = _normalize(m, e)

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_fraction(fr: Fraction, bits: int, round_up: bool) -> "Dyadic":
        """Round an exact rational onto the 2**-bits grid in one direction."""
        n, d = fr.numerator, fr.denominator
        scaled = n << bits
        q, r = divmod(scaled, d)
        if r and round_up:
            q += 1
        return Dyadic(q, -bits)

    # -- conversions ---------------------------------------------------

    def as_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << -self.e)

    def __float__(self) -> float:
        try:
            return math.ldexp(self.m, self.e)
        except OverflowError:
            return math.inf if self.m > 0 else -math.inf

    def decimal(self, digits: int, round_up: bool) -> str:
        """Directed decimal string with `digits` places after the point."""
        n, d = self.as_fraction().numerator, self.as_fraction().denominator
        scaled = n * 10**digits
        q, r = divmod(scaled, d)
        if r and round_up:
            q += 1
        sign = "-" if q < 0 else ""
        q = abs(q)
        s = str(q).rjust(digits + 1, "0")
        return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"

    # -- arithmetic (exact) ---------------------------------------------

    def __neg__(self):
        return Dyadic(-self.m, self.e)

    def __abs__(self):
        return Dyadic(abs(self.m), self.e)

    def __add__(self, other: "Dyadic"):
        a, b = self, other
        if a.e >= b.e:
            return Dyadic((a.m << (a.e - b.e)) + b.m, b.e)
        return Dyadic(a.m + (b.m << (b.e - a.e)), a.e)

    def __sub__(self, other: "Dyadic"):
        return self + (-other)

    def __mul__(self, other: "Dyadic"):
        return Dyadic(self.m * other.m, self.e + other.e)

    def mul_int(self, k: int):
        return Dyadic(self.m * k, self.e)

    # -- comparisons (exact) --------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        a, b = self, other
        if a.e >= b.e:
            lhs, rhs = a.m << (a.e - b.e), b.m
        else:
            lhs, rhs = a.m, b.m << (b.e - a.e)
        return (lhs > rhs) - (lhs < rhs)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        return isinstance(other, Dyadic) and self.m == other.m and self.e == other.e

    def __hash__(self):
        return hash((self.m, self.e))

    # -- directed rounding ----------------------------------------------

    def round_dir(self, bits: int, round_up: bool) -> "Dyadic":
        """Round onto the 2**-bits grid; never moves toward the value."""
        if self.e >= -bits:
            return self
        shift = -bits - self.e
        q, r = divmod(self.m, 1 << shift)  # floor semantics
        if r and round_up:
            q += 1
        return Dyadic(q, -bits)

    def __repr__(self):
        return f"Dyadic({self.m}, {self.e})"


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, -1)


def sqrt_interval_fraction(fr: Fraction, bits: int) -> "Interval":
    """Certified enclosure of sqrt(fr) (fr >= 0) with width <= 2**(1-bits)."""
    if fr < 0:
        raise ValueError("negative radicand")
    n, d = fr.numerator, fr.denominator
    # sqrt(n/d) = sqrt(n*d)/d; scale so the isqrt carries `bits` fractional bits
    scaled = n * d << (2 * bits)
    root = math.isqrt(scaled)  # floor: root <= sqrt(n*d)*2**bits < root+1
    lo_fr = Fraction(root, d << bits)
    hi_fr = Fraction(root + 1, d << bits)
    return Interval(Dyadic.from_fraction(lo_fr, bits, False),
                    Dyadic.from_fraction(hi_fr, bits, True))


class Interval:
    """Closed interval [lo, hi] with exact dyadic endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if lo > hi:
            raise ValueError("empty interval")
        self.lo, self.hi = lo, hi

    @staticmethod
    def point(v: Dyadic) -> "Interval":
        return Interval(v, v)

    @staticmethod
    def from_int(k: int) -> "Interval":
        d = Dyadic(k)
        return Interval(d, d)

    @staticmethod
    def from_fractions(lo: Fraction, hi: Fraction, bits: int) -> "Interval":
        return Interval(Dyadic.from_fraction(lo, bits, False),
                        Dyadic.from_fraction(hi, bits, True))

    # -- queries ---------------------------------------------------------

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def mid(self) -> Dyadic:
        return Dyadic(self.lo.m, self.lo.e - 1) + Dyadic(self.hi.m, self.hi.e - 1)

    def mid_float(self) -> float:
        return float(self.mid())

    def contains_fraction(self, fr: Fraction) -> bool:
        return self.lo.as_fraction() <= fr <= self.hi.as_fraction()

    def contains_zero(self) -> bool:
        return self.lo.m <= 0 <= self.hi.m

    def sign(self) -> int:
        """-1 / +1 when certified, 0 when the interval straddles zero."""
        if self.hi.m < 0:
            return -1
        if self.lo.m > 0:
            return 1
        return 0

    def strictly_below(self, other: "Interval") -> bool:
        return self.hi < other.lo

    def is_subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    # -- arithmetic (outward exact) ---------------------------------------

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __add__(self, other: "Interval"):
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "Interval"):
        return Interval(self.lo - other.hi, self.hi - other.lo)

    def __mul__(self, other: "Interval"):
        cands = (self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi)
        return Interval(min(cands), max(cands))

    def scale_int(self, k: int):
        if k >= 0:
            return Interval(self.lo.mul_int(k), self.hi.mul_int(k))
        return Interval(self.hi.mul_int(k), self.lo.mul_int(k))

    def shift_int(self, k: int):
        d = Dyadic(k)
        return Interval(self.lo + d, self.hi + d)

    def abs_(self):
        if self.lo.m >= 0:
            return self
        if self.hi.m <= 0:
            return -self
        return Interval(ZERO, max(-self.lo, self.hi))

    def max_with(self, other: "Interval"):
        return Interval(max(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "Interval"):
        return Interval(max(self.lo, other.lo), min(self.hi, other.hi))

    def pow_int(self, k: int):
        out = Interval.from_int(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def round_out(self, bits: int):
        return Interval(self.lo.round_dir(bits, False),
                        self.hi.round_dir(bits, True))

    def invert(self, bits: int) -> "Interval":
        """Enclosure of 1/x; requires a sign-definite interval."""
        if self.contains_zero():
            raise ZeroDivisionError("interval straddles zero")
        lo = Dyadic.from_fraction(1 / self.hi.as_fraction(), bits, False)
        hi = Dyadic.from_fraction(1 / self.lo.as_fraction(), bits, True)
        return Interval(lo, hi)

    def sqrt(self, bits: int) -> "Interval":
        lo = sqrt_interval_fraction(self.lo.as_fraction(), bits).lo
        hi = sqrt_interval_fraction(self.hi.as_fraction(), bits).hi
        return Interval(lo, hi)

    # -- presentation -----------------------------------------------------

    def decimal_bounds(self, digits: int) -> tuple[str, str]:
        return (self.lo.decimal(digits, False), self.hi.decimal(digits, True))

    def decimal_str(self, digits: int) -> str:
        """Midpoint decimal, only printed when the width supports the digits."""
        return self.mid().decimal(digits, False)

    def __repr__(self):
        return f"Interval({float(self.lo)!r}, {float(self.hi)!r})"
