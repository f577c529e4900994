"""Exact representation of the base real number and certified evaluation.

A RealSpec pins down one real number xi exactly, either as the unique root
of an integer polynomial inside an isolating interval or as a (finite or
periodic) continued fraction.  A RealContext wraps a spec and hands out
certified dyadic enclosures of xi, xi^2, ..., answers sign/rounding
questions with automatic precision escalation, and decides exact equality
of linear forms a*xi^k - b.  Every decision is certified: either the
enclosures separate, or an exact algebraic zero test settles equality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .dyadic import Interval


class DiophlabError(Exception):
    pass


class InvalidSpecError(DiophlabError):
    """The spec violates a structural invariant."""


class EscalationError(DiophlabError):
    """Precision cap reached before a decision; carries the achieved width."""

    def __init__(self, message, achieved_width=None):
        super().__init__(message)
        self.achieved_width = achieved_width


class SuspectedRationalityError(DiophlabError):
    """A half-integer tie persisted: the input is (or behaves as) rational."""


@dataclass(frozen=True)
class PrecisionContext:
    """Escalation policy: start at initial_bits, multiply, stop at cap_bits."""

    initial_bits: int = 128
    growth: int = 2
    cap_bits: int = 2**20

    def __post_init__(self):
        if self.initial_bits < 64:
            raise InvalidSpecError("initial precision must be >= 64 bits")
        if self.growth < 2:
            raise InvalidSpecError("escalation factor must be >= 2")
        if self.cap_bits < self.initial_bits:
            raise InvalidSpecError("precision cap below initial precision")

    def ladder(self):
        bits = self.initial_bits
        while bits <= self.cap_bits:
            yield bits
            bits *= self.growth


@dataclass(frozen=True)
class RealSpec:
    """One exactly-specified real number."""

    kind: str  # "algebraic" | "cf"
    poly: tuple[int, ...] = ()          # constant-first, algebraic only
    interval: tuple[Fraction, Fraction] = ()  # isolating, algebraic only
    a0: int = 0                         # cf only
    quotients: tuple[int, ...] = ()     # cf only
    periodic: bool = False              # cf only
    label: str = ""

    # -- construction ---------------------------------------------------

    @staticmethod
    def algebraic(poly, lo, hi, label="") -> "RealSpec":
        p = tuple(polys.primitive(poly))
        spec = RealSpec(kind="algebraic", poly=p,
                        interval=(Fraction(lo), Fraction(hi)), label=label)
        spec.validate()
        return spec

    @staticmethod
    def continued_fraction(a0, quotients, periodic=False, label="") -> "RealSpec":
        spec = RealSpec(kind="cf", a0=int(a0),
                        quotients=tuple(int(q) for q in quotients),
                        periodic=bool(periodic), label=label)
        spec.validate()
        return spec

    def validate(self):
        if self.kind == "algebraic":
            if polys.degree(self.poly) < 1:
                raise InvalidSpecError("polynomial must have degree >= 1")
            if polys.content(self.poly) != 1:
                raise InvalidSpecError("polynomial must be content-normalized")
            lo, hi = self.interval
            if not lo < hi:
                raise InvalidSpecError("isolating interval must be nondegenerate")
            if polys.eval_fraction(self.poly, lo) * polys.eval_fraction(self.poly, hi) >= 0:
                raise InvalidSpecError("polynomial must change sign at the "
                                       "isolating interval endpoints")
            sf = polys.squarefree_part(self.poly)
            if _sturm_root_count(sf, lo, hi) != 1:
                raise InvalidSpecError("isolating interval must contain exactly "
                                       "one real root")
        elif self.kind == "cf":
            if any(q < 1 for q in self.quotients):
                raise InvalidSpecError("partial quotients after a0 must be >= 1")
            if self.periodic and not self.quotients:
                raise InvalidSpecError("periodic continued fraction needs a "
                                       "nonempty quotient block")
        else:
            raise InvalidSpecError(f"unknown spec kind {self.kind!r}")

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == "algebraic":
            return {"kind": "algebraic", "poly": list(self.poly),
                    "interval": [str(self.interval[0]), str(self.interval[1])],
                    "label": self.label}
        return {"kind": "cf", "a0": self.a0, "quotients": list(self.quotients),
                "periodic": self.periodic, "label": self.label}

    @staticmethod
    def from_json(obj) -> "RealSpec":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            kind = obj["kind"]
            if kind == "algebraic":
                lo, hi = (Fraction(str(v)) for v in obj["interval"])
                return RealSpec.algebraic([int(c) for c in obj["poly"]],
                                          lo, hi, obj.get("label", ""))
            if kind == "cf":
                return RealSpec.continued_fraction(obj["a0"], obj["quotients"],
                                                   obj.get("periodic", False),
                                                   obj.get("label", ""))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidSpecError(f"malformed spec: {exc}") from exc
        raise InvalidSpecError(f"unknown spec kind {obj.get('kind')!r}")


def _sturm_root_count(sf, lo: Fraction, hi: Fraction) -> int:
    """Number of real roots of a squarefree polynomial in (lo, hi]."""
    chain = [[Fraction(c) for c in sf], [Fraction(c) for c in polys.derivative(sf)]]
    while polys.degree(chain[-1]) > 0:
        _, r = polys._divmod_frac(chain[-2], chain[-1])
        if polys.is_zero(r):
            break
        chain.append([-c for c in r])

    def variations(x):
        signs = []
        for p in chain:
            v = polys.eval_fraction(p, x)
            if v != 0:
                signs.append(1 if v > 0 else -1)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return variations(lo) - variations(hi)


# ---------------------------------------------------------------------------
# linear forms |a*xi^k - b|
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Form:
    """Canonical representation of the value |coeff*xi^power - offset|."""

    power: int
    coeff: int
    offset: int

    @staticmethod
    def make(power: int, coeff: int, offset: int) -> "Form":
        if coeff == 0:
            return Form(0, 0, abs(offset))
        if coeff < 0:
            coeff, offset = -coeff, -offset
        return Form(power, coeff, offset)


def _difference_polys(f: Form, g: Form):
    """The two integer polynomials whose vanishing at xi makes |f| == |g|."""
    deg = max(f.power, g.power)
    diff = [0] * (deg + 1)
    summ = [0] * (deg + 1)
    diff[f.power] += f.coeff
    diff[g.power] -= g.coeff
    diff[0] += g.offset - f.offset
    summ[f.power] += f.coeff
    summ[g.power] += g.coeff
    summ[0] -= f.offset + g.offset
    return diff, summ


class RealContext:
    """Certified evaluation engine for one RealSpec."""

    def __init__(self, spec: RealSpec, ctx: PrecisionContext | None = None):
        spec.validate()
        self.spec = spec
        self.ctx = ctx or PrecisionContext()
        self._power_cache: dict[tuple[int, int], Interval] = {}
        self._base_cache: dict[int, Interval] = {}
        self.rational_value: Fraction | None = None
        self._convergents: list[tuple[int, int]] = []
        if spec.kind == "algebraic":
            self.defining = list(spec.poly)
            self.squarefree = polys.squarefree_part(spec.poly)
            self._lo, self._hi = spec.interval
        else:
            if spec.periodic:
                self.defining = self.squarefree = _periodic_cf_polynomial(spec)
                self._init_cf_isolation()
            else:
                self.rational_value = _finite_cf_value(spec)
                self.defining = self.squarefree = None

    def _init_cf_isolation(self):
        # find a convergent bracket holding exactly one root of the derived
        # quadratic (the conjugate root must be excluded before zero tests)
        k = 2
        while True:
            convs = self._cf_convergents(k + 1)
            (pa, qa), (pb, qb) = convs[-2], convs[-1]
            lo, hi = sorted((Fraction(pa, qa), Fraction(pb, qb)))
            if (polys.eval_fraction(self.squarefree, lo)
                    * polys.eval_fraction(self.squarefree, hi) < 0
                    and _sturm_root_count(self.squarefree, lo, hi) == 1):
                self._lo, self._hi = lo, hi
                return
            k += 1
            if k > 10_000:
                raise InvalidSpecError("periodic continued fraction did not "
                                       "isolate its value")

    # -- base enclosure ---------------------------------------------------

    def enclosure(self, bits: int) -> Interval:
        """Enclosure of xi with width <= 2**-bits (point if xi is rational)."""
        if self.rational_value is not None:
            return Interval.from_fractions(self.rational_value,
                                           self.rational_value, bits + 2)
        cached = self._base_cache.get(bits)
        if cached is not None:
            return cached
        if self.spec.kind == "algebraic":
            lo, hi = self._bisect_to(Fraction(1, 1 << (bits + 2)))
        else:
            lo, hi = self._cf_bracket(Fraction(1, 1 << (bits + 2)))
        out = Interval.from_fractions(lo, hi, bits + 2)
        self._base_cache[bits] = out
        return out

    def _bisect_to(self, target: Fraction):
        lo, hi = self._lo, self._hi
        sf = self.squarefree
        slo = polys.eval_fraction(sf, lo)
        while hi - lo > target:
            mid = (lo + hi) / 2
            smid = polys.eval_fraction(sf, mid)
            if smid == 0:
                # xi is exactly this (dyadic-denominator) rational
                self.rational_value = mid
                return mid, mid
            if (slo > 0) != (smid > 0):
                hi = mid
            else:
                lo, slo = mid, smid
        self._lo, self._hi = lo, hi  # refinement is monotone: never restart
        return lo, hi

    def _cf_terms(self, k: int) -> list[int]:
        spec = self.spec
        if not spec.periodic:
            qs = list(spec.quotients[:k])
        else:
            qs = [spec.quotients[i % len(spec.quotients)] for i in range(k)]
        return qs

    def _cf_convergents(self, count: int):
        while len(self._convergents) < count:
            k = len(self._convergents)
            terms = [self.spec.a0] + self._cf_terms(k)
            p0, q0, p1, q1 = 1, 0, terms[0], 1
            for a in terms[1:]:
                p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
            self._convergents.append((p1, q1))
        return self._convergents[:count]

    def _cf_bracket(self, target: Fraction):
        k = 2
        while True:
            convs = self._cf_convergents(k + 1)
            (pa, qa), (pb, qb) = convs[-2], convs[-1]
            lo, hi = sorted((Fraction(pa, qa), Fraction(pb, qb)))
            if hi - lo <= target:
                return lo, hi
            k += 1

    def abs_bound_log2(self) -> int:
        """Smallest t with |xi| < 2**t (coarse, cached)."""
        enc = self.enclosure(8)
        m = max(abs(enc.lo.as_fraction()), abs(enc.hi.as_fraction()))
        t = 0
        while (1 << t) <= m:
            t += 1
        return max(t, 1)

    # -- powers -------------------------------------------------------------

    def power(self, i: int, bits: int) -> Interval:
        """Enclosure of xi**i with width <= 2**-bits."""
        if i == 0:
            return Interval.from_int(1)
        key = (i, bits)
        cached = self._power_cache.get(key)
        if cached is not None:
            return cached
        t = self.abs_bound_log2()
        base_bits = bits + 2 + i.bit_length() + t * max(i - 1, 0)
        enc = self.enclosure(base_bits)
        out = enc.pow_int(i).round_out(bits + 1)
        self._power_cache[key] = out
        return out

    def powers(self, n: int, bits: int) -> list[Interval]:
        return [self.power(i, bits) for i in range(1, n + 1)]

    # -- exact zero test ------------------------------------------------------

    def poly_is_zero_at_xi(self, coeffs) -> bool:
        """Exact decision of Q(xi) == 0 for an integer polynomial Q."""
        if polys.is_zero(coeffs):
            return True
        if self.rational_value is not None:
            return polys.eval_fraction(coeffs, self.rational_value) == 0
        g = polys.gcd_primitive(self.squarefree, coeffs)
        if polys.degree(g) <= 0:
            return False
        # g divides both the defining squarefree polynomial and Q, so Q(xi)=0
        # exactly when g has a root inside the (refining) isolating bracket.
        for bits in self.ctx.ladder():
            enc = self.enclosure(bits)
            if polys.eval_interval(g, enc).sign() != 0:
                return False
            if self.rational_value is not None:
                return polys.eval_fraction(coeffs, self.rational_value) == 0
            lo, hi = self._lo, self._hi
            glo = polys.eval_fraction(g, lo)
            ghi = polys.eval_fraction(g, hi)
            if glo * ghi < 0:
                return True
        raise EscalationError("zero test did not terminate within the "
                              "precision cap")

    # -- forms ------------------------------------------------------------------

    def form_interval(self, f: Form, bits: int) -> Interval:
        if f.coeff == 0:
            return Interval.from_int(abs(f.offset))
        extra = f.coeff.bit_length() + 1
        enc = self.power(f.power, bits + extra)
        return enc.scale_int(f.coeff).shift_int(-f.offset).abs_()

    def forms_equal(self, f: Form, g: Form) -> bool:
        if f == g:
            return True
        diff, summ = _difference_polys(f, g)
        return self.poly_is_zero_at_xi(diff) or self.poly_is_zero_at_xi(summ)

    def compare_forms(self, f: Form, g: Form) -> int:
        """Certified sign of |f| - |g| (0 means exactly equal)."""
        if f == g:
            return 0
        checked_equal = False
        width = None
        for bits in self.ctx.ladder():
            fi = self.form_interval(f, bits)
            gi = self.form_interval(g, bits)
            if fi.strictly_below(gi):
                return -1
            if gi.strictly_below(fi):
                return 1
            if not checked_equal:
                if self.forms_equal(f, g):
                    return 0
                checked_equal = True
            width = (fi - gi).width()
        raise EscalationError("could not separate two form values",
                              achieved_width=width)

    def max_form(self, forms) -> Form:
        """A form realizing max value among `forms` (certified)."""
        uniq = []
        for f in forms:
            if f not in uniq:
                uniq.append(f)
        best = uniq[0]
        for f in uniq[1:]:
            if self.compare_forms(f, best) > 0:
                best = f
        return best

    def vector_forms(self, coords) -> list[Form]:
        x0 = coords[0]
        return [Form.make(i, x0, coords[i]) for i in range(1, len(coords))]

    def l_interval(self, coords, bits: int) -> Interval:
        out = None
        for f in self.vector_forms(coords):
            fi = self.form_interval(f, bits)
            out = fi if out is None else out.max_with(fi)
        return out

    def compare_l(self, xcoords, ycoords) -> int:
        fx = self.max_form(self.vector_forms(xcoords))
        fy = self.max_form(self.vector_forms(ycoords))
        return self.compare_forms(fx, fy)

    # -- rounding to nearest integer -------------------------------------------

    def nearest_int(self, x0: int, i: int) -> int:
        """The integer nearest to x0*xi^i, certified against half-integer ties."""
        if x0 < 1:
            raise ValueError("x0 must be a positive integer")
        checked_tie = False
        for bits in self.ctx.ladder():
            extra = x0.bit_length() + 1
            v = self.power(i, bits + extra).scale_int(x0)
            mid = v.mid().as_fraction()
            m = (mid + Fraction(1, 2)).__floor__()
            lo_gate = Fraction(2 * m - 1, 2)
            hi_gate = Fraction(2 * m + 1, 2)
            if lo_gate < v.lo.as_fraction() and v.hi.as_fraction() < hi_gate:
                return m
            if not checked_tie:
                # is x0*xi^i exactly a half-integer?  2*x0*xi^i - odd == 0
                for odd in (2 * m - 1, 2 * m + 1):
                    q = [0] * (i + 1)
                    q[i] = 2 * x0
                    q[0] -= odd
                    if self.poly_is_zero_at_xi(q):
                        raise SuspectedRationalityError(
                            f"{x0}*xi^{i} is exactly the half-integer {odd}/2")
                checked_tie = True
        raise SuspectedRationalityError(
            f"could not exclude a half-integer tie for {x0}*xi^{i} within the "
            "precision cap")


# ---------------------------------------------------------------------------
# continued-fraction helpers
# ---------------------------------------------------------------------------

def _finite_cf_value(spec: RealSpec) -> Fraction:
    v = Fraction(0)
    for q in reversed(spec.quotients):
        v = 1 / (q + v)
    return spec.a0 + v


def _periodic_cf_polynomial(spec: RealSpec) -> list[int]:
    """Integer quadratic vanishing at a0 + 1/t, t the purely periodic tail."""
    a, b, c, d = 1, 0, 0, 1  # product of [[q,1],[1,0]] over one period
    for q in spec.quotients:
        a, b, c, d = a * q + b, a, c * q + d, c
    # t = (a t + b)/(c t + d)  ->  c t^2 + (d - a) t - b = 0, with t = 1/(xi-a0)
    A, B, C = c, d - a, -b
    a0 = spec.a0
    # substitute t = 1/(xi - a0) and clear (xi - a0)^2:
    # A + B(xi - a0) + C(xi - a0)^2 = 0
    out = [A + (-a0) * B + a0 * a0 * C, B - 2 * a0 * C, C]
    out = polys.primitive(out)
    if polys.degree(out) < 1:
        raise InvalidSpecError("degenerate periodic continued fraction")
    return out


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def evaluate_powers(spec: RealSpec, n: int, ctx: PrecisionContext | None = None,
                    bits: int | None = None) -> list[Interval]:
    """Certified enclosures of xi^1..xi^n, each of width <= 2**-bits."""
    if not 1 <= n <= 8:
        raise ValueError("n must be between 1 and 8")
    rcx = RealContext(spec, ctx)
    target = bits if bits is not None else rcx.ctx.initial_bits
    if target > rcx.ctx.cap_bits:
        achieved = rcx.power(n, rcx.ctx.cap_bits).width()
        raise EscalationError("requested width is below the precision cap",
                              achieved_width=achieved)
    return rcx.powers(n, target)


def nearest_integer_multiple(spec: RealSpec, x0: int, i: int,
                             ctx: PrecisionContext | None = None) -> int:
    return RealContext(spec, ctx).nearest_int(x0, i)


def degree_precheck(spec: RealSpec) -> dict:
    """Mechanical sanity checks for the degree-over-Q hypothesis.

    Reports whether the defining polynomial is squarefree, has no rational
    roots and has degree at least 4.  Full irreducibility is never
    certified here; reducible inputs that pass all three checks are the
    caller's risk and the report says so.
    """
    if spec.kind == "algebraic":
        poly = list(spec.poly)
    else:
        rcx = RealContext(spec)
        if rcx.rational_value is not None:
            v = rcx.rational_value
            poly = [-v.numerator, v.denominator]
        else:
            poly = rcx.defining
    deg = polys.degree(poly)
    squarefree = polys.degree(polys.gcd_primitive(poly, polys.derivative(poly))) <= 0
    no_rat_roots = not polys.rational_roots(poly)
    degree_ok = deg > 3
    return {
        "degree_claim": deg,
        "checks": {
            "squarefree": squarefree,
            "no_rational_roots": no_rat_roots,
            "degree_gt_3": degree_ok,
        },
        "checks_passed": squarefree and no_rat_roots and degree_ok,
        "irreducibility_certified": False,
    }


# specs used throughout the test and report suites
BUILTIN_SPECS = {
    "2^(1/4)": lambda: RealSpec.algebraic([-2, 0, 0, 0, 1], 1, 2, "2^(1/4)"),
    "3^(1/4)": lambda: RealSpec.algebraic([-3, 0, 0, 0, 1], 1, 2, "3^(1/4)"),
    "x^4-x-1": lambda: RealSpec.algebraic([-1, -1, 0, 0, 1], 1, 2, "x^4-x-1"),
    "sqrt2": lambda: RealSpec.algebraic([-2, 0, 1], 1, 2, "sqrt2"),
    "golden": lambda: RealSpec.continued_fraction(1, [1], periodic=True,
                                                  label="golden"),
}


def builtin_spec(name: str) -> RealSpec:
    try:
        return BUILTIN_SPECS[name]()
    except KeyError:
        raise InvalidSpecError(f"unknown builtin spec {name!r}") from None
