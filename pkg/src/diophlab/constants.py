"""The constant zoo: exponents, roots and their certified cross-identities.

Everything is produced as a dyadic interval whose width certifies every
printed digit.  The quartic root lambda2 comes from exact bisection; the
golden-ratio expressions go through integer square roots; only the power
in c1 = 2*max(1,|xi|)^(3*lambda) needs a transcendental step, delegated to
mpmath interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import polys
from .dyadic import Dyadic, Interval, sqrt_interval_fraction

#: P2, the quartic whose positive root gates the dependence argument
P2_COEFFS = (-1, 2, 2, -4, 3)

#: numerator / denominator of the three-index exponent alpha(lambda)
ALPHA_NUM = (1, -3, 1, 1, -1)
ALPHA_DEN = (0, 1, -1, 1)


def p2_value(lam: Fraction) -> Fraction:
    return polys.eval_fraction(P2_COEFFS, lam)


def alpha_fraction(lam: Fraction) -> Fraction:
    return (polys.eval_fraction(ALPHA_NUM, lam)
            / polys.eval_fraction(ALPHA_DEN, lam))


def theta_fraction(lam: Fraction) -> Fraction:
    return (1 - lam) / lam


def beta_fraction(lam: Fraction) -> Fraction:
    return (1 - lam) / (lam * lam - lam + 1)


def prop_identity_gap(lam: Fraction) -> Fraction:
    """Exact residual of the algebraic identity behind the lambda2 gate:
    (1 - 2*lam + alpha) + P2(lam)/(lam*(lam^2-lam+1)); identically zero."""
    lam = Fraction(lam)
    return (1 - 2 * lam + alpha_fraction(lam)
            + p2_value(lam) / polys.eval_fraction(ALPHA_DEN, lam))


def _half(iv: Interval) -> Interval:
    h = Interval.point(Dyadic(1, -1))
    return iv * h


def _bisect_root(coeffs, lo: Fraction, hi: Fraction, bits: int) -> Interval:
    flo = polys.eval_fraction(coeffs, lo)
    if flo == 0:
        return Interval.from_fractions(lo, lo, bits)
    target = Fraction(1, 1 << (bits + 2))
    while hi - lo > target:
        mid = (lo + hi) / 2
        fmid = polys.eval_fraction(coeffs, mid)
        if fmid == 0:
            return Interval.from_fractions(mid, mid, bits)
        if (flo > 0) != (fmid > 0):
            hi = mid
        else:
            lo, flo = mid, fmid
    return Interval.from_fractions(lo, hi, bits + 2)


def certified_decimal(iv: Interval, digits: int) -> str | None:
    """Decimal string valid for every point of the interval, else None."""
    lo = iv.lo.decimal(digits, False)
    hi = iv.hi.decimal(digits, False)  # truncation of both endpoints
    return lo if lo == hi else None


def _to_iv(interval: Interval):
    prec = max(abs(interval.lo.m).bit_length(),
               abs(interval.hi.m).bit_length()) + 16
    with mpmath.workprec(prec):
        a = mpmath.ldexp(interval.lo.m, interval.lo.e)
        b = mpmath.ldexp(interval.hi.m, interval.hi.e)
    return a, b


def _from_mpf_tuple(t) -> Dyadic:
    sign, man, exp, _bc = t
    if man == 0:
        if exp == 0:
            return Dyadic(0)
        raise ValueError("non-finite interval endpoint")
    return Dyadic(-int(man) if sign else int(man), int(exp))


def power_interval(base: Interval, exponent: Interval, bits: int) -> Interval:
    """Certified base**exponent for base > 0 via mpmath interval arithmetic."""
    saved = mpmath.iv.prec
    try:
        mpmath.iv.prec = bits + 16
        b = mpmath.iv.mpf(_to_iv(base))
        e = mpmath.iv.mpf(_to_iv(exponent))
        out = mpmath.iv.exp(e * mpmath.iv.log(b))
        lo_t, hi_t = out._mpi_  # exact libmp endpoint tuples
        lo, hi = _from_mpf_tuple(lo_t), _from_mpf_tuple(hi_t)
    finally:
        mpmath.iv.prec = saved
    return Interval(lo, hi)


@dataclass
class ConstantSet:
    """All derived constants at one working precision, as enclosures."""

    bits: int
    lam: Interval
    lam_exact: Fraction | None
    theta: Interval
    alpha: Interval
    beta: Interval
    gamma: Interval
    lambda2: Interval
    lambda3: Interval
    lambda3_alt: Interval
    tau4: Interval
    sqrt2_minus_1: Interval
    gamma_over_lambda3: Interval
    c1: Interval | None
    checks: dict = field(default_factory=dict)
    regime: dict = field(default_factory=dict)

    NAMES = ("lam", "theta", "alpha", "beta", "gamma", "lambda2", "lambda3",
             "tau4", "sqrt2_minus_1", "gamma_over_lambda3", "c1")

    def digits(self, name: str, k: int = 50) -> str:
        iv = getattr(self, name)
        if iv is None:
            raise ValueError(f"{name} was not computed (needs a spec)")
        s = certified_decimal(iv, k)
        if s is None:
            raise ValueError(f"{name} is not certified to {k} digits at "
                             f"{self.bits} bits")
        return s

    def as_floats(self) -> dict:
        out = {}
        for name in self.NAMES:
            iv = getattr(self, name)
            out[name] = None if iv is None else iv.mid_float()
        return out

    def table(self, k: int = 50) -> list[tuple[str, str]]:
        rows = []
        for name in self.NAMES:
            iv = getattr(self, name)
            if iv is None:
                continue
            s = certified_decimal(iv, k)
            rows.append((name, s if s is not None else
                         f"~{iv.mid_float():.17g} (uncertified at {k} digits)"))
        return rows


def _interval_bound_below(value: Interval, bound: Fraction) -> bool:
    return value.lo.as_fraction() > bound


def compute_constants(lam: Fraction | float | None = None, spec=None,
                      bits: int = 240,
                      tol_exp: int = 45) -> ConstantSet:
    """Build the constant set; lam defaults to the exponent bound lambda3."""
    b = bits
    sqrt5 = sqrt_interval_fraction(Fraction(5), b)
    one = Interval.from_int(1)
    two = Interval.from_int(2)
    gamma = _half(one + sqrt5)
    # (1 + 2*gamma - sqrt(1 + 4*gamma^2)) / 2
    disc1 = (one + gamma.pow_int(2).scale_int(4)).sqrt(b)
    lambda3 = _half(one + gamma.scale_int(2) - disc1)
    # (2 + sqrt5 - sqrt(7 + 2*sqrt5)) / 2
    disc2 = (Interval.from_int(7) + sqrt5.scale_int(2)).sqrt(b)
    lambda3_alt = _half(two + sqrt5 - disc2)
    lambda2 = _bisect_root(P2_COEFFS, Fraction(0), Fraction(1), b)
    tau4 = lambda3.invert(b) + one
    sqrt2m1 = sqrt_interval_fraction(Fraction(2), b) - one
    gamma_over_lambda3 = gamma * lambda3.invert(b)

    if lam is None:
        lam_iv, lam_exact = lambda3, None
    else:
        lam_exact = Fraction(lam)
        if not 0 < lam_exact <= 1:
            raise ValueError("lambda must lie in (0, 1]")
        lam_iv = Interval.from_fractions(lam_exact, lam_exact, b)

    theta = (one - lam_iv) * lam_iv.invert(b)
    alpha = (polys.eval_interval(ALPHA_NUM, lam_iv)
             * polys.eval_interval(ALPHA_DEN, lam_iv).invert(b))
    beta = (one - lam_iv) * polys.eval_interval(
        [1, -1, 1], lam_iv).invert(b)

    c1 = None
    if spec is not None:
        from .realspec import RealContext

        rcx = spec if isinstance(spec, RealContext) else RealContext(spec)
        xi_abs = rcx.enclosure(b + 8).abs_()
        if xi_abs.hi.as_fraction() <= 1:
            c1 = Interval.from_int(2)
        else:
            base = xi_abs.max_with(one)
            c1 = power_interval(base, lam_iv.scale_int(3), b).scale_int(2)

    tol = Fraction(1, 10**tol_exp)
    quad_at_l3 = (lambda3.pow_int(2)
                  - (one + gamma.scale_int(2)) * lambda3 + gamma)
    closed_gap = lambda3 - lambda3_alt
    p2_at_l2 = polys.eval_interval(P2_COEFFS, lambda2)
    theta3 = (one - lambda3) * lambda3.invert(b)
    theta_identity = theta3 - theta3.invert(b) - gamma.invert(b)
    root_sum_gap = lambda3 + gamma_over_lambda3 - one - gamma.scale_int(2)

    def small(iv: Interval) -> bool:
        m = max(abs(iv.lo.as_fraction()), abs(iv.hi.as_fraction()))
        return m < tol

    checks = {
        "closed_forms_agree": small(closed_gap),
        "lambda3_root_of_quadratic": small(quad_at_l3),
        "p2_vanishes_at_lambda2": small(p2_at_l2),
        "theta_gap_is_inverse_gamma_at_lambda3": small(theta_identity),
        "quadratic_root_sum": small(root_sum_gap),
        "ordering_sqrt2m1_lambda2_lambda3_half": (
            sqrt2m1.hi.as_fraction() < lambda2.lo.as_fraction()
            < lambda2.hi.as_fraction() < lambda3.lo.as_fraction()
            < lambda3.hi.as_fraction() < Fraction(1, 2)),
    }
    # hypothesis flags: false means "outside the regime", not a math failure
    regime = {
        "theta_ge_1": theta.lo.as_fraction() >= 1
                      or (lam_exact is not None and lam_exact <= Fraction(1, 2)),
        "lambda_le_half": (lam_exact is None
                           or lam_exact <= Fraction(1, 2)),
    }

    return ConstantSet(bits=b, lam=lam_iv, lam_exact=lam_exact, theta=theta,
                       alpha=alpha, beta=beta, gamma=gamma, lambda2=lambda2,
                       lambda3=lambda3, lambda3_alt=lambda3_alt, tau4=tau4,
                       sqrt2_minus_1=sqrt2m1,
                       gamma_over_lambda3=gamma_over_lambda3, c1=c1,
                       checks=checks, regime=regime)
