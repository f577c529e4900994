"""Approximation vectors, qualities and minimal-point sequences.

A minimal-point sequence collects the successive record holders of the
quality L(x) = max_i |x0*xi^i - x_i| as the sup norm grows: norms strictly
increase, qualities strictly decrease, and nothing of smaller norm beats
the current quality.  The scan domain is x0 in 1..X (x0 = 0 forces L >= 1
and never improves on the first rounded candidate; the sign flip covers
x0 < 0); the reported norms are full sup norms and may exceed X.

Two independent constructions are provided: `minimal_points` sweeps rounded
candidates (plus a small exhaustive head where clamped vectors can still
hold records), while `brute_force_minimal_points` enumerates an entire
integer box and replays the definition.  Both certify every record
comparison exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .dyadic import Interval
from .realspec import (EscalationError, PrecisionContext, RealContext,
                       RealSpec)

#: relative enclosure width required of a record quality before export
L_REL_WIDTH = Fraction(1, 10_000)

_BOX_LIMITS = {1: 20_000, 2: 600, 3: 60}
_HEAD_LIMIT = 4096
_EXHAUSTIVE_LIMIT = 40_000


@dataclass(frozen=True)
class ApproxVector:
    """Integer vector (x0, ..., xn) with the dimension tag n."""

    coords: tuple[int, ...]

    def __post_init__(self):
        if len(self.coords) < 1:
            raise ValueError("need at least one coordinate")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    @property
    def nonzero(self) -> bool:
        return any(self.coords)

    @property
    def primitive(self) -> bool:
        return self.nonzero and math.gcd(*self.coords) == 1


def sup_norm(x) -> int:
    coords = x.coords if isinstance(x, ApproxVector) else tuple(x)
    return max(abs(c) for c in coords)


def truncations(x: ApproxVector) -> tuple[ApproxVector, ApproxVector]:
    """Drop the last / the first coordinate."""
    if x.n < 1:
        raise ValueError("vector too short to truncate")
    return ApproxVector(x.coords[:-1]), ApproxVector(x.coords[1:])


def make_primitive(x: ApproxVector) -> ApproxVector:
    if not x.nonzero:
        raise ValueError("zero vector has no primitive form")
    return ApproxVector(_primitive_coords(x.coords))


def _primitive_coords(coords) -> tuple[int, ...]:
    g = math.gcd(*coords)
    out = tuple(c // g for c in coords)
    for c in out:
        if c:
            if c < 0:
                out = tuple(-v for v in out)
            break
    return out


def l_value(x, spec_or_rcx, ctx: PrecisionContext | None = None,
            bits: int | None = None) -> Interval:
    """Certified enclosure of L(x); exact when x0 == 0."""
    coords = x.coords if isinstance(x, ApproxVector) else tuple(x)
    if not any(coords):
        raise ValueError("L is not defined for the zero vector")
    rcx = (spec_or_rcx if isinstance(spec_or_rcx, RealContext)
           else RealContext(spec_or_rcx, ctx))
    return rcx.l_interval(coords, bits or rcx.ctx.initial_bits)


def best_candidate(x0: int, spec, n: int, ctx: PrecisionContext | None = None,
                   rcx: RealContext | None = None) -> ApproxVector:
    """The unique L-minimizing vector with first coordinate x0."""
    if x0 < 1:
        raise ValueError("x0 must be >= 1")
    rcx = rcx or RealContext(spec, ctx)
    return ApproxVector((x0,) + tuple(rcx.nearest_int(x0, i)
                                      for i in range(1, n + 1)))


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QualityPair:
    X: int
    L: Interval


@dataclass(frozen=True)
class MinimalPointRecord:
    index: int
    vector: ApproxVector
    X: int
    L: Interval

    @property
    def quality(self) -> QualityPair:
        return QualityPair(self.X, self.L)


@dataclass
class MinimalPointSequence:
    spec: RealSpec
    n: int
    x_max: int
    records: list[MinimalPointRecord]
    meta: dict = field(default_factory=dict)

    def vectors(self):
        return [r.vector.coords for r in self.records]

    # -- export ----------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "n": self.n,
            "x_max": str(self.x_max),
            "records": [
                {
                    "i": r.index,
                    "x": [str(c) for c in r.vector.coords],
                    "X": str(r.X),
                    "L_lo": r.L.lo.decimal(36, False),
                    "L_hi": r.L.hi.decimal(36, True),
                }
                for r in self.records
            ],
            "meta": self.meta,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["i"] + [f"x{k}" for k in range(self.n + 1)]
                        + ["X", "L_mid"])
        for r in self.records:
            writer.writerow([r.index] + [str(c) for c in r.vector.coords]
                            + [str(r.X), r.L.mid().decimal(30, False)])
        return buf.getvalue()

    @staticmethod
    def from_json(obj, recompute_l: bool = True) -> "MinimalPointSequence":
        if isinstance(obj, str):
            obj = json.loads(obj)
        try:
            spec = RealSpec.from_json(obj["spec"])
            n = int(obj["n"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed sequence document: {exc}") from exc
        records = []
        rcx = RealContext(spec) if recompute_l else None
        for row in obj["records"]:
            coords = tuple(int(c) for c in row["x"])
            if rcx is not None:
                L = _refined_l(rcx, coords)
            else:
                lo = Fraction(row["L_lo"])
                hi = Fraction(row["L_hi"])
                L = Interval.from_fractions(lo, hi, 160)
            records.append(MinimalPointRecord(int(row["i"]),
                                              ApproxVector(coords),
                                              int(row["X"]), L))
        meta = dict(obj.get("meta", {}))
        meta["loaded"] = True
        return MinimalPointSequence(spec, n, int(obj["x_max"]), records, meta)


def _refined_l(rcx: RealContext, coords) -> Interval:
    """L enclosure at <= L_REL_WIDTH relative width."""
    for bits in rcx.ctx.ladder():
        L = rcx.l_interval(coords, bits)
        w = L.width().as_fraction()
        mid = L.mid().as_fraction()
        if mid <= 0:
            if w == 0:
                return L  # exactly integral quality (rational xi edge case)
            continue
        if w / mid <= L_REL_WIDTH:
            return L
    raise EscalationError("could not refine a record quality enclosure")


# ---------------------------------------------------------------------------
# record scan (shared exact machinery)
# ---------------------------------------------------------------------------

def _cmp_l(rcx: RealContext, a, b, quick_bits: int = 96) -> int:
    """Certified comparison of L(a) and L(b) with a cheap interval gate."""
    ia = rcx.l_interval(a, quick_bits)
    ib = rcx.l_interval(b, quick_bits)
    if ia.strictly_below(ib):
        return -1
    if ib.strictly_below(ia):
        return 1
    return rcx.compare_l(a, b)


def _record_scan(rcx: RealContext, candidates) -> list[tuple[int, ...]]:
    """Replay the record definition over exact candidate vectors.

    Candidates are primitivized and deduplicated first; within a norm the
    L-minimizing vector (lexicographically smallest on ties) is the only
    possible record holder, and it becomes a record iff it strictly beats
    the current record quality.
    """
    seen = set()
    by_norm: dict[int, list[tuple[int, ...]]] = {}
    for coords in candidates:
        if not any(coords):
            continue
        prim = _primitive_coords(coords)
        if prim in seen:
            continue
        seen.add(prim)
        by_norm.setdefault(max(abs(c) for c in prim), []).append(prim)

    records: list[tuple[int, ...]] = []
    current = None
    for norm in sorted(by_norm):
        group = sorted(by_norm[norm])
        best = group[0]
        for cand in group[1:]:
            if _cmp_l(rcx, cand, best) < 0:
                best = cand
        if current is None or _cmp_l(rcx, best, current) < 0:
            records.append(best)
            current = best
    return records


def _wrap_records(rcx: RealContext, spec, n, x_max, coords_list, meta):
    ls = [_refined_l(rcx, coords) for coords in coords_list]
    # make consecutive enclosures disjoint; enclosure refinement is nested,
    # so intersecting with a higher-precision evaluation only shrinks them
    for k in range(len(ls) - 1):
        for bits in rcx.ctx.ladder():
            if ls[k + 1].strictly_below(ls[k]):
                break
            ls[k] = ls[k].intersect(rcx.l_interval(coords_list[k], bits))
            ls[k + 1] = ls[k + 1].intersect(
                rcx.l_interval(coords_list[k + 1], bits))
        else:
            raise EscalationError("record qualities did not separate")
    records = [
        MinimalPointRecord(i + 1, ApproxVector(c), max(abs(v) for v in c), L)
        for i, (c, L) in enumerate(zip(coords_list, ls))
    ]
    return MinimalPointSequence(spec, n, x_max, records, meta)


# ---------------------------------------------------------------------------
# the sweep construction
# ---------------------------------------------------------------------------

def _head_candidates(rcx: RealContext, n: int, x0_hi: int):
    """Exhaustive clamped candidates for the low-norm head of the sweep.

    A record whose vector is not the rounded minimizer of its x0 carries a
    clamped coordinate and hence a quality >= 1/2, so it can only occur
    before the first rounded candidate (which has quality < 1/2) enters the
    scan.  Enumerating every per-coordinate clamp up to that norm covers
    all of them.
    """
    best1 = tuple(rcx.nearest_int(1, i) for i in range(1, n + 1))
    head_norm = max(1, max(abs(c) for c in best1))
    if head_norm > _HEAD_LIMIT:
        raise ValueError("head region too large; the base value magnitude "
                         "is outside the supported sweep range")
    out = []
    for x0 in range(1, min(x0_hi, head_norm) + 1):
        rounds = tuple(rcx.nearest_int(x0, i) for i in range(1, n + 1))
        for cap in range(x0, head_norm + 1):
            clamped = (x0,) + tuple(min(max(r, -cap), cap) for r in rounds)
            out.append(clamped)
    return out, head_norm


def minimal_points(spec: RealSpec, n: int, x_max: int,
                   ctx: PrecisionContext | None = None,
                   backend: str | None = None) -> MinimalPointSequence:
    """Minimal-point records over all vectors with first coordinate <= x_max."""
    if n not in (1, 2, 3):
        raise ValueError("sweeps support n in {1, 2, 3}")
    if x_max < 1:
        raise ValueError("x_max must be >= 1")
    rcx = RealContext(spec, ctx)
    candidates, head_norm = _head_candidates(rcx, n, x_max)
    survivors, _shift = kernels.run_sweep(rcx, n, x_max, backend)
    for x0, _coords, _norm, _l, _flag in survivors:
        candidates.append((x0,) + tuple(rcx.nearest_int(x0, i)
                                        for i in range(1, n + 1)))
    coords_list = _record_scan(rcx, candidates)
    meta = {"method": "sweep", "backend": kernels.BACKEND if backend in (None, "auto") else backend,
            "head_norm": head_norm,
            "tie_rule": "smaller norm, then lexicographic"}
    return _wrap_records(rcx, spec, n, x_max, coords_list, meta)


# ---------------------------------------------------------------------------
# the brute-force oracle
# ---------------------------------------------------------------------------

def brute_force_minimal_points(spec: RealSpec, n: int, x_bound: int,
                               ctx: PrecisionContext | None = None,
                               exhaustive: bool = False,
                               backend: str | None = None) -> MinimalPointSequence:
    """Replay the record definition over an entire integer box.

    The box runs over first coordinates 1..x_bound with per-coordinate
    ranges wide enough to contain every possible record vector.  With
    exhaustive=True every vector is compared through the certified form
    machinery directly (tiny bounds only); otherwise a fixed-point
    prefilter discards vectors that provably cannot hold or tie a record
    and the certified scan runs on the survivors.
    """
    if n not in (1, 2, 3):
        raise ValueError("the oracle supports n in {1, 2, 3}")
    if x_bound < 1:
        raise ValueError("x_bound must be >= 1")
    if x_bound > _BOX_LIMITS[n]:
        raise ValueError(f"x_bound above enumeration guard {_BOX_LIMITS[n]} "
                         f"for n={n}")
    rcx = RealContext(spec, ctx)
    if exhaustive:
        bounds = kernels.coordinate_bounds(rcx, n, x_bound)
        total = x_bound
        for b in bounds:
            total *= 2 * b + 1
        if total > _EXHAUSTIVE_LIMIT:
            raise ValueError("exhaustive mode guard exceeded")
        candidates = _full_box(x_bound, bounds)
        meta_method = "box-exhaustive"
    else:
        survivors, _shift = kernels.run_box(rcx, n, x_bound, backend)
        candidates = [(x0,) + tuple(coords) for x0, coords, _nm, _l in survivors]
        meta_method = "box-prefiltered"
    coords_list = _record_scan(rcx, candidates)
    meta = {"method": meta_method,
            "backend": kernels.BACKEND if backend in (None, "auto") else backend,
            "tie_rule": "smaller norm, then lexicographic"}
    return _wrap_records(rcx, spec, n, x_bound, coords_list, meta)


def _full_box(x0_hi: int, bounds):
    def rec(prefix, k):
        if k == len(bounds):
            yield tuple(prefix)
            return
        for v in range(-bounds[k], bounds[k] + 1):
            prefix.append(v)
            yield from rec(prefix, k + 1)
            prefix.pop()

    for x0 in range(1, x0_hi + 1):
        yield from ((x0,) + rest for rest in rec([], 0))


# ---------------------------------------------------------------------------
# exponent estimates
# ---------------------------------------------------------------------------

def exponent_estimates(seq: MinimalPointSequence) -> dict:
    """Per-index uniform/ordinary exponent readings and their summary."""
    if len(seq.records) < 2:
        raise ValueError("need at least two records")
    rows = []
    for cur, nxt in zip(seq.records, seq.records[1:]):
        lmid = float(cur.L.mid())
        if lmid <= 0:
            continue
        rows.append({
            "i": cur.index,
            "X_next": nxt.X,
            "uniform_hat": math.log(1 / lmid) / math.log(nxt.X) if nxt.X > 1 else float("inf"),
            "ordinary_hat": math.log(1 / lmid) / math.log(cur.X) if cur.X > 1 else float("inf"),
        })
    uniforms = [r["uniform_hat"] for r in rows if math.isfinite(r["uniform_hat"])]
    running_inf = []
    acc = float("inf")
    for u in uniforms:
        acc = min(acc, u)
        running_inf.append(acc)
    summary = {
        "min_uniform": min(uniforms) if uniforms else None,
        "max_uniform": max(uniforms) if uniforms else None,
        "last_uniform": uniforms[-1] if uniforms else None,
        "running_inf_uniform": running_inf[-1] if running_inf else None,
    }
    return {"rows": rows, "summary": summary}
