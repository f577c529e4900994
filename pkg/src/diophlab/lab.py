"""Derived objects of a minimal-point run and the inequality report suite.

From a length-3 minimal-point sequence this module builds the planes
W_i = <x_{i-1}, x_i> in R^4 and V_i = <x_i^-, x_i^+> in R^3, the integer
pairs C(x_i, x_j), the index sets I (where the W-plane changes) and J
(where the 3-space W_i + W_{i+1} changes at the successor), and then
replays every tracked inequality as a ratio time series.  Implied constants
are never asserted: each report carries per-index LHS/RHS rows and the
fitted maximum; only genuinely exact statements (integrality,
proportionality, lattice-basis claims, determinant identities) become
pass/fail checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

from . import constants as const_mod
from .approx import (MinimalPointSequence, _refined_l, exponent_estimates,
                     sup_norm)
from .realspec import RealContext, degree_precheck
from .subspaces import RationalSubspace, hnf, integer_kernel

LEMMA_IDS = ("2.2", "2.4", "3.1", "3.2", "3.3", "4.1", "4.2", "5.1",
             "prop5.2", "cor5.3", "6.1", "chain")

#: records this close to either end of a run are excluded from lemma rows
#: (their successor-dependent quantities are truncated by the sweep window)
EDGE_TRIM = 2


# ---------------------------------------------------------------------------
# exact primitives
# ---------------------------------------------------------------------------

def det3(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _coords(x):
    return x.coords if hasattr(x, "coords") else tuple(x)


def compute_C(x, y) -> tuple[int, int]:
    """The integer pair (det(x-,x+,y-), det(x-,x+,y+)) for x, y in Z^4."""
    xc, yc = _coords(x), _coords(y)
    if len(xc) != 4 or len(yc) != 4:
        raise ValueError("C is defined for vectors in Z^4")
    xm, xp = xc[:3], xc[1:]
    return (det3(xm, xp, yc[:3]), det3(xm, xp, yc[1:]))


def det_identity_residual(w, x, y, z) -> tuple[int, int, int]:
    """det(w,x,y)z - det(w,x,z)y + det(w,y,z)x - det(x,y,z)w, exactly."""
    w, x, y, z = (tuple(v) for v in (w, x, y, z))
    d1, d2, d3, d4 = det3(w, x, y), det3(w, x, z), det3(w, y, z), det3(x, y, z)
    return tuple(d1 * z[k] - d2 * y[k] + d3 * x[k] - d4 * w[k]
                 for k in range(3))


def c_specialization_residual(x, y) -> tuple[int, int, int]:
    """Residual of C+(x,y)y- - C-(x,y)y+ = C-(y,x)x+ - C+(y,x)x-."""
    xc, yc = _coords(x), _coords(y)
    cxy = compute_C(xc, yc)
    cyx = compute_C(yc, xc)
    lhs = tuple(cxy[1] * yc[k] - cxy[0] * yc[k + 1] for k in range(3))
    rhs = tuple(cyx[0] * xc[k + 1] - cyx[1] * xc[k] for k in range(3))
    return tuple(a - b for a, b in zip(lhs, rhs))


def verify_pointy(c_pair, x, rcx_or_spec, ctx=None) -> dict:
    """Check the two transfer bounds for y = C+x- - C-x+ and the exact
    degenerate branch (y = 0 forces norm(x) = norm(C)^n for primitive data)."""
    rcx = (rcx_or_spec if isinstance(rcx_or_spec, RealContext)
           else RealContext(rcx_or_spec, ctx))
    a, b = (int(v) for v in c_pair)
    xc = _coords(x)
    n = len(xc) - 1
    y = tuple(b * xc[k] - a * xc[k + 1] for k in range(n))
    out = {"y": y, "y_is_zero": not any(y), "n": n}
    norm_c = max(abs(a), abs(b))
    norm_x = max(abs(v) for v in xc)
    l_c = _refined_l(rcx, (a, b)) if (a or b) and rcx else None
    l_x = _refined_l(rcx, xc)
    lc_mid = float(l_c.mid()) if l_c is not None else None
    lx_mid = float(l_x.mid())
    if out["y_is_zero"]:
        gx = math.gcd(*xc)
        gc = math.gcd(a, b)
        out["both_primitive"] = gx == 1 and gc == 1
        if out["both_primitive"]:
            out["norm_identity_exact"] = (norm_x == norm_c ** n)
            if lc_mid:
                out["l_ratio"] = lx_mid / (norm_c ** (n - 1) * lc_mid)
    else:
        norm_y = max(abs(v) for v in y)
        l_y = _refined_l(rcx, y) if n >= 2 and any(y) else None
        out["norm_y"] = norm_y
        # fitted multiplier for norm(y) <= norm(x)L(C) + c2*norm(C)L(x)
        slack = norm_y - norm_x * lc_mid if lc_mid is not None else norm_y
        out["c2_from_norm"] = max(0.0, slack) / (norm_c * lx_mid)
        if l_y is not None:
            out["c2_from_l"] = float(l_y.mid()) / (norm_c * lx_mid)
    return out


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class RatioReport:
    lemma: str
    rows: list[dict] = field(default_factory=list)
    max_ratio: float | None = None
    applicable_count: int = 0
    verdict: str = ""
    exact_checks: list[dict] = field(default_factory=list)
    params: dict = field(default_factory=dict)

    def finalize(self):
        ratios = [r["ratio"] for r in self.rows if math.isfinite(r["ratio"])]
        self.applicable_count = len(self.rows)
        self.max_ratio = max(ratios) if ratios else None
        if not self.rows:
            self.verdict = "no applicable index"
        elif not self.verdict:
            bad = [c for c in self.exact_checks if not c["passed"]]
            head = (f"{len(self.rows)} rows, fitted constant "
                    f"{self.max_ratio:.6g}")
            self.verdict = head + ("" if not bad else
                                   f"; {len(bad)} exact checks FAILED")
        return self

    def exact_ok(self) -> bool:
        return all(c["passed"] for c in self.exact_checks)

    def to_json(self) -> dict:
        return {"lemma": self.lemma, "rows": self.rows,
                "max_ratio": self.max_ratio,
                "applicable_count": self.applicable_count,
                "verdict": self.verdict, "exact_checks": self.exact_checks,
                "params": self.params}


def _row(indices, lhs, rhs, part=None):
    ratio = lhs / rhs if rhs else math.inf
    d = {"indices": list(indices), "lhs": lhs, "rhs": rhs, "ratio": ratio}
    if part:
        d["part"] = part
    return d


# ---------------------------------------------------------------------------
# the run object
# ---------------------------------------------------------------------------

class LabRun:
    """Frozen bundle of derived objects for one n = 3 sequence."""

    def __init__(self, seq: MinimalPointSequence, ctx=None):
        if seq.n != 3:
            raise ValueError("lab runs require n = 3 sequences")
        if len(seq.records) < 2:
            raise ValueError("lab runs need at least two records")
        self.seq = seq
        self.rcx = RealContext(seq.spec, ctx)
        self.m = len(seq.records)
        self.vec = {r.index: r.vector.coords for r in seq.records}
        self.X = {r.index: r.X for r in seq.records}
        self.L = {r.index: r.L for r in seq.records}
        self.Lmid = {i: float(L.mid()) for i, L in self.L.items()}

        # planes W_i = <x_{i-1}, x_i> plus the exact lattice-basis claim
        self.W: dict[int, RationalSubspace] = {}
        self.W_basis_exact: dict[int, bool] = {}
        for i in range(2, self.m + 1):
            rows = (self.vec[i - 1], self.vec[i])
            sub = RationalSubspace.from_vectors(rows, 4)
            if sub.dim != 2:
                raise ValueError(f"records {i-1},{i} span dimension {sub.dim}")
            self.W[i] = sub
            self.W_basis_exact[i] = (hnf(rows, 4) == sub.basis)

        self.Wsum: dict[int, RationalSubspace] = {}
        for i in range(2, self.m):
            self.Wsum[i] = self.W[i].sum_with(self.W[i + 1])

        # planes V_i = <x_i^-, x_i^+> in R^3 where those are independent
        self.V: dict[int, RationalSubspace] = {}
        self.dependent_indices: list[int] = []
        for i in range(1, self.m + 1):
            xm, xp = self.vec[i][:3], self.vec[i][1:]
            # independence test: some 2x2 minor of (x-, x+) nonzero
            minors = (xm[0] * xp[1] - xm[1] * xp[0],
                      xm[0] * xp[2] - xm[2] * xp[0],
                      xm[1] * xp[2] - xm[2] * xp[1])
            if any(minors):
                self.V[i] = RationalSubspace.from_vectors((xm, xp), 3)
            else:
                self.dependent_indices.append(i)
        self.i0 = None
        for i in range(1, self.m + 1):
            if all(k in self.V for k in range(i, self.m + 1)):
                self.i0 = i
                break

        self.I = [i for i in range(2, self.m) if self.W[i] != self.W[i + 1]]
        self.J = []
        for pos, i in enumerate(self.I[:-1]):
            j = self.I[pos + 1]
            if j in self.Wsum and self.Wsum[j] != self.Wsum[i]:
                self.J.append(i)

        self._c_cache: dict[tuple[int, int], tuple[int, int]] = {}
        self._lc_cache: dict[tuple[int, int], float] = {}

    # -- cached quantities ------------------------------------------------

    def C(self, i: int, j: int) -> tuple[int, int]:
        key = (i, j)
        if key not in self._c_cache:
            self._c_cache[key] = compute_C(self.vec[i], self.vec[j])
        return self._c_cache[key]

    def L_of_C(self, i: int, j: int) -> float:
        key = (i, j)
        if key not in self._lc_cache:
            c = self.C(i, j)
            if not any(c):
                self._lc_cache[key] = 0.0
            else:
                self._lc_cache[key] = float(_refined_l(self.rcx, c).mid())
        return self._lc_cache[key]

    def H(self, sub: RationalSubspace) -> int:
        return sub.height_sup

    def window(self) -> range:
        return range(1 + EDGE_TRIM, self.m - EDGE_TRIM + 1)

    def in_window(self, *indices) -> bool:
        w = self.window()
        return all(i in w for i in indices)

    def consecutive_I_pairs(self):
        return list(zip(self.I, self.I[1:]))

    def lattice_coords_in_W(self, i: int, j: int):
        """Exact (a, b) with x_j = a*x_i + b*x_{i+1}, or None."""
        xi, xi1, xj = self.vec[i], self.vec[i + 1], self.vec[j]
        for p in range(4):
            for q in range(p + 1, 4):
                dd = xi[p] * xi1[q] - xi[q] * xi1[p]
                if dd:
                    na = xj[p] * xi1[q] - xj[q] * xi1[p]
                    nb = xi[p] * xj[q] - xi[q] * xj[p]
                    if na % dd or nb % dd:
                        return None
                    a, b = na // dd, nb // dd
                    if all(xj[k] == a * xi[k] + b * xi1[k] for k in range(4)):
                        return a, b
                    return None
        return None


def build_lab_run(seq: MinimalPointSequence, ctx=None) -> LabRun:
    return LabRun(seq, ctx)


#: the det identity returns its residual; callers assert it vanishes
verify_det_identity = det_identity_residual


def build_W(seq: MinimalPointSequence, ctx=None):
    """Planes spanned by consecutive records, keyed by the later index,
    together with the per-index exact lattice-basis verdicts."""
    run = LabRun(seq, ctx)
    return run.W, run.W_basis_exact


def build_V(seq: MinimalPointSequence, ctx=None):
    """(first stable index, truncation planes, dependence events)."""
    run = LabRun(seq, ctx)
    return run.i0, run.V, run.dependent_indices


def index_sets(run: LabRun):
    """The plane-change index set and the subset whose successor also moves
    the enclosing 3-space, plus the observed complement."""
    complement = [i for i in run.I[:-1] if i not in run.J]
    return run.I, run.J, complement


# ---------------------------------------------------------------------------
# per-lemma report builders
# ---------------------------------------------------------------------------

def _lam_value(lam) -> float:
    if lam is None:
        return const_mod.compute_constants(bits=120).lambda3.mid_float()
    return float(lam)


def _report_22(run: LabRun, lam: float, cbound: int = 40) -> RatioReport:
    rep = RatioReport("2.2", params={"lambda": lam, "c_norm_bound": cbound})
    total = 0
    for norm in range(1, cbound + 1):
        shell = {(a, s * norm) for a in range(-norm, norm + 1) for s in (1, -1)}
        shell |= {(s * norm, a) for a in range(-norm, norm + 1) for s in (1, -1)}
        worst = None
        for c in sorted(shell):
            if not any(c) or math.gcd(abs(c[0]), abs(c[1])) != 1:
                continue
            total += 1
            lc = float(_refined_l(run.rcx, c).mid())
            ratio = norm ** (-1 / lam) / lc
            if worst is None or ratio > worst[0]:
                worst = (ratio, c, lc)
        if worst is not None:
            rep.rows.append(_row(worst[1], norm ** (-1 / lam), worst[2]))
    rep.params["points_checked"] = total
    rep.verdict = ""
    return rep.finalize()


def _report_24(run: LabRun, lam: float, bound: int = 8) -> RatioReport:
    rep = RatioReport("2.4", params={"norm_bound": bound})
    subspaces = {
        "x0=0 hyperplane": RationalSubspace(4, integer_kernel([(1, 0, 0, 0)], 4)),
        "x3=0 hyperplane": RationalSubspace(4, integer_kernel([(0, 0, 0, 1)], 4)),
    }
    if 2 in run.W:
        subspaces["first record plane"] = run.W[2]
    if 2 in run.Wsum:
        subspaces["first record 3-space"] = run.Wsum[2]
    k = 2 * bound
    for name, sub in subspaces.items():
        best = None
        count = 0
        for coeffs in product(range(-k, k + 1), repeat=sub.dim):
            if not any(coeffs):
                continue
            x = tuple(sum(c * row[t] for c, row in zip(coeffs, sub.basis))
                      for t in range(4))
            if not any(x) or max(abs(v) for v in x) > bound:
                continue
            count += 1
            if x[0] == 0:
                lmid = float(max(abs(v) for v in x[1:]))
            else:
                lmid = float(_refined_l(run.rcx, x).mid())
            if best is None or lmid < best[0]:
                best = (lmid, x)
        if best is not None:
            rep.rows.append(_row((name, best[1]), 1.0, best[0]))
            rep.params[name] = {"points": count, "min_L": best[0]}
    rep.verdict = ""
    rep.finalize()
    if rep.rows:
        rep.verdict += "; quality stays bounded away from zero on every " \
                       "tested proper subspace"
    return rep


def _report_31(run: LabRun, lam: float) -> RatioReport:
    rep = RatioReport("3.1", params={"lambda": lam})
    for i in range(2, run.m + 1):
        if not run.in_window(i - 1, i):
            continue
        h = run.H(run.W[i])
        xl = run.X[i] * run.Lmid[i - 1]
        rep.rows.append(_row((i,), h, xl, part="H_vs_XL"))
        rep.rows.append(_row((i,), xl, h, part="XL_vs_H"))
        rep.rows.append(_row((i,), h, run.X[i] ** (1 - lam), part="H_vs_Xpow"))
    ok = all(run.W_basis_exact[i] for i in run.W)
    rep.exact_checks.append({
        "name": "records form a lattice basis of their plane",
        "passed": ok,
        "detail": {i: run.W_basis_exact[i] for i in run.W_basis_exact},
    })
    return rep.finalize()


def _report_32(run: LabRun, lam: float) -> RatioReport:
    theta = (1 - lam) / lam
    rep = RatioReport("3.2", params={"lambda": lam, "theta": theta,
                                     "observed_I_size": len(run.I)})
    for i in run.I:
        if i not in run.Wsum or not run.in_window(i - 1, i + 1):
            continue
        hs = run.H(run.Wsum[i])
        hi, hi1 = run.H(run.W[i]), run.H(run.W[i + 1])
        rep.rows.append(_row((i,), hs, hi * hi1 / run.X[i], part="sum_vs_XHH"))
        rep.rows.append(_row((i,), hs, hi ** (-1 / theta) * hi1,
                             part="sum_vs_theta"))
    rep.verdict = ""
    rep.finalize()
    rep.verdict += f"; plane changes observed at {len(run.I)} indices"
    return rep


def _report_33(run: LabRun, lam: float) -> RatioReport:
    theta = (1 - lam) / lam
    rep = RatioReport("3.3", params={"lambda": lam, "theta": theta})
    for i, j in run.consecutive_I_pairs():
        if i not in run.J or not run.in_window(i - 1, j + 1):
            continue
        xi, xj, xj1 = run.X[i], run.X[j], run.X[j + 1]
        hi, hj, hj1 = (run.H(run.W[i]), run.H(run.W[j]), run.H(run.W[j + 1]))
        rep.rows.append(_row((i, j), xi * xj, hi * hj * hj1, part="XX_vs_HHH"))
        rep.rows.append(_row((i, j), hi * hj, hj1 ** theta, part="HH_vs_Htheta"))
        rep.rows.append(_row((i, j), xi * xj, xj1 ** theta, part="XX_vs_Xtheta"))
    return rep.finalize()


def _report_41(run: LabRun, lam: float) -> RatioReport:
    rep = RatioReport("4.1", params={"lambda": lam})
    for i in run.window():
        for j in run.window():
            if i >= j:
                continue
            cij = run.C(i, j)
            norm_c = max(abs(cij[0]), abs(cij[1]))
            li, lj = run.Lmid[i], run.Lmid[j]
            xi, xj = run.X[i], run.X[j]
            rhs1 = xj * li * li + xi * li * lj
            rep.rows.append(_row((i, j), norm_c, rhs1, part="normC"))
            rep.rows.append(_row((i, j), run.L_of_C(i, j), xi * li * lj,
                                 part="LC"))
    return rep.finalize()


def _report_42(run: LabRun, lam: float) -> RatioReport:
    rep = RatioReport("4.2", params={"lambda": lam})
    prop_ok, b_ok = [], []
    # the exact statements hold at every consecutive pair; only the fitted
    # ratio rows respect the edge trim
    for i, j in run.consecutive_I_pairs():
        cij, ci = run.C(i, j), run.C(i, i + 1)
        det = cij[0] * ci[1] - cij[1] * ci[0]
        prop_ok.append({"pair": [i, j], "det": det, "passed": det == 0})
        ab = run.lattice_coords_in_W(i, j)
        in_window = run.in_window(i - 1, j + 1)
        if ab is None:
            b_ok.append({"pair": [i, j], "passed": False,
                         "detail": "no integer coordinates in plane basis"})
        else:
            a, b = ab
            same = all(cij[k] == b * ci[k] for k in range(2))
            b_ok.append({"pair": [i, j], "b": b, "passed": same and b != 0})
            if in_window:
                rep.rows.append(_row((i, j), abs(b), run.X[j] / run.X[i + 1],
                                     part="b_vs_Xratio"))
                rep.rows.append(_row((i, j), run.X[j] / run.X[i + 1], abs(b),
                                     part="Xratio_vs_b"))
        if in_window:
            rep.rows.append(_row((i, j), run.L_of_C(i, i + 1),
                                 run.X[i] * run.X[j] ** (-lam)
                                 * run.X[j + 1] ** (-lam), part="LC_bound"))
    rep.exact_checks.append({"name": "C(i,j) proportional to C(i,i+1)",
                             "passed": all(r["passed"] for r in prop_ok),
                             "detail": prop_ok})
    rep.exact_checks.append({"name": "same multiplier as the lattice "
                                     "coordinates of x_j",
                             "passed": all(r["passed"] for r in b_ok),
                             "detail": b_ok})
    return rep.finalize()


def _report_51(run: LabRun, lam: float) -> RatioReport:
    theta = (1 - lam) / lam
    rep = RatioReport("5.1", params={"lambda": lam, "theta": theta,
                                     "i0": run.i0})
    if run.i0 is None:
        return rep.finalize()
    for i in run.window():
        if i - 1 < run.i0 or i + 1 > run.m:
            continue
        if i - 1 not in run.V or i not in run.V or run.V[i - 1] == run.V[i]:
            continue
        xi, xi1 = run.X[i], run.X[i + 1]
        hi, hi1 = run.H(run.W[i]), run.H(run.W[i + 1])
        rep.rows.append(_row((i,), hi1, xi1 ** (1 - lam), part="H_vs_X"))
        rep.rows.append(_row((i,), xi1 ** (1 - lam), hi ** theta,
                             part="X_vs_Htheta"))
        rep.rows.append(_row((i,), hi ** theta, xi ** (theta * (1 - lam)),
                             part="Htheta_vs_X"))
        rep.rows.append(_row((i,), xi1, xi ** theta, part="Xnext_vs_Xtheta"))
    return rep.finalize()


def _report_prop52(run: LabRun, lam: float) -> RatioReport:
    rep = RatioReport("prop5.2", params={"lambda": lam, "i0": run.i0})
    if run.i0 is None:
        return rep.finalize()
    for i in run.window():
        if i - 1 < run.i0 or i + 1 > run.m:
            continue
        if not all(k in run.V for k in (i - 1, i, i + 1)):
            continue
        if run.V[i - 1] == run.V[i] or run.V[i] != run.V[i + 1]:
            continue
        hw = run.H(run.W[i + 1])
        hv2 = run.H(run.V[i]) ** 2
        rep.rows.append(_row((i,), hw, hv2, part="HW_vs_HV2"))
        rep.rows.append(_row((i,), hv2, hw, part="HV2_vs_HW"))
    return rep.finalize()


def _report_cor53(run: LabRun, lam: float) -> RatioReport:
    theta = (1 - lam) / lam
    rep = RatioReport("cor5.3", params={"lambda": lam, "theta": theta})
    for i, j in run.consecutive_I_pairs():
        if i not in run.J or not run.in_window(i - 1, j + 1):
            continue
        xi, xj, xj1 = run.X[i], run.X[j], run.X[j + 1]
        hi, hj, hj1 = run.H(run.W[i]), run.H(run.W[j]), run.H(run.W[j + 1])
        rep.rows.append(_row((i, j), hi, xi ** (1 - lam), part="a1"))
        rep.rows.append(_row((i, j), xi ** (1 - lam),
                             hj ** (theta ** 2 - 1), part="a2"))
        rep.rows.append(_row((i, j), hj ** (theta ** 2 - 1),
                             xj ** ((theta ** 2 - 1) * (1 - lam)), part="a3"))
        rep.rows.append(_row((i, j), hj, xj ** (1 - lam), part="b1"))
        rep.rows.append(_row((i, j), xj ** (1 - lam),
                             hj1 ** (theta * (1 - lam)), part="b2"))
        rep.rows.append(_row((i, j), hj1 ** (theta * (1 - lam)),
                             xj1 ** (theta * (1 - lam) ** 2), part="b3"))
    return rep.finalize()


def _report_61(run: LabRun, lam: float) -> RatioReport:
    alpha = ((-lam ** 4 + lam ** 3 + lam ** 2 - 3 * lam + 1)
             / (lam * (lam * lam - lam + 1)))
    rep = RatioReport("6.1", params={"lambda": lam, "alpha": alpha})
    for pos in range(len(run.I) - 2):
        h, i, j = run.I[pos], run.I[pos + 1], run.I[pos + 2]
        if h not in run.J or i not in run.J:
            continue
        if not run.in_window(h - 1, j + 1):
            continue
        rep.rows.append(_row((h, i, j), run.L_of_C(i, i + 1),
                             run.X[j + 1] ** alpha))
    return rep.finalize()


def _report_chain(run: LabRun, lam: float) -> RatioReport:
    theta = (1 - lam) / lam
    rep = RatioReport("chain", params={"lambda": lam, "theta": theta})
    exponent = (1 - 1 / theta ** 2) * (theta ** 2 - 1) + (theta - 1 / theta)
    rep.params["closing_exponent"] = exponent
    for i, j in run.consecutive_I_pairs():
        if i not in run.J:
            continue
        for g in run.I:
            if g >= i or g not in run.Wsum:
                continue
            if run.Wsum[g] != run.Wsum[i]:
                continue
            if not run.in_window(g - 1, j + 1):
                continue
            hg1 = run.H(run.W[g + 1])
            hj, hj1 = run.H(run.W[j]), run.H(run.W[j + 1])
            hsg, hsj = run.H(run.Wsum[g]), run.H(run.Wsum[j])
            xi = run.X[i]
            rep.rows.append(_row((g, i, j), hj, hsg * hsj, part="cut"))
            rep.rows.append(_row((g, i, j), hsg,
                                 hg1 ** (1 - 1 / theta ** 2), part="left_sum"))
            rep.rows.append(_row((g, i, j), hsj, hj ** (theta - 1 / theta),
                                 part="right_sum"))
            rep.rows.append(_row((g, i, j), hg1, xi ** (1 - lam),
                                 part="height_vs_X"))
            rep.rows.append(_row((g, i, j), xi ** (1 - lam),
                                 hj ** (theta ** 2 - 1), part="X_vs_height"))
            rep.rows.append(_row((g, i, j), hj, hj ** exponent, part="closed"))
    return rep.finalize()


_BUILDERS = {
    "2.2": _report_22,
    "2.4": _report_24,
    "3.1": _report_31,
    "3.2": _report_32,
    "3.3": _report_33,
    "4.1": _report_41,
    "4.2": _report_42,
    "5.1": _report_51,
    "prop5.2": _report_prop52,
    "cor5.3": _report_cor53,
    "6.1": _report_61,
    "chain": _report_chain,
}


def verify_lemma_ratios(run: LabRun, lemma_id: str, lam=None) -> RatioReport:
    if lemma_id not in _BUILDERS:
        raise ValueError(f"unknown lemma id {lemma_id!r}; "
                         f"known: {', '.join(LEMMA_IDS)}")
    return _BUILDERS[lemma_id](run, _lam_value(lam))


def all_reports(run: LabRun, lam=None, lemma_ids=None) -> list[RatioReport]:
    ids = list(lemma_ids) if lemma_ids else list(LEMMA_IDS)
    return [verify_lemma_ratios(run, lid, lam) for lid in ids]


# ---------------------------------------------------------------------------
# exact-identity suites (randomized, seeded by the caller)
# ---------------------------------------------------------------------------

def identity_suite(rng, quadruples: int = 1000, c_pairs: int = 200,
                   pointy_cases: int = 200) -> list[dict]:
    """Seeded batches of the exact identities; every residual must vanish."""
    checks = []
    bad = 0
    for _ in range(quadruples):
        w, x, y, z = (tuple(rng.randint(-100, 100) for _ in range(3))
                      for _ in range(4))
        if any(det_identity_residual(w, x, y, z)):
            bad += 1
    checks.append({"name": f"determinant identity on {quadruples} quadruples",
                   "passed": bad == 0, "detail": {"failures": bad}})

    bad = 0
    for _ in range(c_pairs):
        x = tuple(rng.randint(-50, 50) for _ in range(4))
        y = tuple(rng.randint(-50, 50) for _ in range(4))
        z = tuple(rng.randint(-50, 50) for _ in range(4))
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        if any(compute_C(x, x)):
            bad += 1
        ayz = tuple(a * u + b * v for u, v in zip(y, z))
        lin = tuple(a * u + b * v for u, v in
                    zip(compute_C(x, y), compute_C(x, z)))
        if compute_C(x, ayz) != lin:
            bad += 1
        if any(c_specialization_residual(x, y)):
            bad += 1
    checks.append({"name": f"C bilinearity / C(x,x)=0 / specialization on "
                           f"{c_pairs} triples",
                   "passed": bad == 0, "detail": {"failures": bad}})

    bad = 0
    for _ in range(pointy_cases):
        a = rng.randint(-20, 20)
        b = rng.randint(-20, 20)
        if math.gcd(a, b) != 1 or (a == 0 or b == 0):
            continue
        n = rng.choice((1, 2, 3))
        x = tuple(a ** (n - k) * b ** k for k in range(n + 1))
        y = tuple(b * x[k] - a * x[k + 1] for k in range(n))
        if any(y) or max(abs(v) for v in x) != max(abs(a), abs(b)) ** n:
            bad += 1
    checks.append({"name": "degenerate transfer branch: geometric "
                           "progressions give norm(x) = norm(C)^n",
                   "passed": bad == 0, "detail": {"failures": bad}})
    return checks


def run_exact_suite(run: LabRun) -> list[dict]:
    """All exact statements tied to one run (CI-gating checks)."""
    checks = []

    checks.append({
        "name": "records primitive, norms strictly increasing",
        "passed": all(math.gcd(*run.vec[i]) == 1 for i in run.vec)
        and all(run.X[i] < run.X[i + 1] for i in range(1, run.m)),
        "detail": {},
    })
    sep = all(run.L[i + 1].strictly_below(run.L[i]) for i in range(1, run.m))
    checks.append({"name": "record qualities strictly decreasing "
                           "(disjoint enclosures)", "passed": sep,
                   "detail": {}})
    checks.append({
        "name": "consecutive records form a lattice basis of their plane",
        "passed": all(run.W_basis_exact.values()),
        "detail": {i: v for i, v in run.W_basis_exact.items() if not v},
    })

    # membership in I is the same as a rank-3 triple of records
    mismatch = []
    for i in range(2, run.m):
        rank3 = len(hnf((run.vec[i - 1], run.vec[i], run.vec[i + 1]), 4)) == 3
        if rank3 != (i in run.I):
            mismatch.append(i)
    checks.append({"name": "plane-change set matches rank-3 characterization",
                   "passed": not mismatch, "detail": {"mismatch": mismatch}})

    # V_i = V_j exactly when C(x_i,x_j) = 0, both orders
    bad = []
    if run.i0 is not None:
        for i in range(run.i0, run.m + 1):
            for j in range(i + 1, run.m + 1):
                same = run.V[i] == run.V[j]
                if same != (not any(run.C(i, j))) or \
                        same != (not any(run.C(j, i))):
                    bad.append((i, j))
    checks.append({"name": "V-plane equality matches vanishing of C",
                   "passed": not bad, "detail": {"mismatch": bad}})

    bad = []
    if run.i0 is not None:
        for i in range(run.i0, run.m):
            if i + 1 in run.V and i in run.V and run.V[i] != run.V[i + 1]:
                if max(abs(c) for c in run.C(i, i + 1)) < 1:
                    bad.append(i)
    checks.append({"name": "norm(C(i,i+1)) >= 1 whenever the V-plane moves",
                   "passed": not bad, "detail": {"failures": bad}})

    bad = []
    for i in run.vec:
        for j in run.vec:
            if i < j and any(c_specialization_residual(run.vec[i],
                                                       run.vec[j])):
                bad.append((i, j))
    checks.append({"name": "determinant-identity specialization on record "
                           "pairs", "passed": not bad,
                   "detail": {"failures": bad}})

    bad = []
    for sub in list(run.W.values()) + list(run.Wsum.values()) + list(
            run.V.values()):
        comp = sub.complement()
        if (sub.height_sup != comp.height_sup
                or sub.height_euclid_sq != comp.height_euclid_sq):
            bad.append(sub.to_json())
    checks.append({"name": "height duality H(S) = H(S-perp) on run subspaces",
                   "passed": not bad, "detail": {"failures": len(bad)}})

    rep42 = _report_42(run, _lam_value(None))
    for c in rep42.exact_checks:
        checks.append(c)
    return checks


# ---------------------------------------------------------------------------
# the gate
# ---------------------------------------------------------------------------

def theorem_gate(seq: MinimalPointSequence, consts=None, run: LabRun | None = None,
                 ctx=None) -> dict:
    """Exponent-ceiling summary: estimates vs the proved bound, plus the
    exact integrality 1 <= norm(C(i,i+1)) wherever the V-plane moves."""
    consts = consts or const_mod.compute_constants(bits=120)
    precheck = degree_precheck(seq.spec)
    applicable = seq.n == 3 and precheck["checks_passed"]
    est = exponent_estimates(seq) if len(seq.records) >= 2 else {"rows": [],
                                                                 "summary": {}}
    lam3 = consts.lambda3.mid_float()
    ceilings = {
        "one_half": 0.5,
        "sqrt2_minus_1": consts.sqrt2_minus_1.mid_float(),
        "lambda2": consts.lambda2.mid_float(),
        "lambda3": lam3,
    }
    tail = [r for r in est["rows"] if r["X_next"] > 1000]
    tail_max = max((r["uniform_hat"] for r in tail), default=None)
    out = {
        "applicable": applicable,
        "precheck": precheck,
        "estimates": est,
        "ceilings": ceilings,
        "tail_max_uniform": tail_max,
        "tail_ok": (tail_max is None or tail_max <= lam3 + 0.05),
        "c_norm_rows": [],
        "c_norm_ok": True,
    }
    if not applicable:
        out["verdict"] = ("hypothesis degree > 3 not satisfied (or n != 3); "
                          "gate not applicable")
        return out
    if run is None:
        run = LabRun(seq, ctx)
    lam_hat = {r["i"]: r["uniform_hat"] for r in est["rows"]}
    if run.i0 is not None:
        for i in range(run.i0, run.m):
            if i in run.V and i + 1 in run.V and run.V[i] != run.V[i + 1]:
                c = run.C(i, i + 1)
                norm_c = max(abs(c[0]), abs(c[1]))
                row = {"i": i, "norm_C": norm_c, "ok": norm_c >= 1}
                if i in lam_hat:
                    row["X_pow"] = run.X[i + 1] ** (1 - 2 * lam_hat[i])
                out["c_norm_rows"].append(row)
                if norm_c < 1:
                    out["c_norm_ok"] = False
    good = out["tail_ok"] and out["c_norm_ok"]
    out["verdict"] = (
        "no desk-scale observation contradicts the exponent ceiling "
        f"{lam3:.4f}" if good else
        "OBSERVATION EXCEEDS THE EXPONENT CEILING - inspect the run")
    return out
