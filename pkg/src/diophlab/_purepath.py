"""Pure-Python sweep kernels (fallback for diophlab._fastpath).

Both backends implement the same integer fixed-point contract:

* `pows[i]` approximates xi**(i+1) scaled by 2**shift with absolute error
  strictly below one unit, so `x0*pows[i]` is within `x0` units of the true
  scaled value.
* `mins[norm]` collects the minimum observed scaled quality per sup-norm;
  callers widen it into a pruning threshold that provably keeps every
  potential record.
* near-half rounding decisions are never trusted: candidates whose
  fractional part lies within `x0` units of 1/2 are flagged and must be
  recomputed exactly by the caller.

Everything is plain integer arithmetic so results are bit-identical to the
compiled backend.
"""

from __future__ import annotations

INT64_MAX = (1 << 63) - 1


def sweep_scan(pows, n, x0_lo, x0_hi, xmax, shift, mins):
    """Fill `mins` with per-norm minima over rounded candidates (pass 1)."""
    half = 1 << (shift - 1)
    full = 1 << shift
    for x0 in range(x0_lo, x0_hi + 1):
        l = 0
        norm = x0
        flagged = False
        for i in range(n):
            v = x0 * pows[i]
            t = v + half
            r = t >> shift
            rem = t - (r << shift)
            if rem <= x0 or rem >= full - x0:
                flagged = True
                break
            d = v - (r << shift)
            if d < 0:
                d = -d
            if d > l:
                l = d
            if r < 0:
                r = -r
            if r > norm:
                norm = r
        if flagged or norm > xmax:
            continue
        if l < mins[norm]:
            mins[norm] = l


def sweep_survivors(pows, n, x0_lo, x0_hi, xmax, shift, thr, out):
    """Append (x0, r1..rn, norm, l, flag) rows surviving the threshold."""
    half = 1 << (shift - 1)
    full = 1 << shift
    for x0 in range(x0_lo, x0_hi + 1):
        l = 0
        norm = x0
        flagged = False
        coords = []
        for i in range(n):
            v = x0 * pows[i]
            t = v + half
            r = t >> shift
            rem = t - (r << shift)
            if rem <= x0 or rem >= full - x0:
                flagged = True
            coords.append(r)
            d = v - (r << shift)
            if d < 0:
                d = -d
            if d > l:
                l = d
            a = r if r >= 0 else -r
            if a > norm:
                norm = a
        # a flagged rounding may be off by one, so give its norm one unit of
        # slack here; the caller recomputes flagged candidates exactly
        if norm > xmax + (1 if flagged else 0):
            continue
        if flagged or l <= thr[min(norm, xmax)]:
            out.append((x0, tuple(coords), norm, l, flagged))


def box_scan(pows, n, x0_hi, bounds, shift, mins):
    """Per-norm minima over the box 1 <= x0 <= x0_hi, |x_i| <= bounds[i]."""
    for x0 in range(1, x0_hi + 1):
        vs = [x0 * pows[i] for i in range(n)]
        if n == 3:
            v1, v2, v3 = vs
            b1, b2, b3 = bounds[0], bounds[1], bounds[2]
            for x1 in range(-b1, b1 + 1):
                d1 = v1 - (x1 << shift)
                if d1 < 0:
                    d1 = -d1
                n1 = x0 if x0 >= abs(x1) else abs(x1)
                for x2 in range(-b2, b2 + 1):
                    d2 = v2 - (x2 << shift)
                    if d2 < 0:
                        d2 = -d2
                    if d2 < d1:
                        d2 = d1
                    n2 = n1 if n1 >= abs(x2) else abs(x2)
                    for x3 in range(-b3, b3 + 1):
                        d3 = v3 - (x3 << shift)
                        if d3 < 0:
                            d3 = -d3
                        if d3 < d2:
                            d3 = d2
                        a3 = x3 if x3 >= 0 else -x3
                        nm = n2 if n2 >= a3 else a3
                        if d3 < mins[nm]:
                            mins[nm] = d3
        else:
            _box_scan_generic(vs, n, bounds, shift, mins, x0)


def _box_scan_generic(vs, n, bounds, shift, mins, x0):
    coords = [-bounds[i] for i in range(n)]
    while True:
        l = 0
        norm = x0
        for i in range(n):
            d = vs[i] - (coords[i] << shift)
            if d < 0:
                d = -d
            if d > l:
                l = d
            a = abs(coords[i])
            if a > norm:
                norm = a
        if l < mins[norm]:
            mins[norm] = l
        k = n - 1
        while k >= 0 and coords[k] == bounds[k]:
            coords[k] = -bounds[k]
            k -= 1
        if k < 0:
            return
        coords[k] += 1


def box_survivors(pows, n, x0_hi, bounds, shift, thr, out):
    """Append (x0, coords, norm, l) for every vector under the threshold."""
    for x0 in range(1, x0_hi + 1):
        vs = [x0 * pows[i] for i in range(n)]
        if n == 3:
            v1, v2, v3 = vs
            b1, b2, b3 = bounds[0], bounds[1], bounds[2]
            for x1 in range(-b1, b1 + 1):
                d1 = v1 - (x1 << shift)
                if d1 < 0:
                    d1 = -d1
                n1 = x0 if x0 >= abs(x1) else abs(x1)
                for x2 in range(-b2, b2 + 1):
                    d2 = v2 - (x2 << shift)
                    if d2 < 0:
                        d2 = -d2
                    if d2 < d1:
                        d2 = d1
                    n2 = n1 if n1 >= abs(x2) else abs(x2)
                    for x3 in range(-b3, b3 + 1):
                        d3 = v3 - (x3 << shift)
                        if d3 < 0:
                            d3 = -d3
                        if d3 < d2:
                            d3 = d2
                        a3 = x3 if x3 >= 0 else -x3
                        nm = n2 if n2 >= a3 else a3
                        if d3 <= thr[nm]:
                            out.append((x0, (x1, x2, x3), nm, d3))
        else:
            _box_survivors_generic(vs, n, bounds, shift, thr, out, x0)


def _box_survivors_generic(vs, n, bounds, shift, thr, out, x0):
    coords = [-bounds[i] for i in range(n)]
    while True:
        l = 0
        norm = x0
        for i in range(n):
            d = vs[i] - (coords[i] << shift)
            if d < 0:
                d = -d
            if d > l:
                l = d
            a = abs(coords[i])
            if a > norm:
                norm = a
        if l <= thr[norm]:
            out.append((x0, tuple(coords), norm, l))
        k = n - 1
        while k >= 0 and coords[k] == bounds[k]:
            coords[k] = -bounds[k]
            k -= 1
        if k < 0:
            return
        coords[k] += 1
