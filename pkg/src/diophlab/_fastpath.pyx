# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled sweep kernels; contract documented in diophlab._purepath.

Must stay bit-identical to the pure-Python backend: same fixed-point
scaling, same near-half flagging, same survivor rule.
"""


def sweep_scan(long long[:] pows, int n, long long x0_lo, long long x0_hi,
               long long xmax, int shift, long long[:] mins):
    cdef long long half = (<long long>1) << (shift - 1)
    cdef long long full = (<long long>1) << shift
    cdef long long x0, v, t, r, rem, d, l, norm, a
    cdef int i, flagged
    for x0 in range(x0_lo, x0_hi + 1):
        l = 0
        norm = x0
        flagged = 0
        for i in range(n):
            v = x0 * pows[i]
            t = v + half
            r = t >> shift
            rem = t - (r << shift)
            if rem <= x0 or rem >= full - x0:
                flagged = 1
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


def sweep_survivors(long long[:] pows, int n, long long x0_lo, long long x0_hi,
                    long long xmax, int shift, long long[:] thr, list out):
    cdef long long half = (<long long>1) << (shift - 1)
    cdef long long full = (<long long>1) << shift
    cdef long long x0, v, t, r, rem, d, l, norm, a, cap
    cdef long long coords[8]
    cdef int i, flagged
    for x0 in range(x0_lo, x0_hi + 1):
        l = 0
        norm = x0
        flagged = 0
        for i in range(n):
            v = x0 * pows[i]
            t = v + half
            r = t >> shift
            rem = t - (r << shift)
            if rem <= x0 or rem >= full - x0:
                flagged = 1
            coords[i] = r
            d = v - (r << shift)
            if d < 0:
                d = -d
            if d > l:
                l = d
            a = r if r >= 0 else -r
            if a > norm:
                norm = a
        if norm > xmax + (1 if flagged else 0):
            continue
        cap = norm if norm < xmax else xmax
        if flagged or l <= thr[cap]:
            out.append((x0, tuple([coords[i] for i in range(n)]), norm, l,
                        bool(flagged)))


def box_scan(long long[:] pows, int n, long long x0_hi, long long[:] bounds,
             int shift, long long[:] mins):
    cdef long long x0, x1, x2, x3, v1, v2, v3, d1, d2, d3, n1, n2, nm, a3
    cdef long long b1, b2, b3
    if n != 3:
        _box_scan_generic(pows, n, x0_hi, bounds, shift, mins)
        return
    b1 = bounds[0]
    b2 = bounds[1]
    b3 = bounds[2]
    for x0 in range(1, x0_hi + 1):
        v1 = x0 * pows[0]
        v2 = x0 * pows[1]
        v3 = x0 * pows[2]
        for x1 in range(-b1, b1 + 1):
            d1 = v1 - (x1 << shift)
            if d1 < 0:
                d1 = -d1
            n1 = x0
            if x1 >= 0:
                if x1 > n1:
                    n1 = x1
            elif -x1 > n1:
                n1 = -x1
            for x2 in range(-b2, b2 + 1):
                d2 = v2 - (x2 << shift)
                if d2 < 0:
                    d2 = -d2
                if d2 < d1:
                    d2 = d1
                n2 = n1
                if x2 >= 0:
                    if x2 > n2:
                        n2 = x2
                elif -x2 > n2:
                    n2 = -x2
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


def _box_scan_generic(long long[:] pows, int n, long long x0_hi,
                      long long[:] bounds, int shift, long long[:] mins):
    cdef long long coords[8]
    cdef long long vs[8]
    cdef long long x0, l, norm, d, a
    cdef int i, k
    for x0 in range(1, x0_hi + 1):
        for i in range(n):
            vs[i] = x0 * pows[i]
            coords[i] = -bounds[i]
        while True:
            l = 0
            norm = x0
            for i in range(n):
                d = vs[i] - (coords[i] << shift)
                if d < 0:
                    d = -d
                if d > l:
                    l = d
                a = coords[i] if coords[i] >= 0 else -coords[i]
                if a > norm:
                    norm = a
            if l < mins[norm]:
                mins[norm] = l
            k = n - 1
            while k >= 0 and coords[k] == bounds[k]:
                coords[k] = -bounds[k]
                k -= 1
            if k < 0:
                break
            coords[k] += 1


def box_survivors(long long[:] pows, int n, long long x0_hi,
                  long long[:] bounds, int shift, long long[:] thr, list out):
    cdef long long x0, x1, x2, x3, v1, v2, v3, d1, d2, d3, n1, n2, nm, a3
    cdef long long b1, b2, b3
    if n != 3:
        _box_survivors_generic(pows, n, x0_hi, bounds, shift, thr, out)
        return
    b1 = bounds[0]
    b2 = bounds[1]
    b3 = bounds[2]
    for x0 in range(1, x0_hi + 1):
        v1 = x0 * pows[0]
        v2 = x0 * pows[1]
        v3 = x0 * pows[2]
        for x1 in range(-b1, b1 + 1):
            d1 = v1 - (x1 << shift)
            if d1 < 0:
                d1 = -d1
            n1 = x0
            if x1 >= 0:
                if x1 > n1:
                    n1 = x1
            elif -x1 > n1:
                n1 = -x1
            for x2 in range(-b2, b2 + 1):
                d2 = v2 - (x2 << shift)
                if d2 < 0:
                    d2 = -d2
                if d2 < d1:
                    d2 = d1
                n2 = n1
                if x2 >= 0:
                    if x2 > n2:
                        n2 = x2
                elif -x2 > n2:
                    n2 = -x2
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


def _box_survivors_generic(long long[:] pows, int n, long long x0_hi,
                           long long[:] bounds, int shift, long long[:] thr,
                           list out):
    cdef long long coords[8]
    cdef long long vs[8]
    cdef long long x0, l, norm, d, a
    cdef int i, k
    for x0 in range(1, x0_hi + 1):
        for i in range(n):
            vs[i] = x0 * pows[i]
            coords[i] = -bounds[i]
        while True:
            l = 0
            norm = x0
            for i in range(n):
                d = vs[i] - (coords[i] << shift)
                if d < 0:
                    d = -d
                if d > l:
                    l = d
                a = coords[i] if coords[i] >= 0 else -coords[i]
                if a > norm:
                    norm = a
            if l <= thr[norm]:
                out.append((x0, tuple([coords[i] for i in range(n)]), norm, l))
            k = n - 1
            while k >= 0 and coords[k] == bounds[k]:
                coords[k] = -bounds[k]
                k -= 1
            if k < 0:
                break
            coords[k] += 1
