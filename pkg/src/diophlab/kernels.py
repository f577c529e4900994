"""Backend selection and fixed-point plumbing for the candidate scans.

The compiled backend (diophlab._fastpath, Cython) is picked at import when
available; diophlab._purepath implements the identical integer contract in
pure Python.  `python -m diophlab.bench` compares the two.
"""

from __future__ import annotations

from array import array

from . import _purepath

try:  # pragma: no cover - exercised indirectly
    from . import _fastpath as _selected

    BACKEND = "cython"
except ImportError:  # pragma: no cover
    _selected = _purepath
    BACKEND = "python"

INT64_MAX = (1 << 63) - 1

#: widest fixed-point shift the int64 kernels may use
MAX_SHIFT = 40
MIN_SHIFT = 16


def backend_module(name: str | None = None):
    if name in (None, "auto"):
        return _selected
    if name == "python":
        return _purepath
    if name == "cython":
        from . import _fastpath

        return _fastpath
    raise ValueError(f"unknown kernel backend {name!r}")


def choose_shift(rcx, n: int, max_x0: int) -> int:
    """Largest shift keeping x0 * pows[i] safely inside int64."""
    t = rcx.abs_bound_log2()
    s = 61 - t * n - max(max_x0, 1).bit_length()
    s = min(s, MAX_SHIFT)
    if s < MIN_SHIFT:
        raise ValueError("value magnitude too large for the fixed-point sweep")
    return s


def scaled_powers(rcx, n: int, shift: int) -> array:
    """pows[i] = round(xi**(i+1) * 2**shift), absolute error < 1 unit."""
    out = array("q", [0] * n)
    for i in range(1, n + 1):
        enc = rcx.power(i, shift + 8)
        mid = enc.mid().as_fraction()
        out[i - 1] = round(mid * (1 << shift))
    return out


def build_thresholds(mins: array, err: int) -> array:
    """Prefix-minimum of `mins` widened by the worst-case fixed-point error.

    A candidate with scaled quality above thr[norm] provably cannot be a
    minimal-point record (nor tie one), see the backend contract.
    """
    thr = array("q", [0] * len(mins))
    running = INT64_MAX
    for i, v in enumerate(mins):
        if v < running:
            running = v
        thr[i] = min(running + 4 * err, INT64_MAX) if running < INT64_MAX else INT64_MAX
    return thr


def coordinate_bounds(rcx, n: int, x0_hi: int) -> list[int]:
    """Per-coordinate box bounds that contain every possible record vector
    with first coordinate up to x0_hi (|x_i| <= x0*|xi|^i + 1/2 for clamped
    minimizers, widened by a unit of rounding slack)."""
    out = []
    for i in range(1, n + 1):
        hi = abs(rcx.power(i, 16).hi.as_fraction())
        lo = abs(rcx.power(i, 16).lo.as_fraction())
        out.append(int(x0_hi * max(hi, lo, 1)) + 2)
    return out


def _fresh_mins(size: int) -> array:
    mins = array("q", bytes(8 * size))
    for i in range(size):
        mins[i] = INT64_MAX
    return mins


def run_sweep(rcx, n: int, x_max: int, backend=None):
    """Rounded-candidate survivors over first coordinates 1..x_max.

    Returns (survivors, shift) where survivors are
    (x0, coords, norm, scaled_l, flagged) rows; flagged rows and every row
    at or below the pruning threshold are kept.
    """
    mod = backend_module(backend)
    shift = choose_shift(rcx, n, x_max)
    pows = scaled_powers(rcx, n, shift)
    norm_cap = max([x_max] + coordinate_bounds(rcx, n, x_max))
    mins = _fresh_mins(norm_cap + 1)
    mod.sweep_scan(pows, n, 1, x_max, norm_cap, shift, mins)
    thr = build_thresholds(mins, x_max)
    out: list = []
    mod.sweep_survivors(pows, n, 1, x_max, norm_cap, shift, thr, out)
    return out, shift


#: total box volume the oracle prefilter will enumerate
BOX_VOLUME_LIMIT = 600_000_000


def run_box(rcx, n: int, x0_hi: int, backend=None):
    """Exhaustive-box survivors over 1 <= x0 <= x0_hi with per-coordinate
    bounds wide enough to contain every possible record vector."""
    mod = backend_module(backend)
    shift = choose_shift(rcx, n, x0_hi)
    pows = scaled_powers(rcx, n, shift)
    bnds = coordinate_bounds(rcx, n, x0_hi)
    volume = x0_hi
    for b in bnds:
        volume *= 2 * b + 1
    if volume > BOX_VOLUME_LIMIT:
        raise ValueError(f"oracle box volume {volume} above the enumeration "
                         f"guard {BOX_VOLUME_LIMIT}")
    bounds = array("q", bnds)
    norm_cap = max([x0_hi] + bnds)
    mins = _fresh_mins(norm_cap + 1)
    mod.box_scan(pows, n, x0_hi, bounds, shift, mins)
    thr = build_thresholds(mins, x0_hi)
    out: list = []
    mod.box_survivors(pows, n, x0_hi, bounds, shift, thr, out)
    return out, shift
