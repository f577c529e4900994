"""Benchmark the compiled kernels against the pure-Python fallback.

Run as `python -m diophlab.bench`.  Both backends must produce identical
survivor sets; this script times them and double-checks that equality.
"""

from __future__ import annotations

import sys
import time

from . import kernels
from .realspec import RealContext, builtin_spec


def _available_backends():
    names = ["python"]
    try:
        kernels.backend_module("cython")
        names.insert(0, "cython")
    except ImportError:
        pass
    return names


def _time(fn, repeat=3):
    best = None
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def main(argv=None) -> int:
    rcx = RealContext(builtin_spec("2^(1/4)"))
    rows = []
    baseline = {}
    for label, runner, arg in (
        ("box n=3, bound=25", kernels.run_box, 25),
        ("box n=3, bound=40", kernels.run_box, 40),
        ("sweep n=3, xmax=10^5", kernels.run_sweep, 10**5),
        ("sweep n=3, xmax=10^6", kernels.run_sweep, 10**6),
    ):
        for backend in _available_backends():
            dt, (survivors, _shift) = _time(
                lambda: runner(rcx, 3, arg, backend=backend),
                repeat=1 if backend == "python" else 3)
            key = label
            if key in baseline:
                same = baseline[key] == survivors
            else:
                baseline[key] = survivors
                same = True
            rows.append((label, backend, dt, len(survivors), same))
    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'backend':<8} {'seconds':>10}  "
          f"{'survivors':>9}  identical")
    for label, backend, dt, count, same in rows:
        print(f"{label:<{width}}  {backend:<8} {dt:>10.4f}  {count:>9}  "
              f"{'yes' if same else 'NO'}")
    if any(not r[4] for r in rows):
        print("backend results differ!", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
