import pytest

from diophlab import bench, kernels
from diophlab.realspec import RealContext, builtin_spec

HAVE_CYTHON = kernels.BACKEND == "cython"

pytestmark = pytest.mark.skipif(not HAVE_CYTHON,
                                reason="compiled backend not built; nothing "
                                       "to compare against")


@pytest.mark.parametrize("name,n,bound", [
    ("2^(1/4)", 3, 12),
    ("3^(1/4)", 3, 10),
    ("x^4-x-1", 3, 12),
    ("sqrt2", 1, 150),
    ("sqrt2", 2, 60),
    ("golden", 1, 100),
])
def test_box_backends_identical(name, n, bound):
    rcx = RealContext(builtin_spec(name))
    fast, s1 = kernels.run_box(rcx, n, bound, backend="cython")
    slow, s2 = kernels.run_box(rcx, n, bound, backend="python")
    assert s1 == s2
    assert fast == slow


@pytest.mark.parametrize("name,n,xmax", [
    ("2^(1/4)", 3, 3000),
    ("3^(1/4)", 3, 1500),
    ("sqrt2", 1, 5000),
    ("golden", 1, 2500),
])
def test_sweep_backends_identical(name, n, xmax):
    rcx = RealContext(builtin_spec(name))
    fast, s1 = kernels.run_sweep(rcx, n, xmax, backend="cython")
    slow, s2 = kernels.run_sweep(rcx, n, xmax, backend="python")
    assert s1 == s2
    assert fast == slow


def test_scaled_powers_error_bound():
    rcx = RealContext(builtin_spec("2^(1/4)"))
    shift = kernels.choose_shift(rcx, 3, 10**6)
    pows = kernels.scaled_powers(rcx, 3, shift)
    for i, p in enumerate(pows, start=1):
        enc = rcx.power(i, shift + 24)
        lo = enc.lo.as_fraction() * (1 << shift)
        hi = enc.hi.as_fraction() * (1 << shift)
        assert lo - 1 < p < hi + 1


def test_thresholds_monotone_prefix():
    mins = kernels.array("q", [kernels.INT64_MAX, 50, 70, 20, 90])
    thr = kernels.build_thresholds(mins, err=2)
    assert list(thr) == [kernels.INT64_MAX, 58, 58, 28, 28]


def test_bench_smoke(capsys):
    # tiny benchmark run exercising both backends and their equality check
    rcx = RealContext(builtin_spec("2^(1/4)"))
    a, _ = kernels.run_box(rcx, 3, 8, backend="cython")
    b, _ = kernels.run_box(rcx, 3, 8, backend="python")
    assert a == b
    assert bench._available_backends()[0] == "cython"
