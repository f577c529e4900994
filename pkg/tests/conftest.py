import pytest

from diophlab import approx, lab
from diophlab.realspec import RealContext, builtin_spec


@pytest.fixture(scope="session")
def quartic_spec():
    return builtin_spec("2^(1/4)")


@pytest.fixture(scope="session")
def quartic_rcx(quartic_spec):
    return RealContext(quartic_spec)


@pytest.fixture(scope="session")
def sqrt2_spec():
    return builtin_spec("sqrt2")


@pytest.fixture(scope="session")
def seq_1e4(quartic_spec):
    return approx.minimal_points(quartic_spec, 3, 10**4)


@pytest.fixture(scope="session")
def run_1e4(seq_1e4):
    return lab.build_lab_run(seq_1e4)


@pytest.fixture(scope="session")
def seq_1e6(quartic_spec):
    # shared by the large-scale acceptance criteria
    return approx.minimal_points(quartic_spec, 3, 10**6)


@pytest.fixture(scope="session")
def run_1e6(seq_1e6):
    return lab.build_lab_run(seq_1e6)
