import sys
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from qvariant.equations import Family, ParamSet
from qvariant.sampling import random_params, rng_for

settings.register_profile(
    "qvariant",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("qvariant")


def rationals(max_height: int = 64, positive: bool = True):
    num = st.integers(1, max_height) if positive else st.integers(-max_height, max_height)
    return st.builds(Fraction, num, st.integers(1, max_height))


@st.composite
def param_sets(draw, fam: Family):
    """Admissible parameter sets, drawn through the library sampler from a hypothesis seed."""
    seed = draw(st.integers(0, 2**32 - 1))
    return random_params(fam, rng_for(seed, "hypothesis", fam.value))


@pytest.fixture
def c12_unit():
    """The C12 set with q = 1/4 and every other generator 1."""
    one = Fraction(1)
    return ParamSet(family=Family.C12, q=Fraction(1, 4), s=Fraction(1, 2), t1=one, t2=one,
                    A1=one, A2=one, L1=one, a1=one, Lam=one)


@pytest.fixture
def rng():
    return rng_for(2024, "tests")


def draw(fam: Family, tag: str, i: int = 0) -> ParamSet:
    return random_params(fam, rng_for(11, tag, i))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
