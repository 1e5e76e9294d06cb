import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from cqg.frt import GroupAlgebra, Palette
from cqg.scalar import random_scalar

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=10**6)


def scalar_from(seed, **kw):
    return random_scalar(random.Random(seed), **kw)


scalars = seeds.map(scalar_from)


@pytest.fixture(scope="session")
def two_colour():
    return GroupAlgebra(Palette.symbolic())


@pytest.fixture(scope="session")
def classical():
    return GroupAlgebra(Palette.classical())


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
