import math

import numpy as np
import pytest
from hypothesis import settings

from chainkit import PolygonalChain

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# lines collected by the acceptance suite, printed in the terminal summary
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


SQRT2 = math.sqrt(2.0)


@pytest.fixture
def Q():
    return PolygonalChain([(0, 0), (0, 1), (1, 1), (1, 0)])


@pytest.fixture
def zigzag():
    return PolygonalChain([(0, 0), (1, 1), (1, 0), (0, 1)])


def random_chain(rng, n):
    return PolygonalChain(rng.random((n, 2)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
