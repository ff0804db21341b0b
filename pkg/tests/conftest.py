import math
import time
from functools import lru_cache

import pytest

from ghilb.fan import build_fan
from ghilb.gset import enumerate_all
from ghilb.lattice import GroupAction

ACCEPTANCE_LINES = []


def sweep_pairs(r_max):
    return [(r, a) for r in range(5, r_max + 1) for a in range(2, r)
            if 2 * a < r and math.gcd(r, a) == 1]


@lru_cache(maxsize=None)
def action(r, a):
    return GroupAction.from_input(r, a)


@lru_cache(maxsize=None)
def oracle(r, a):
    return enumerate_all(action(r, a))


@lru_cache(maxsize=None)
def fan(r, a):
    return build_fan(action(r, a))


@pytest.fixture(scope="session")
def sweep30():
    """Enumerations and fans for every canonical (r, a) with r <= 30, with wall time."""
    start = time.perf_counter()
    data = {(r, a): (oracle(r, a), fan(r, a)) for r, a in sweep_pairs(30)}
    return data, time.perf_counter() - start


@pytest.fixture
def act52():
    return action(5, 2)


@pytest.fixture
def act145():
    return action(14, 5)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
