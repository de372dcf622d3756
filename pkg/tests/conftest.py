import time

import pytest

from g2census.census import RepresentationCensus
from g2census.presentation import builtin

# Known V4-valued classes: values of (a, b, c, t1..t5); t6 = t7 = 1.
REFERENCE_V4 = {
    "rho1": ("1", "1", "1", "c", "b", "1", "a", "1"),
    "rho2": ("a", "1", "1", "c", "b", "1", "a", "a"),
    "rho3": ("a", "b", "1", "c", "b", "b", "a", "a"),
    "rho4": ("a", "b", "c", "c", "b", "b", "a", "a"),
}


def reference_values(group, row):
    names = dict(zip(("a", "b", "c", "t1", "t2", "t3", "t4", "t5"), row))
    names.update(t6="1", t7="1")
    p = builtin("joyce-ex3")
    return tuple(group.names.index(names[g]) for g in p.generators)


class Timed:
    def __init__(self, est, seconds):
        self.est = est
        self.seconds = seconds


def _fit(name, target, **kw):
    t0 = time.perf_counter()
    est = RepresentationCensus(target=target, **kw).fit(builtin(name))
    return Timed(est, time.perf_counter() - t0)


@pytest.fixture(scope="session")
def joyce_s4():
    return _fit("joyce-ex3", "S4")


@pytest.fixture(scope="session")
def joyce_v4():
    return _fit("joyce-ex3", "V4")


@pytest.fixture(scope="session")
def t3_q8():
    return _fit("t3-k3", "Q8")
