"""Shared fixtures: the five desk-scale quivers and a context pool.

A ShuffleContext memoizes word products, so the whole session shares one
context per (quiver, twist, specialization, regime); tests must treat
pooled contexts as read-only.
"""

import pytest

from quivshuf.field import Specialization
from quivshuf.quiver import Quiver
from quivshuf.shuffle import ShuffleContext

QUIVER_BUILDERS = {
    # one vertex, one loop
    "jordan": lambda: Quiver(["1"], [("1", "1", "1")]),
    # one vertex, two loops
    "loop2": lambda: Quiver(["1"], [("1", "1", "1"), ("1", "1", "2")]),
    # two vertices, no edges
    "q20": lambda: Quiver(["1", "2"], []),
    # two vertices, one edge 1 -> 2
    "q21": lambda: Quiver(["1", "2"], [("1", "2", "1")]),
    # two vertices, one edge each way
    "q22": lambda: Quiver(["1", "2"], [("1", "2", "1"), ("2", "1", "2")]),
}


class ContextPool:
    def __init__(self):
        self._contexts = {}

    def get(self, quiver, twist, specialization=None, wheel_regime=None):
        if wheel_regime is None:
            wheel_regime = (
                "restricted" if specialization is not None else "three_variable"
            )
        spec_key = specialization.describe() if specialization else "id"
        key = (quiver.digest(), twist, spec_key, wheel_regime)
        ctx = self._contexts.get(key)
        if ctx is None:
            ctx = ShuffleContext(quiver, twist, specialization, wheel_regime)
            self._contexts[key] = ctx
        return ctx

    def sqrt_q(self, quiver, twist="plain"):
        return self.get(quiver, twist, Specialization.sqrt_q(quiver.ring), "restricted")


@pytest.fixture(scope="session")
def pool():
    return ContextPool()


@pytest.fixture(scope="session")
def quivers():
    return {name: build() for name, build in QUIVER_BUILDERS.items()}


@pytest.fixture(scope="session")
def jordan(quivers):
    return quivers["jordan"]


@pytest.fixture(scope="session")
def loop2(quivers):
    return quivers["loop2"]


@pytest.fixture(scope="session")
def q20(quivers):
    return quivers["q20"]


@pytest.fixture(scope="session")
def q21(quivers):
    return quivers["q21"]


@pytest.fixture(scope="session")
def q22(quivers):
    return quivers["q22"]
