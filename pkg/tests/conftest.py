import os

import pytest
from hypothesis import settings

from flatcomp.enriched import QuasiMetricSpace, validate_space
from flatcomp.preorders import validate_preorder

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

GOLDEN = os.path.join(os.path.dirname(__file__), "golden")


def space(objects, rows):
    return validate_space(objects, [[str(v) for v in r] for r in rows])


@pytest.fixture
def a2() -> QuasiMetricSpace:
    return space(["a", "b"], [[0, 1], [2, 0]])


@pytest.fixture
def z2() -> QuasiMetricSpace:
    return space(["u", "v"], [[0, 0], [3, 0]])


@pytest.fixture
def p3():
    return validate_preorder(["x", "y", "z"], [("x", "z"), ("y", "z")])


@pytest.fixture
def golden_dir():
    return GOLDEN
