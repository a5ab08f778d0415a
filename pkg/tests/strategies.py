"""Hypothesis strategies shared by the property tests."""

from fractions import Fraction

from hypothesis import strategies as st

from flatcomp.harness import InstanceGrid, enumerate_spaces
from flatcomp.quantale import INF, Cost

finite_costs = st.builds(
    lambda n, d: Cost(Fraction(n, d)),
    st.integers(min_value=0, max_value=60),
    st.integers(min_value=1, max_value=12),
)
costs = st.one_of(finite_costs, st.just(INF))

_SMALL = InstanceGrid(3)
SPACES_3 = list(enumerate_spaces(_SMALL, sizes=(1, 2, 3), up_to_iso=True))
spaces = st.sampled_from(SPACES_3)
