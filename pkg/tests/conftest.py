from fractions import Fraction

import pytest
from hypothesis import strategies as st

from fixlab import MeasureSpace

F = Fraction


@pytest.fixture
def pair_space():
    return MeasureSpace.uniform(2)


@pytest.fixture
def scalar_space():
    return MeasureSpace.uniform(1)


@pytest.fixture
def four_space():
    return MeasureSpace.uniform(4)


def rationals(lo=-4, hi=4, max_den=60):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    ).filter(lambda q: lo <= q <= hi)


unit_rationals = st.builds(lambda k, d: Fraction(k % (d + 1), d), st.integers(0, 10**6), st.integers(1, 200))


@st.composite
def spaces(draw, min_atoms=1, max_atoms=5):
    n = draw(st.integers(min_atoms, max_atoms))
    weights = draw(st.lists(st.builds(Fraction, st.integers(1, 9), st.integers(1, 6)), min_size=n, max_size=n))
    return MeasureSpace.from_weights(weights)


@st.composite
def functions_on(draw, space, lo=-3, hi=3):
    return space.function(draw(st.lists(rationals(lo, hi), min_size=space.size, max_size=space.size)))
