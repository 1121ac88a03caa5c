import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from relladder import Preset

fractions01 = st.integers(0, 12).map(lambda k: Fraction(k, 12))
small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=20)
presets = st.sampled_from(list(Preset))


@pytest.fixture
def rng():
    return random.Random(12345)
