"""Hypothesis strategies shared by the test modules."""

import random

from hypothesis import strategies as st

from oracles import random_skew_symmetrizable


@st.composite
def exchange_matrices(draw, max_n=6, max_frozen=2, bound=3):
    n = draw(st.integers(1, max_n))
    frozen = draw(st.integers(0, max_frozen))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_skew_symmetrizable(random.Random(seed), n, frozen, bound)
