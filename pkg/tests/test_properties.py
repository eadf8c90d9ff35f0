import random

from hypothesis import given, settings
from hypothesis import strategies as st

import laws

CASES = settings(max_examples=1000, deadline=None)
rngs = st.integers(0, 2**32 - 1).map(random.Random)


@CASES
@given(rngs, st.integers(0, 5), st.integers(1, 3))
def test_series_ring_axioms(rng, order, nvars):
    a, b, c = (laws.random_series(rng, nvars, order) for _ in range(3))
    laws.law_ring_axioms(a, b, c)


@CASES
@given(rngs, st.integers(0, 5), st.integers(1, 3))
def test_units_invert(rng, order, nvars):
    laws.law_unit_inverse(laws.random_series(rng, nvars, order, unit=True))


@CASES
@given(rngs, st.integers(0, 5), st.integers(0, 5))
def test_truncation_is_a_ring_map(rng, order, lower):
    a, b = (laws.random_series(rng, 2, order) for _ in range(2))
    laws.law_truncation_is_a_homomorphism(a, b, min(lower, order))


@CASES
@given(rngs, st.integers(2, 4), st.integers(0, 2), st.data())
def test_matrix_mutation_is_an_involution(rng, n, frozen, data):
    rows = laws.random_exchange(rng, n, frozen)
    laws.law_mutation_involution(rows, data.draw(st.integers(0, n - 1)))


@CASES
@given(rngs, st.integers(2, 4), st.data())
def test_eta_is_an_involution(rng, n, data):
    rows = laws.random_exchange(rng, n, 0)
    k = data.draw(st.integers(0, n - 1))
    v = data.draw(st.lists(st.fractions(max_denominator=12, min_value=-20, max_value=20),
                           min_size=n, max_size=n))
    laws.law_eta_involution(rows, k, v)


@CASES
@given(rngs)
def test_crossing_back_undoes_crossing(rng):
    laws.law_inverse_crossing(*laws.random_crossing_case(rng))
