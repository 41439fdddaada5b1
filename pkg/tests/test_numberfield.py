from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from clustermod import linalg
from clustermod.numberfield import RATIONALS, NumberField, ReducibleError, make_field_algebra

K2 = make_field_algebra([-2, 0, 1])
CUBIC = make_field_algebra([-1, -1, 0, 1])


def test_sqrt2_traces():
    assert K2.degree == 2
    assert K2.trace(K2.one) == 2
    assert K2.trace(K2.gen()) == 0
    assert K2.gram == [[2, 0], [0, 4]]


def test_rationals():
    Q = make_field_algebra([-1, 1])
    assert Q == RATIONALS and Q.degree == 1
    assert Q.trace(Q(Fraction(3, 7))) == Fraction(3, 7)


@pytest.mark.parametrize("poly", [[-1, 0, 1], [1, 0, 2, 0, 1], [0, 1, 1], [2, -3, 1]])
def test_reducible_rejected(poly):
    with pytest.raises(ReducibleError):
        make_field_algebra(poly)


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        NumberField([1, 2])


@pytest.mark.parametrize("poly", [[-2, 0, 0, 0, 0, 1], [1, 0, 0, 1, 0, 0, 1], [-2, 0, 0, 1], [-1, -1, 0, 1]])
def test_higher_degree_irreducible_accepted(poly):
    K = make_field_algebra(poly)
    assert K.degree == len(poly) - 1
    assert linalg.det(K.gram) != 0


def test_generator_satisfies_minpoly():
    for K in (K2, CUBIC, make_field_algebra([-2, 0, 0, 0, 0, 1])):
        a = K.gen()
        value = K.zero
        power = K.one
        for c in K.minpoly:
            value = value + power * c
            power = power * a
        assert not value


coords = st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=5), min_size=3, max_size=3)


@given(coords, coords, coords)
def test_field_axioms_cubic(a, b, c):
    a, b, c = CUBIC(a), CUBIC(b), CUBIC(c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b - b == a
    assume(b)
    assert (a * b) / b == a
    assert b * b.inverse() == CUBIC.one
    assert (1 / b) * b == 1


@given(coords, coords)
def test_trace_is_linear_and_symmetric(a, b):
    a, b = CUBIC(a), CUBIC(b)
    assert (a + b).trace() == a.trace() + b.trace()
    assert (a * b).trace() == (b * a).trace()


def test_json_roundtrip():
    assert NumberField.from_json(CUBIC.to_json()) == CUBIC
