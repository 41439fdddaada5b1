import pytest
from hypothesis import given, strategies as st

from clustermod.exchange_matrix import ExchangeMatrix, Symmetrizer, mutate_matrix
from clustermod.valued_quiver import (QuiverError, ValuedQuiver, check_mutable_at, from_matrix, mutate_quiver,
                                      mutate_quiver_sequence, to_matrix)
from strategies import exchange_matrices


def drawn_quiver(edges):
    """Build from edges drawn between i < j, each labelled in the drawing
    order ``(d_ij, d_ji)`` and oriented ``i -> j`` or ``j -> i``."""
    arrows = []
    for i, j, (dij, dji), forward in edges:
        if forward:
            arrows.append((i, j, (dij, dji)))
        else:
            arrows.append((j, i, (dji, dij)))
    return ValuedQuiver.build(["1", "2", "3"], arrows, symmetrizer={"1": 1, "2": 2, "3": 1})


A, B = 2, 3
PICTURE_1 = drawn_quiver([
    ("1", "2", (A, 4), True), ("2", "3", (6, B), True),
    ("1", "3", (3 * A, 2 * B), False), ("1", "3", (6 * A, 4 * B), True), ("1", "3", (6 * A, 4 * B), False)])
PICTURE_2 = drawn_quiver([
    ("1", "2", (A, 4), False), ("2", "3", (6, B), False),
    ("1", "3", (3 * A, 2 * B), False), ("1", "3", (6 * A, 4 * B), True)])
PICTURE_3 = drawn_quiver([
    ("1", "2", (A, 4), True), ("2", "3", (6, B), True), ("1", "3", (3 * A, 2 * B), False)])


def test_worked_example_pictures_are_symmetrized_by_121():
    for Q in (PICTURE_1, PICTURE_2, PICTURE_3):
        assert Q.symmetrizer == {"1": 1, "2": 2, "3": 1}
    # parallel arrows 3 -> 1 are merged into one fully valued arrow
    assert PICTURE_1.arrows[("3", "1")] == (18, 18)
    assert PICTURE_1.arrows[("1", "3")] == (12, 12)


def test_worked_example_chain():
    Q2 = mutate_quiver(PICTURE_1, 2)
    assert Q2 == PICTURE_2
    assert mutate_quiver(Q2, 2) == PICTURE_3


def test_check_mutable_at_worked_example():
    assert check_mutable_at(PICTURE_1, 2)
    assert not check_mutable_at(PICTURE_1, 1)
    with pytest.raises(QuiverError):
        mutate_quiver(PICTURE_1, 1)
    with pytest.raises(QuiverError):
        check_mutable_at(PICTURE_1, 7)


def test_frozen_point_is_rejected():
    Q = ValuedQuiver.build(["1", "2"], [("1", "2", (1, 1))], frozen=["2"])
    assert check_mutable_at(Q, 1)
    with pytest.raises(QuiverError):
        check_mutable_at(Q, 2)


def test_from_matrix_examples():
    Q = from_matrix(ExchangeMatrix(((0, 1), (-2, 0))))
    assert dict(Q.arrows) == {("1", "2"): (1, 2)}
    assert Q.symmetrizer == {"1": 1, "2": 2}
    assert not from_matrix(ExchangeMatrix(((0, 0), (0, 0)))).arrows
    with pytest.raises(QuiverError):
        from_matrix(ExchangeMatrix(((0, 1), (-2, 0))), Symmetrizer((1, 1)))


def test_to_matrix_examples():
    Q = ValuedQuiver.build(["1", "2"], [("1", "2", (1, 2))])
    assert to_matrix(Q).entries == ((0, 1), (-2, 0))
    assert to_matrix(ValuedQuiver.build(["1", "2", "3"], [])).entries == ((0, 0, 0),) * 3
    two_cycle = ValuedQuiver.build(["1", "2", "3"], [("1", "3", (1, 1)), ("3", "1", (1, 1))])
    with pytest.raises(QuiverError, match="two-cycle"):
        to_matrix(two_cycle)


def test_simple_mutations():
    Q = ValuedQuiver.build(["1", "2"], [("1", "2", (1, 2))])
    assert dict(mutate_quiver(Q, 1).arrows) == {("2", "1"): (2, 1)}
    A3 = ValuedQuiver.build(["1", "2", "3"], [("1", "2", (1, 1)), ("2", "3", (1, 1))])
    assert dict(mutate_quiver(A3, 2).arrows) == {("2", "1"): (1, 1), ("3", "2"): (1, 1), ("1", "3"): (1, 1)}


def test_invalid_quivers():
    with pytest.raises(QuiverError):
        ValuedQuiver.build(["1"], [("1", "1", (1, 1))])
    with pytest.raises(QuiverError):
        ValuedQuiver.build(["1", "2"], [("1", "2", (1, 2))], symmetrizer={"1": 1, "2": 1})
    with pytest.raises(QuiverError):
        ValuedQuiver.build(["1", "2"], [("1", "2", (1, -2))])
    with pytest.raises(QuiverError):
        ValuedQuiver.build(["1", "2"], [("1", "2", (1, 1))], frozen=["1", "2"], extended=True)


@given(exchange_matrices())
def test_roundtrip_matrix(rows):
    B = ExchangeMatrix(rows)
    assert to_matrix(from_matrix(B)) == B


@given(exchange_matrices(), st.data())
def test_oracle_equivalence_and_involution(rows, data):
    B = ExchangeMatrix(rows)
    k = data.draw(st.integers(1, B.n))
    Q = from_matrix(B)
    Q1 = mutate_quiver(Q, k)
    assert Q1.is_two_acyclic()
    assert to_matrix(Q1) == mutate_matrix(B, k)
    assert mutate_quiver(Q1, k) == Q
    assert Q1.symmetrizer == Q.symmetrizer


def test_two_cycles_never_increase():
    Q = PICTURE_1
    assert len(mutate_quiver(Q, 2).two_cycles()) <= len(Q.two_cycles())
    Q2 = mutate_quiver(Q, 2)
    assert len(mutate_quiver(Q2, 2).two_cycles()) <= len(Q2.two_cycles())


def test_frozen_frozen_arrows_dropped_in_extended_quiver():
    B = ExchangeMatrix(((0,), (1,), (-1,)))
    Q = from_matrix(B)
    Q1 = mutate_quiver(Q, 1)
    assert ("3", "2") not in Q1.arrows and ("2", "3") not in Q1.arrows
    assert to_matrix(Q1) == mutate_matrix(B, 1)


def test_json_and_dot():
    Q = PICTURE_1
    assert ValuedQuiver.from_json(Q.to_json()) == Q
    dot = Q.to_dot()
    assert dot.startswith("digraph") and '"1" -> "2" [label="2,4"];' in dot
    assert Q.to_dot() == dot
    assert mutate_quiver_sequence(Q, ["2", "2"]) == PICTURE_3
