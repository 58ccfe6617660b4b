"""Sparse labelled operators and exact row reduction."""

from fractions import Fraction as F

import pytest

from cherednik_lab.linalg import OperatorMatrix, rref


def op_from_dense(source, target, rows):
    index = {lab: i for i, lab in enumerate(source)}
    return OperatorMatrix.from_action(
        source,
        target,
        lambda lab: {
            t: rows[r][index[lab]]
            for r, t in enumerate(target)
            if rows[r][index[lab]]
        },
    )


def test_compose_matches_dense():
    a = op_from_dense("xy", "pq", [[F(1), F(2)], [F(0), F(3)]])
    b = op_from_dense("uv", "xy", [[F(1), F(1)], [F(1), F(-1)]])
    ab = a.compose(b)
    assert ab.to_dense() == [[F(3), F(-1)], [F(3), F(-3)]]


def test_compose_basis_mismatch():
    a = op_from_dense("xy", "pq", [[F(1), F(0)], [F(0), F(1)]])
    with pytest.raises(ValueError):
        a.compose(a)


def test_identity_apply_column():
    e = OperatorMatrix.identity(("a", "b"))
    assert e.apply({"a": F(2)}) == {"a": F(2)}
    assert e.column(1) == {"b": F(1)}


def test_arithmetic_and_zero_dropping():
    a = op_from_dense("x", "pq", [[F(1)], [F(2)]])
    b = op_from_dense("x", "pq", [[F(-1)], [F(2)]])
    s = a.add(b)
    assert s.column(0) == {"q": F(4)}
    assert a.sub(a).is_zero()
    assert a.scale(F(0)).is_zero()


def test_same_mapping_across_truncations():
    small = op_from_dense("x", ("p",), [[F(5)]])
    big = op_from_dense("x", ("p", "q"), [[F(5)], [F(0)]])
    assert small.same_mapping(big)
    other = op_from_dense("x", ("p", "q"), [[F(5)], [F(1)]])
    assert not small.same_mapping(other)
    lab, got, want = small.first_discrepancy(other)
    assert lab == "x" and got == {"p": F(5)} and want == {"p": F(5), "q": F(1)}


def test_rref_pivots_and_reduction():
    rows = [
        [F(2), F(4), F(0)],
        [F(1), F(2), F(1)],
        [F(3), F(6), F(1)],
    ]
    reduced, pivots = rref(rows)
    assert pivots == [0, 2]
    assert reduced[0][:3] == [F(1), F(2), F(0)]
    assert reduced[1][:3] == [F(0), F(0), F(1)]


def test_rref_zero_matrix():
    reduced, pivots = rref([[F(0), F(0)]])
    assert reduced == [] and pivots == []
