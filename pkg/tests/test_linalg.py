from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pixcat import linalg as la
from pixcat.core_model import InputError

entries = st.integers(-3, 3)


def matrices(max_side=4):
    return st.tuples(st.integers(0, max_side), st.integers(0, max_side)).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0]).map(
            lambda rows: la.mat(rows, rc[0], rc[1]) if rc[0] and rc[1] else la.zeros(*rc)))


@given(matrices())
def test_rank_nullity(a):
    r, c = a.shape
    assert la.rank(a) + la.nullspace(a).shape[1] == c
    assert la.is_zero(la.mul(a, la.nullspace(a)))
    assert la.is_zero(la.mul(la.left_nullspace(a), a))
    assert la.left_nullspace(a).shape[0] == r - la.rank(a)


@given(matrices(), st.lists(entries, min_size=4, max_size=4))
def test_solve_finds_a_solution_when_one_exists(a, xs):
    r, c = a.shape
    x = la.column(xs[:c], c)
    b = la.mul(a, x)
    sol = la.solve(a, b)
    assert sol is not None and la.equal(la.mul(a, sol), b)


def test_solve_reports_inconsistency():
    a = la.mat([[1, 0], [0, 0]])
    assert la.solve(a, la.mat([[0], [1]])) is None
    with pytest.raises(InputError):
        la.solve(a, la.zeros(3, 1))


def test_inverse_and_exact_entries():
    a = la.mat([["1/2", 1], [0, 3]])
    inv = la.inverse(a)
    assert la.equal(la.mul(a, inv), la.eye(2))
    assert la.rows_of(inv)[0] == [F(2), F(-2, 3)]
    with pytest.raises(InputError):
        la.inverse(la.mat([[1, 2], [2, 4]]))
    assert not la.is_invertible(la.zeros(2, 3))


def test_zero_sized_shapes():
    z = la.zeros(0, 3)
    assert la.rank(z) == 0 and la.nullspace(z).shape == (3, 3)
    assert la.mul(la.zeros(2, 0), la.zeros(0, 4)).shape == (2, 4)
    assert la.hstack(la.zeros(2, 0), la.eye(2)).shape == (2, 2)
    assert la.block([[la.eye(1), la.zeros(1, 0)], [la.zeros(0, 1), la.zeros(0, 0)]]).shape == (1, 1)


@given(matrices())
def test_json_round_trip(a):
    assert la.equal(la.from_json(la.to_json(a), *a.shape), a)


def test_shape_errors():
    with pytest.raises(InputError):
        la.mat([[1, 2], [3]])
    with pytest.raises(InputError):
        la.mul(la.eye(2), la.eye(3))
    with pytest.raises(InputError):
        la.from_json([["1"]], 0, 2)
