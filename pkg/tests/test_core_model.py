from __future__ import annotations

from fractions import Fraction as F

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pixcat.core_model import (
    NEG_INF,
    POS_INF,
    Approach,
    AuslanderChain,
    FiniteThinCategory,
    Free,
    InputError,
    MaxLength,
    PathModel,
    format_rational,
    hom_nonzero,
    is_zero_object,
    parse_rational,
    reflexive_transitive_closure,
)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12)
unit = st.fractions(min_value=F(-1, 2), max_value=F(3, 2), max_denominator=12)


# -- scalars ---------------------------------------------------------------


@pytest.mark.parametrize("text,value", [("3/4", F(3, 4)), ("-2", F(-2)), (" 5/10 ", F(1, 2)), (7, F(7))])
def test_parse_rational_accepts_exact_input(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "", "1/0", True, None, "x"])
def test_parse_rational_refuses_inexact_or_malformed(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


@given(rationals)
def test_format_parse_round_trip(q):
    assert parse_rational(format_rational(q)) == q


def test_approach_orders_infinitesimals():
    assert Approach(1, -1) < 1 < Approach(1, 1)
    assert Approach(NEG_INF) < Approach(-10**9) < Approach(POS_INF)
    assert Approach(F(1, 2)) == F(1, 2)
    assert (Approach(2, -1) - 1) < 1
    assert (Approach(POS_INF) - 3) == Approach(POS_INF)
    with pytest.raises(InputError):
        Approach(POS_INF) - Approach(POS_INF)


@given(rationals, st.integers(-2, 2), rationals, st.integers(-2, 2))
def test_approach_order_is_lexicographic(a, e, b, f):
    assert (Approach(a, e) < Approach(b, f)) == ((a, e) < (b, f))


# -- predicates ------------------------------------------------------------


def test_auslander_hom_support_examples():
    m = PathModel(2, AuslanderChain())
    assert hom_nonzero(m, (F(1, 4), F(1, 2)), (F(1, 3), F(3, 4)))
    assert not hom_nonzero(m, (F(1, 4), F(1, 2)), (F(1, 2), F(3, 4)))


def test_auslander_zero_objects():
    m = PathModel(2, AuslanderChain())
    assert is_zero_object(m, (F(1, 2), F(1, 4)))
    assert not is_zero_object(m, (F(1, 4), F(1, 2)))
    assert is_zero_object(m, (F(0), F(1, 2)))
    assert is_zero_object(m, (F(1, 4), F(1)))


def test_max_length_examples():
    m = PathModel(1, MaxLength(2))
    assert hom_nonzero(m, (F(0),), (F(3, 2),))
    assert not hom_nonzero(m, (F(0),), (F(2),))
    assert not hom_nonzero(m, (F(1),), (F(0),))


def test_free_identities_and_no_zero_objects():
    m = PathModel(3, Free())
    p = (F(1), F(-2), F(1, 3))
    assert hom_nonzero(m, p, p)
    assert not is_zero_object(m, p)


def test_dimension_checks():
    with pytest.raises(InputError):
        hom_nonzero(PathModel(2, Free()), (1,), (1, 2))
    with pytest.raises(InputError):
        PathModel(2, MaxLength(1))
    with pytest.raises(InputError):
        MaxLength(0)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[st.lists(unit, min_size=n, max_size=n)] * 3)),
       st.sampled_from(["free", "aus", "ml"]))
def test_predicates_are_factorization_closed(pts, kind):
    """A nonzero morphism has nonzero factors (path based ideals are ideals)."""
    a, b, c = (sorted(t) if kind == "aus" else t for t in pts)
    n = len(a)
    if kind == "ml":
        a, b, c = a[:1], b[:1], c[:1]
        n = 1
        pred = MaxLength(1)
    else:
        pred = Free() if kind == "free" else AuslanderChain()
    x = tuple(min(t) for t in zip(a, b, c))
    z = tuple(max(t) for t in zip(a, b, c))
    y = tuple(sorted((p, q, r))[1] for p, q, r in zip(a, b, c))
    m = PathModel(n, pred)
    if hom_nonzero(m, x, z):
        assert hom_nonzero(m, x, y) and hom_nonzero(m, y, z)


def test_model_json_round_trip():
    for m in [PathModel(1, Free()), PathModel(1, MaxLength(F(3, 2))), PathModel(3, AuslanderChain())]:
        assert PathModel.from_dict(m.to_dict()) == m
    with pytest.raises(InputError):
        PathModel.from_dict({"dimension": 1, "predicate": {"kind": "nope"}})
    with pytest.raises(InputError):
        PathModel.from_dict({"dimension": 1})


# -- finite thin categories ------------------------------------------------


def test_finite_thin_category_validation():
    cat = FiniteThinCategory(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert cat.hom_bit("a", "c") == 1 and cat.hom_bit("c", "a") == 0
    with pytest.raises(InputError):
        FiniteThinCategory(["a", "b"], [("a", "b")], hom=[("b", "a")])
    # a nonzero composite with a zero factor is not an ideal quotient
    with pytest.raises(InputError):
        FiniteThinCategory(["a", "b", "c"], [("a", "b"), ("b", "c")],
                           hom=[("a", "a"), ("b", "b"), ("c", "c"), ("a", "c")])


def test_finite_thin_category_json_round_trip():
    cat = FiniteThinCategory([(0, 1), (1, 1)], [((0, 1), (1, 1))])
    back = FiniteThinCategory.from_dict(cat.to_dict())
    assert back.to_dict() == cat.to_dict()


@given(st.integers(1, 9).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))))
def test_closure_matches_networkx(data):
    n, edges = data
    adj = np.zeros((n, n), dtype=bool)
    g = nx.DiGraph()
    g.add_nodes_from(range(n))
    for a, b in edges:
        adj[a, b] = True
        g.add_edge(a, b)
    ours = reflexive_transitive_closure(adj)
    tc = nx.transitive_closure(g, reflexive=True)
    theirs = np.zeros((n, n), dtype=bool)
    for a, b in tc.edges:
        theirs[a, b] = True
    theirs |= np.eye(n, dtype=bool)
    assert np.array_equal(ours, theirs)
