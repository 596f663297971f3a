from __future__ import annotations

import random
from fractions import Fraction as F
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pixcat import auslander as A
from pixcat.core_model import InputError
from pixcat.pixelation import dead_pixels
from pixcat.representations import injective, projective, simple


def spec(x, c):
    return A.IntervalModuleSpec(tuple(x), c)


# -- screens and the dead-pixel lemma --------------------------------------


def test_aus_screen_shape():
    s = A.aus_screen(2, 5)
    assert s.cuts == tuple(F(k, 6) for k in range(1, 6)) and s.m == 5
    with pytest.raises(InputError):
        A.aus_screen(2, 4, [F(k, 6) for k in range(1, 6)])
    with pytest.raises(InputError):
        A.AusScreen(3, ["1/2"])
    with pytest.raises(InputError):
        A.AusScreen(1, ["1/2", "1/3"])


def test_index_conversions():
    assert A.to_interior((1, 3)) == (0, 2) and A.from_interior((0, 2)) == (1, 3)


def test_lemma_examples():
    assert A.lemma_non_dead((0, 1), 2, 2)
    assert not A.lemma_non_dead((1, 1), 2, 2)
    assert not A.lemma_non_dead((-1, 1), 2, 2)
    assert not A.lemma_non_dead((0, 3), 2, 2)
    assert A.lemma_hom((0, 1), (0, 2)) == 1
    assert A.lemma_hom((0, 1), (1, 2)) == 0


cut_sets = st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.sets(st.integers(1, 11), min_size=n - 1, max_size=5).map(
        lambda s: tuple(F(k, 12) for k in sorted(s)))))


@given(cut_sets)
def test_dead_pixels_follow_the_lemma(data):
    n, cuts = data
    s = A.AusScreen(n, cuts)
    lemma = {p for p in s.screen.pixels() if not A.lemma_non_dead(A.to_interior(p), n, s.m)}
    assert dead_pixels(s.model, s.screen) == lemma
    assert A.sampled_dead(s) == lemma
    assert A.sampled_dead(s, "object") == lemma


def test_sampling_rule_is_checked():
    with pytest.raises(InputError):
        A.sampled_dead(A.aus_screen(1, 2), "other")


# -- phi and the quiver ----------------------------------------------------


def test_phi_examples():
    assert A.phi((0, 1), 2) == (1, 1)
    assert A.phi((1, 2), 2) == (2, 2)
    assert A.phi((0, 1, 2), 3) == (1, 1, 1)
    assert A.phi_inverse((1, 1, 1), 3) == (0, 1, 2)
    with pytest.raises(InputError):
        A.phi((1, 1), 2)


@given(st.integers(1, 3), st.integers(1, 5))
def test_phi_round_trip(n, m):
    for v in A.aus_vertices(n, m):
        assert A.phi(A.phi_inverse(v, n), n) == v


@pytest.mark.parametrize("n,m", [(n, m) for n in (1, 2, 3) for m in range(2, 7)])
def test_vertex_counts(n, m):
    assert len(A.aus_vertices(n, m)) == comb(m + n - 1, n)


def test_a5_two_quiver():
    q = A.higher_auslander_quiver(2, 5)
    assert len(q.vertices) == 15 and len(q.arrows) == 20
    assert q.hom_bit((1, 1), (2, 2)) == 0
    assert q.hom_bit((1, 2), (2, 3)) == 1
    assert q.checks["mesh_equal"] and q.checks["vertex_count"]
    dot = q.to_dot()
    assert dot.startswith("digraph auslander {") and "arrowhead=none" in dot
    assert q.to_dict()["n"] == 2


def test_n_one_is_hereditary_and_the_literal_relation_degenerates():
    q = A.higher_auslander_quiver(1, 4)
    assert np.array_equal(q.hom, A.hereditary_hom(1, 4))
    assert q.checks["mesh_equal"]
    assert not q.checks["literal_sound"]


def test_n_three_needs_the_mesh_relations():
    q = A.higher_auslander_quiver(3, 3)
    assert q.checks["mesh_equal"] and not q.checks["literal_complete"]


@pytest.mark.parametrize("n,m", [(1, 3), (2, 3), (2, 4), (3, 3)])
def test_phi_isomorphism(n, m):
    r = A.verify_phi_isomorphism(n, m)
    assert r.passed, r.witnesses


def test_phi_with_irregular_cuts():
    assert A.verify_phi_isomorphism(2, 3, ["1/10", "1/2", "9/10"]).passed


def test_quiver_needs_two_columns():
    with pytest.raises(InputError):
        A.higher_auslander_quiver(2, 1)


# -- interval modules ------------------------------------------------------


def test_spec_validation_and_labels():
    s = spec(["1/4", "1/2"], "3/4")
    assert s.label() == "M((1/4,1/2),3/4)"
    assert s.contains((F(1, 3), F(2, 3))) and not s.contains((F(1, 3), F(3, 4)))
    with pytest.raises(InputError):
        spec(["1/2", "1/4"], 1)
    with pytest.raises(InputError):
        spec(["1/2"], "3/2")


def test_interval_hom_examples():
    a = spec(["1/4", "1/2"], 1)
    assert A.interval_hom(a, a) == 1
    assert A.interval_hom(spec(["1/4", "3/4"], 1), spec(["1/4", "1/2"], "7/8")) == 1
    assert A.interval_hom(spec(["1/4", "1/2"], 1), spec(["1/2", "3/4"], 1)) == 0


def test_interval_hom_matches_hom_space():
    from pixcat.representations import hom_dim
    s = A.AusScreen(2, [F(k, 6) for k in range(1, 6)])
    specs = A.grid_specs(s)
    mods = {sp: A.interval_module(sp, s) for sp in specs}
    rng = random.Random(1)
    for a, b in (rng.sample(specs, 2) for _ in range(60)):
        assert A.interval_hom(a, b) == hom_dim(mods[a], mods[b], s.skeleton)


def test_projective_sources():
    assert A.projective_sources(spec(["1/4", "1/2"], "3/4")) == [
        (F(1, 4), F(1, 2)), (F(1, 4), F(3, 4)), (F(1, 2), F(3, 4))]
    assert A.projective_sources(spec(["1/4"], "1/2")) == [(F(1, 4),), (F(1, 2),)]
    with pytest.raises(InputError):
        A.projective_sources(spec(["1/4"], 1))


def test_injective_targets():
    assert A.injective_targets(spec(["1/4"], "1/2")) == [spec([0], "1/2"), spec([0], "1/4")]
    with pytest.raises(InputError):
        A.injective_targets(spec([0], "1/2"))


def test_simple_projective_and_injective_modules():
    s = A.AusScreen(1, ["1/3", "2/3"])
    sk = s.skeleton
    assert A.interval_module(spec(["1/3"], "2/3"), s) == simple(sk, (2,))
    assert A.interval_module(spec(["1/3"], 1), s) == projective(sk, (2,))
    with pytest.raises(InputError):
        A.interval_module(spec(["1/4"], 1), s)


@pytest.mark.parametrize("n,m", [(1, 4), (2, 4), (3, 3)])
def test_injective_vertex_specs_realize_the_injectives(n, m):
    s = A.aus_screen(n, m)
    for p in s.skeleton.vertices:
        v = A.phi(A.to_interior(p), n)
        assert A.interval_module(A.injective_vertex_spec(v, s), s) == injective(s.skeleton, p)


def test_resolutions_on_a_small_grid():
    s = A.AusScreen(2, [F(k, 5) for k in range(1, 5)])
    for sp in A.grid_specs(s, c_below_one=True):
        r = A.resolve_projective(sp, s)
        assert r.passed and len(r.terms) == 3, r.witnesses
    for sp in A.grid_specs(s, x1_positive=True):
        assert A.resolve_injective(sp, s).passed


def test_projectivity_of_interval_projectives():
    s = A.AusScreen(2, [F(k, 5) for k in range(1, 5)])
    rng = random.Random(7)
    assert A.projectivity_check(spec(["1/5", "2/5"], 1), s, rng, trials=4).passed


# -- cluster tilting and Theorem B -----------------------------------------


def test_cluster_tilting_for_n_three():
    r = A.cluster_tilting_check(3, 2)
    assert r.passed and r.degrees == [1]
    assert r.non_members == r.non_members_detected
    assert r.full_range_orthogonal


def test_cluster_tilting_is_vacuous_for_n_two():
    r = A.cluster_tilting_check(2, 3)
    assert r.passed and r.degrees == []


@settings(max_examples=10)
@given(st.integers(1, 2), st.integers(4, 6))
def test_theorem_b(n, q):
    r = A.theoremB_check(n, q)
    assert r.passed and r.pairs == r.objects ** 2


def test_theorem_b_grid_size():
    with pytest.raises(InputError):
        A.theoremB_check(3, 4)
