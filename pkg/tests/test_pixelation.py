from __future__ import annotations

from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pixcat.core_model import AuslanderChain, FiniteThinCategory, Free, InputError, MaxLength, PathModel
from pixcat.pixelation import (
    SkeletonQuiver,
    build_skeleton,
    compare_with_oracle,
    dead_pixels,
    init_functor,
    localization_oracle,
    parse_vertex,
    sheaf_equalizer_check,
    skeleton_hom,
    vertex_key,
)
from pixcat.screens import Screen, ScreenFactor, factor, integer_screen, meet

FREE1 = PathModel(1, Free())
AUS1 = PathModel(1, AuslanderChain())
AUS2 = PathModel(2, AuslanderChain())


def aus_screen(n, *cuts):
    f = factor((0, "lower"), *cuts, 1)
    return Screen((f,) * n)


# -- skeleta ---------------------------------------------------------------


def test_free_integer_screen_is_linear_a4():
    s = build_skeleton(FREE1, integer_screen(0, 4), bounded_only=True)
    chain = [(k,) for k in range(1, 5)]
    assert list(s.vertices) == chain
    assert list(s.arrows) == list(zip(chain, chain[1:]))
    assert np.array_equal(s.hom, np.triu(np.ones((4, 4), dtype=bool)))


def test_max_length_two_kills_long_composites():
    s = build_skeleton(PathModel(1, MaxLength(2)), integer_screen(0, 4))
    # unbounded pixels have no identity
    assert (0,) not in s.index and (5,) not in s.index
    assert s.hom_bit((1,), (2,)) == 1 and s.hom_bit((1,), (3,)) == 0
    assert dead_pixels(PathModel(1, MaxLength(2)), integer_screen(0, 4)) == {(0,), (5,)}


def test_pruning_removes_diagonals_in_the_plane():
    screen = Screen((factor(0, 1, 2),) * 2)
    model = PathModel(2, Free())
    pruned = build_skeleton(model, screen)
    full = build_skeleton(model, screen, prune=False)
    assert ((1, 1), (2, 2)) in full.arrows
    assert ((1, 1), (2, 2)) in pruned.pruned and ((1, 1), (2, 2)) not in pruned.arrows
    assert all(u[0] + u[1] + 1 == w[0] + w[1] for u, w in pruned.arrows)
    assert np.array_equal(pruned.hom, full.hom)


def test_auslander_screen_with_two_cuts():
    s = build_skeleton(AUS2, aus_screen(2, "1/3", "2/3"))
    assert set(s.vertices) == {(1, 2), (1, 3), (2, 3)}
    assert s.hom_bit((1, 2), (2, 3)) == 0
    assert s.hom_bit((1, 2), (1, 3)) == 1
    assert skeleton_hom(AUS2, aus_screen(2, "1/3", "2/3"), (1, 3), (2, 3)) == 1
    with pytest.raises(InputError):
        skeleton_hom(AUS2, aus_screen(2, "1/3", "2/3"), (0, 0), (1, 2))


def test_auslander_one_pixel_chain():
    s = build_skeleton(AUS1, aus_screen(1))
    assert s.vertices == ((1,),)


def test_dimension_mismatch():
    with pytest.raises(InputError):
        build_skeleton(AUS2, integer_screen(0, 2))


def test_skeleton_json_round_trip_and_dot():
    s = build_skeleton(PathModel(2, Free()), Screen((factor(0, 1),) * 2))
    assert SkeletonQuiver.from_dict(s.to_dict()) == s
    dot = s.to_dot()
    assert dot.startswith("digraph skeleton {") and "style=dotted" in dot
    with pytest.raises(InputError):
        SkeletonQuiver.from_dict({"vertices": ["1"]})


@given(st.tuples(*[st.integers(-3, 9)] * 3))
def test_vertex_keys_round_trip(v):
    assert parse_vertex(vertex_key(v)) == v


def test_skeleton_invariants_hold():
    for model, screen in [(FREE1, integer_screen(0, 3)), (AUS2, aus_screen(2, "1/4", "1/2", "3/4"))]:
        assert build_skeleton(model, screen).check_invariants() == []


# -- Init ------------------------------------------------------------------


def test_init_functor_on_a_refinement():
    coarse = Screen((factor(0, 2),))
    fine = Screen((factor(0, 1, 2),))
    f = init_functor(FREE1, fine, coarse)
    assert f.passed
    assert f.vertex_map[(1,)] == (1,)
    assert f.vertex_map[(2,)] == (3,)
    with pytest.raises(InputError):
        init_functor(FREE1, coarse, fine)


def test_init_functors_compose_along_a_tower():
    a = Screen((factor(0, 4),))
    b = Screen((factor(0, 2, 4),))
    c = Screen((factor(0, 1, 2, 3, 4),))
    ab, bc, ac = init_functor(FREE1, b, a), init_functor(FREE1, c, b), init_functor(FREE1, c, a)
    for v, w in ac.vertex_map.items():
        assert bc.vertex_map[ab.vertex_map[v]] == w


# -- the brute-force oracle ------------------------------------------------


def test_localization_of_a_chain():
    cat = FiniteThinCategory(["x", "y", "z"], [("x", "y"), ("y", "z")])
    loc = localization_oracle(cat, [("y", "z")])
    assert len(loc.objects) == 2
    assert loc.class_of("z") == loc.class_of("y")
    assert loc.hom_bit(loc.class_of("x"), loc.class_of("z")) == 1
    with pytest.raises(InputError):
        localization_oracle(cat, [("z", "x")])


def test_inverting_through_a_zero_kills_the_class():
    cat = FiniteThinCategory(["x", "y", "z"], [("x", "y"), ("y", "z")],
                             hom=[("x", "x"), ("y", "y"), ("z", "z"), ("x", "y"), ("y", "z")])
    # x -> z is zero, so inverting it makes x and z zero objects; y survives
    loc = localization_oracle(cat, [("x", "z")])
    c = loc.class_of("x")
    assert loc.class_of("z") == c and loc.hom_bit(c, c) == 0
    assert loc.hom_bit("y", "y") == 1


@pytest.mark.parametrize("model,screen", [
    (FREE1, integer_screen(0, 3)),
    (PathModel(1, MaxLength(F(3, 2))), integer_screen(0, 3)),
    (AUS1, aus_screen(1, "1/3", "1/2")),
    (AUS2, aus_screen(2, "1/3", "2/3")),
    (PathModel(2, Free()), Screen((factor(0, ("1/2", "lower")), factor(0, 1)))),
])
def test_oracle_agrees_with_symbolic_skeleton(model, screen):
    r = compare_with_oracle(model, screen)
    assert r.agree, r.mismatches
    assert r.to_dict()["agree"]


positions = st.sampled_from([F(0), F(1, 4), F(1, 2), F(1), F(3, 2)])


@given(st.lists(st.tuples(positions, st.sampled_from([0, 1])), max_size=4, unique=True),
       st.sampled_from([Free(), AuslanderChain(), MaxLength(1), MaxLength(F(1, 2))]))
def test_oracle_agreement_property(keys, pred):
    screen = Screen((ScreenFactor.from_keys(keys),))
    assert compare_with_oracle(PathModel(1, pred), screen).agree


# -- sheaf equalizer -------------------------------------------------------


def test_single_screen_is_its_own_equalizer():
    p = Screen((factor(0, 1, 2),))
    r = sheaf_equalizer_check(FREE1, [p], p)
    assert r.passed and r.equalizer_size == len(build_skeleton(FREE1, p).vertices)


def test_sheaf_check_on_the_worked_pair_and_a_perturbation():
    p = Screen((factor(0, 1, 2),))
    q = Screen((factor(0, ("1/2", "lower"), 2),))
    j = Screen((factor(0, 2),))
    assert sheaf_equalizer_check(FREE1, [p, q], j).passed
    bad = sheaf_equalizer_check(FREE1, [p, q], j, init_override={(0, (1,)): (2,)})
    assert not bad.passed and bad.witnesses
    with pytest.raises(InputError):
        sheaf_equalizer_check(FREE1, [j], meet(p, q))
    with pytest.raises(InputError):
        sheaf_equalizer_check(FREE1, [], j)
