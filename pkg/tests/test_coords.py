from __future__ import annotations

import random
from fractions import Fraction

import pytest

from artifact.braid import make_word
from artifact.cartan_weyl import cartan_from_name
from artifact.coords import (
    a_mutate,
    assignment_from_json,
    assignment_to_json,
    boundary_vertex,
    local_seed,
    p_map,
    reflection_frozen_action,
    verify_braid_move_formulas,
    x_mutate,
)
from artifact.diagram import bottom_only, seed_of
from artifact.errors import ArtifactError
from artifact.seed import Seed, mutate, unfrozen_part

F = Fraction
PAIR = Seed(["1", "2"], [], [[0, 1], [-1, 0]], [1, 1])


def test_x_mutate_example():
    assert x_mutate({"1": F(2), "2": F(3)}, PAIR, "2") == {"1": F(3, 2), "2": F(1, 3)}


def test_x_mutate_poles():
    with pytest.raises(ArtifactError):
        x_mutate({"1": F(2), "2": F(-1)}, PAIR, "2")
    with pytest.raises(ArtifactError):
        x_mutate({"1": F(2), "2": F(0)}, PAIR, "2")


def test_a_mutate_exchange():
    out = a_mutate({"1": F(2), "2": F(3)}, PAIR, "1")
    assert out == {"1": F(2), "2": F(3)}


def _random_assignment(rng, verts):
    return {v: F(rng.randint(1, 30), rng.randint(1, 30)) for v in verts}


@pytest.mark.parametrize("letters", [[1, 2, 1], [1, 2, 1, 2], [2, 1, 2, 2, 1]])
def test_mutations_are_involutions_and_p_is_natural(letters):
    rng = random.Random(3)
    s = seed_of(bottom_only(make_word(letters, cartan_from_name("B2"))))
    for c in s.unfrozen:
        x = _random_assignment(rng, s.vertices)
        a = _random_assignment(rng, s.vertices)
        t = mutate(s, c)
        assert x_mutate(x_mutate(x, s, c), t, c) == x
        assert a_mutate(a_mutate(a, s, c), t, c) == a
        u = unfrozen_part(s)
        assert p_map(a_mutate(a, s, c), t) == x_mutate(p_map(a, s), u, c)


def test_reflection_action_example():
    A2 = cartan_from_name("A2")
    s = seed_of(bottom_only(make_word([1, 2], A2)))
    x = {v: F(1) for v in s.vertices}
    x[boundary_vertex(s, 1, "right")] = F(2)
    x[boundary_vertex(s, 2, "right")] = F(3)
    out = reflection_frozen_action(x, s, A2, 1)
    assert (out["1:1"], out["2:1"]) == (F(1, 2), F(6))
    assert out["1:0"] == out["2:0"] == 1


def test_boundary_vertex_must_be_frozen():
    with pytest.raises(ArtifactError):
        boundary_vertex(PAIR, 3, "left")


def test_assignment_json_round_trip():
    x = {"1:0": F(-3, 4), "1:1": F(5)}
    assert assignment_from_json(assignment_to_json(x)) == x
    with pytest.raises(ArtifactError):
        assignment_from_json({"1:0": "0"})


@pytest.mark.parametrize("case", ["A2", "swap", "B2", "G2"])
def test_braid_move_formulas_hold(case):
    rep = verify_braid_move_formulas(case)
    assert rep.ok, rep.mismatches
    data = rep.to_json()
    assert all(data["results"].values()) and data["case"] == case


def test_node_swap_included():
    reps = verify_braid_move_formulas("A2", trials=10, include_node_swap=True)
    assert [r.case for r in reps] == ["A2", "swap"] and all(r.ok for r in reps)


def test_printed_variants_expose_typos():
    b2 = verify_braid_move_formulas("B2", trials=20, printed=True)
    assert b2.mismatches["A'_b"] == 20
    assert b2.total_mismatches == 20
    g2 = verify_braid_move_formulas("G2", trials=5, printed=True)
    assert g2.mismatches["A'_d"] > 0 and g2.mismatches["X'_e"] > 0


def test_local_seed_scripts():
    assert len(local_seed("A2")[2]) == 1
    assert len(local_seed("B2")[2]) == 3
    assert len(local_seed("G2")[2]) == 10


def test_trials_validated():
    with pytest.raises(ArtifactError):
        verify_braid_move_formulas("A2", trials=0)


def test_reflection_action_properties():
    A2 = cartan_from_name("A2")
    s = seed_of(bottom_only(make_word([1, 2, 1, 2], A2)))
    ones = {v: F(1) for v in s.vertices}
    assert reflection_frozen_action(ones, s, A2, 2) == ones
    rng = random.Random(5)
    x = _random_assignment(rng, s.vertices)
    for side in ("left", "right"):
        y = reflection_frozen_action(x, s, A2, 1, side)
        assert all(y[v] == x[v] for v in s.unfrozen)
        assert reflection_frozen_action(y, s, A2, 1, side) == x


def test_p_map_trivial_cases():
    s = Seed(["c", "b"], ["b"], [[0, 1], [-1, 0]], [1, 1])
    assert p_map({"c": F(2), "b": F(7)}, s) == {"c": F(7)}
    assert p_map({"c": F(1), "b": F(1)}, s) == {"c": F(1)}
