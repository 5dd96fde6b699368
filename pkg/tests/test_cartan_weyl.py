from __future__ import annotations

import pytest

from artifact.cartan_weyl import (
    INFINITY,
    braid_exponent,
    cartan_from_json,
    cartan_from_name,
    coxeter_number,
    length_increases_on_left,
    longest_element,
    weyl_from_word,
    weyl_identity,
    weyl_left_multiply,
    weyl_length,
    weyl_right_multiply,
)
from artifact.errors import ArtifactError


def test_named_types():
    A2 = cartan_from_name("A2")
    assert A2.C == ((2, -1), (-1, 2)) and A2.D == (1, 1)
    B2 = cartan_from_name("B2")
    assert B2.C[0][1] * B2.C[1][0] == 2 and B2.D == (2, 1)
    G2 = cartan_from_name("G2")
    assert G2.C[0][1] * G2.C[1][0] == 3
    assert cartan_from_name("A1xA1").C == ((2, 0), (0, 2))
    for name in ["A5", "B3", "C3", "D4", "E6", "F4"]:
        C = cartan_from_name(name)
        for i in range(C.rank):
            for j in range(C.rank):
                assert C.C[i][j] * C.D[j] == C.C[j][i] * C.D[i]


def test_unknown_label():
    with pytest.raises(ArtifactError):
        cartan_from_name("Q3")


def test_custom_json_with_corank():
    C = cartan_from_json('{"C": [[2, -1], [-1, 2]], "D": [1, 1], "corank": 1, "A": [[-1, 0]]}')
    assert C.levels == 3
    assert C.entry(3, 1) == -1 and C.entry(1, 3) == -1 and C.entry(3, 2) == 0
    with pytest.raises(ArtifactError):
        cartan_from_json('{"C": [[2, -1], [0, 2]], "D": [1, 1]}')


def test_braid_exponent():
    assert braid_exponent(cartan_from_name("A2"), 1, 2) == 3
    assert braid_exponent(cartan_from_name("A1xA1"), 1, 2) == 2
    assert braid_exponent(cartan_from_name("B2"), 1, 2) == 4
    assert braid_exponent(cartan_from_name("G2"), 1, 2) == 6
    affine = cartan_from_json('{"C": [[2, -2], [-2, 2]], "D": [1, 1]}')
    assert braid_exponent(affine, 1, 2) == INFINITY
    with pytest.raises(ArtifactError):
        braid_exponent(affine, 1, 1)


def test_left_multiply_examples():
    A1, A2 = cartan_from_name("A1"), cartan_from_name("A2")
    assert weyl_left_multiply(A1, 1, weyl_identity(A1)).payload == (1, 0)
    s1, s2 = weyl_from_word(A2, [1]), weyl_from_word(A2, [2])
    assert weyl_left_multiply(A2, 1, s2) == weyl_from_word(A2, [1, 2])
    assert weyl_left_multiply(A2, 1, s1) == weyl_identity(A2)


def test_length_increases():
    A1, A2 = cartan_from_name("A1"), cartan_from_name("A2")
    assert length_increases_on_left(A1, 1, weyl_identity(A1))
    assert not length_increases_on_left(A1, 1, weyl_from_word(A1, [1]))
    assert not length_increases_on_left(A2, 1, weyl_from_word(A2, [1, 2]))


@pytest.mark.parametrize("name", ["A3", "B2", "C3", "G2", "A1xA1"])
def test_length_rule_matches_lengths(name):
    C = cartan_from_name(name)
    w0, _ = longest_element(C)
    seen = {weyl_identity(C)}
    frontier = [weyl_identity(C)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(1, C.rank + 1):
                sw = weyl_left_multiply(C, i, w)
                grows = weyl_length(C, sw) > weyl_length(C, w)
                assert grows == length_increases_on_left(C, i, w)
                if sw not in seen:
                    seen.add(sw)
                    nxt.append(sw)
        frontier = nxt
    assert w0 in seen


def test_left_and_right_multiplication_commute():
    C = cartan_from_name("B3")
    w = weyl_from_word(C, [1, 2, 3, 2])
    lhs = weyl_right_multiply(C, 3, weyl_left_multiply(C, 1, w))
    rhs = weyl_left_multiply(C, 1, weyl_right_multiply(C, 3, w))
    assert lhs == rhs


@pytest.mark.parametrize("name,length,h", [("A2", 3, 3), ("B2", 4, 4), ("G2", 6, 6), ("A3", 6, 4), ("D4", 12, 6)])
def test_longest_element_and_coxeter_number(name, length, h):
    C = cartan_from_name(name)
    w0, word = longest_element(C)
    assert len(word) == length
    assert weyl_from_word(C, word) == w0
    assert coxeter_number(C) == h


def test_non_finite_type_hits_cap():
    affine = cartan_from_json('{"C": [[2, -2], [-2, 2]], "D": [1, 1]}')
    with pytest.raises(ArtifactError, match="non-finite type"):
        longest_element(affine, cap=50)
