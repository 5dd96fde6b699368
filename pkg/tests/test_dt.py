from __future__ import annotations

import itertools

import pytest

from artifact.braid import make_word
from artifact.cartan_weyl import cartan_from_name, coxeter_number
from artifact.dt import (
    bipartite,
    color_trace,
    dt_order,
    dt_script,
    level_reversal,
    maximal_green_sequence,
    square_dt_bound,
    square_product,
    square_word,
    unfrozen_seed_of_word,
    za_bound,
    za_order,
    za_order_up_to_permutation,
    zamolodchikov_tau,
)
from artifact.errors import ArtifactError
from artifact.exact_math import Matrix
from artifact.seed import c_matrix

A1 = cartan_from_name("A1")
A3 = cartan_from_name("A3")
E1 = make_word([], A1)

RUNNING = [2, 1, 3, 2, 1, 3, 1, 3, 2, 2, 1]
RUNNING_MGS = "2:1,2:2,2:3,1:1,1:2,1:3,3:1,3:2,2:1,2:2,1:1,1:2,3:1,1:1,2:1"


def test_mgs_examples():
    assert maximal_green_sequence(make_word([1, 1, 1, 1], A1)).render() == "1:1,1:2,1:3,1:1,1:2,1:1"
    assert maximal_green_sequence(make_word([1], A1)).steps == ()
    script = maximal_green_sequence(make_word(RUNNING, A3))
    assert script.render() == RUNNING_MGS
    trace, _ = color_trace(unfrozen_seed_of_word(make_word(RUNNING, A3)), script.steps)
    assert trace.all_green_turns and trace.ends_all_red


def test_level_reversal():
    sigma = level_reversal(make_word([1, 1, 1, 1], A1))
    assert sigma == {"1:1": "1:3", "1:2": "1:2", "1:3": "1:1"}


def test_dt_script_examples():
    ds = dt_script(E1, make_word([1, 1, 1, 1], A1))
    assert len(ds.script) == 6
    dt_script(make_word([], cartan_from_name("A2")), make_word([1, 2, 1], cartan_from_name("A2")))
    ds = dt_script(make_word([1], A1), make_word([1], A1))
    assert ds.script.steps == ("1:1",) and ds.sigma == {"1:1": "1:1"}
    with pytest.raises(ArtifactError):
        dt_script(E1, E1)


def test_dt_json_shape():
    ds = dt_script(E1, make_word([1, 1, 1], A1))
    data = ds.to_json()
    assert data["script"] == ["1:1", "1:2", "1:1"]
    assert data["sigma"] == {"1:1": "1:2", "1:2": "1:1"}


@pytest.mark.parametrize("n,order", [(2, 2), (3, 5), (4, 6), (5, 7)])
def test_dt_orders_a1(n, order):
    assert dt_order(dt_script(E1, make_word([1] * n, A1))) == order


def test_square_product_shapes():
    s, colors = square_product(bipartite(cartan_from_name("A2")), bipartite(A1))
    assert len(s) == 2 and abs(s.entry("1:1", "2:1")) == 1
    s, _ = square_product(bipartite(A1), bipartite(A1))
    assert len(s) == 1 and s.entry("1:1", "1:1") == 0
    s, colors = square_product(bipartite(cartan_from_name("D4")), bipartite(A3))
    assert len(s) == 12
    degree = {v: sum(1 for u in s.vertices if s.entry(v, u) != 0) for v in s.vertices}
    outer = [i for i in range(1, 5) if sum(1 for j in range(1, 5) if j != i and cartan_from_name("D4").C[i - 1][j - 1]) == 1]
    assert len({tuple(degree[f"{i}:{k}"] for k in range(1, 4)) for i in outer}) == 1
    tau = zamolodchikov_tau(s, colors)
    assert len(tau) == 12


def test_za_orders():
    A2 = cartan_from_name("A2")
    s, colors = square_product(bipartite(A2), bipartite(A1))
    assert za_order(s, colors) == 5
    s, colors = square_product(bipartite(A1), bipartite(A1))
    assert 4 % za_order(s, colors) == 0
    s, colors = square_product(bipartite(A2), bipartite(A2))
    assert 6 % za_order(s, colors) == 0
    assert za_bound(A2, 1) == 5


def test_za_up_to_permutation_divides_order():
    s, colors = square_product(bipartite(A3), bipartite(cartan_from_name("A2")))
    k = za_order_up_to_permutation(s, colors)
    assert za_order(s, colors) % k == 0


@pytest.mark.parametrize("left,n", [("A1", 1), ("A1", 2), ("A2", 1), ("A2", 2)])
def test_square_words_dt_bound(left, n):
    C = cartan_from_name(left)
    p, q = square_word(C, n)
    ds = dt_script(make_word(p, C), make_word(q, C))
    bound = square_dt_bound(C, n)
    assert bound % dt_order(ds) == 0


def test_coxeter_numbers_used_in_bounds():
    assert coxeter_number(cartan_from_name("A2")) == 3
    assert square_dt_bound(cartan_from_name("A2"), 1) == 2 * 5


def test_mgs_small_words_exhaustive():
    for name, max_len in (("A2", 4), ("B2", 4)):
        C = cartan_from_name(name)
        for n in range(1, max_len + 1):
            for letters in itertools.product(range(1, C.rank + 1), repeat=n):
                w = make_word(letters, C)
                trace, f = color_trace(unfrozen_seed_of_word(w), maximal_green_sequence(w).steps)
                assert trace.all_green_turns and trace.ends_all_red
                if len(f.base_vertices):
                    assert c_matrix(f).determinant() in (1, -1)
                else:
                    assert c_matrix(f) == Matrix([])
