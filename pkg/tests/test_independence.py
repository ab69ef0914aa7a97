import numpy as np
import pytest
from hypothesis import given

import oracles
from girthforge.errors import InstanceTooLarge
from girthforge.graph import Graph
from girthforge.independence import (
    chromatic_number_exact,
    exact_coloring,
    is_independent,
    max_empty_product,
    max_independent_set,
)
from helpers import small_graphs


def test_alpha_examples():
    assert max_independent_set(Graph.cycle(5))[:1] == (2,)
    edgeless = max_independent_set(Graph(4, frozenset()))
    assert edgeless.alpha == 4 and edgeless.exact
    p = Graph.petersen()
    assert oracles.alpha(p.n, p.edges) == 4
    res = max_independent_set(p)
    assert res.alpha == 4 and res.exact
    assert is_independent(p, res.witness)


def test_chromatic_examples():
    assert chromatic_number_exact(Graph.cycle(5)) == 3
    assert chromatic_number_exact(Graph.complete(4)) == 4
    p = Graph.petersen()
    assert oracles.chromatic_number(p.n, p.edges) == 3
    assert chromatic_number_exact(p) == 3


def test_chromatic_size_cap():
    with pytest.raises(InstanceTooLarge):
        exact_coloring(Graph.cycle(21))


def test_budget_marks_result_inexact():
    import random

    rnd = random.Random(3)
    g = Graph.from_edges(70, [(u, v) for u in range(1, 71) for v in range(u + 1, 71) if rnd.random() < 0.3])
    capped = max_independent_set(g, budget=3)
    assert not capped.exact
    assert is_independent(g, capped.witness)
    assert capped.alpha <= max_independent_set(g).alpha


def test_max_empty_product_against_brute_force():
    rnd = np.random.default_rng(5)
    for _ in range(40):
        m = int(rnd.integers(1, 7))
        bits = rnd.random((m, m)) < 0.4
        rows = np.array([sum(1 << j for j in range(m) if bits[i, j]) for i in range(m)], dtype=np.int64)
        edges = {(i, j) for i in range(m) for j in range(m) if bits[i, j]}
        assert int(max_empty_product(rows, m)) == oracles.max_empty_rectangle(edges, range(m), range(m)), bits


@given(small_graphs(max_n=8))
def test_alpha_matches_subset_oracle(g):
    res = max_independent_set(g)
    assert res.exact
    assert res.alpha == oracles.alpha(g.n, g.edges)
    assert len(res.witness) == res.alpha and is_independent(g, res.witness)


@given(small_graphs(max_n=6))
def test_chromatic_matches_product_oracle(g):
    coloring = exact_coloring(g)
    assert all(coloring[u] != coloring[v] for u, v in g.edges)
    assert chromatic_number_exact(g) == oracles.chromatic_number(g.n, g.edges)
