import random

import pytest
from hypothesis import given, strategies as st

import oracles
from girthforge.errors import ChainOfThree, NotUniquelyGenerated
from girthforge.poset import (
    CoverDag,
    Poset,
    check_height2,
    color_bound,
    comparability_graph,
    covers_from_order,
    down_set_tree,
    greedy_color,
    is_linear_extension,
    is_uniquely_generated,
    linear_extension,
    unique_generation_violation,
    verify_color_bound,
    verify_tree_claim,
)
from helpers import random_forest_covers, random_tree_like_covers

BOOLEAN_2 = [(1, 2), (1, 3), (2, 4), (3, 4)]  # 1 = empty set, 4 = {1, 2}
# a=1, a'=2, b=3, v=4: b covers a', v covers a and b
TIGHT_4 = [(2, 3), (1, 4), (3, 4)]


def test_poset_rejects_non_orders():
    with pytest.raises(ValueError):
        Poset.from_relation(2, [(1, 2), (2, 1)])
    with pytest.raises(ValueError):
        Poset.from_relation(3, [(1, 2), (2, 3)])  # missing 1 < 3
    with pytest.raises(ValueError):
        CoverDag.from_edges(2, [(1, 2), (2, 1)])


def test_covers_from_order_examples():
    chain = Poset.from_relation(3, [(1, 2), (2, 3), (1, 3)])
    assert covers_from_order(chain).cover_edges == {(1, 2), (2, 3)}
    assert covers_from_order(Poset.antichain(4)).cover_edges == frozenset()
    boolean = Poset.from_covers(4, BOOLEAN_2)
    assert covers_from_order(boolean).cover_edges == set(BOOLEAN_2)


def test_unique_generation_examples():
    assert unique_generation_violation(CoverDag.from_edges(4, BOOLEAN_2)) == (1, 4)
    forest = CoverDag.from_edges(6, [(1, 3), (2, 3), (3, 6), (4, 5)])
    assert is_uniquely_generated(forest)


def test_linear_extension_examples():
    assert linear_extension(Poset.from_covers(2, [(2, 1)])) == (2, 1)
    assert linear_extension(Poset.antichain(3)) == (1, 2, 3)
    assert linear_extension(Poset.chain(5)) == (1, 2, 3, 4, 5)
    with pytest.raises(ValueError):
        Poset.from_covers(2, [(1, 2)], extension=(2, 1))


def test_greedy_examples():
    assert set(greedy_color(CoverDag.from_edges(5, []), range(1, 6)).values()) == {1}
    chain = covers_from_order(Poset.chain(4))
    assert greedy_color(chain, (1, 2, 3, 4)) == {1: 1, 2: 2, 3: 1, 4: 2}
    tight = CoverDag.from_edges(4, TIGHT_4)
    coloring = greedy_color(tight, (1, 2, 3, 4))
    assert coloring == {1: 1, 2: 1, 3: 2, 4: 3}
    assert coloring == oracles.greedy(4, set(TIGHT_4), (1, 2, 3, 4))
    assert color_bound(4) == 3 and verify_color_bound(coloring, 4)
    assert len(down_set_tree(tight, 4).members) == 4
    assert verify_tree_claim(tight, coloring)


def test_bound_examples():
    chain = covers_from_order(Poset.chain(1024))
    coloring = greedy_color(chain, range(1, 1025))
    assert max(coloring.values()) == 2 and color_bound(1024) == 11
    assert verify_color_bound({v: 1 for v in range(1, 8)}, 7)
    assert [color_bound(n) for n in (1, 2, 3, 4, 7, 8)] == [1, 2, 2, 3, 3, 4]


def test_down_set_tree_examples():
    chain = covers_from_order(Poset.chain(4))
    t = down_set_tree(chain, 4)
    assert t.members == (1, 2, 3, 4) and len(t.edges) == 3
    assert down_set_tree(CoverDag.from_edges(3, []), 2).members == (2,)
    with pytest.raises(NotUniquelyGenerated):
        down_set_tree(CoverDag.from_edges(4, BOOLEAN_2), 4)


def test_comparability_graph_examples():
    assert comparability_graph(Poset.chain(3)).sorted_edges() == [(1, 2), (1, 3), (2, 3)]
    assert not comparability_graph(Poset.antichain(3)).edges
    p = Poset.from_covers(5, [(1, 3), (3, 5)])
    assert comparability_graph(p).sorted_edges() == [(1, 3), (1, 5), (3, 5)]


def test_height2_examples():
    assert check_height2(Poset.from_covers(3, [(1, 3), (2, 3)])) == ((1, 2), (3,))
    with pytest.raises(ChainOfThree) as exc:
        check_height2(Poset.chain(3))
    assert exc.value.chain == (1, 2, 3)
    assert check_height2(Poset.antichain(3)) == ((1, 2, 3), ())


def test_random_forests_pass_everything():
    rnd = random.Random(7)
    for _ in range(300):
        n = rnd.randint(1, 60)
        cd = CoverDag.from_edges(n, random_forest_covers(n, rnd))
        ext = tuple(range(1, n + 1))
        coloring = greedy_color(cd, ext)
        assert is_uniquely_generated(cd)
        assert verify_color_bound(coloring, n)
        assert verify_tree_claim(cd, coloring)


@st.composite
def small_dags(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    pairs = [(x, y) for x in range(1, n + 1) for y in range(x + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = draw(st.permutations(range(1, n + 1)))
    # relabel so that labels need not follow the order
    return n, [(perm[x - 1], perm[y - 1]) for x, y in chosen]


@given(small_dags())
def test_cover_relation_matches_oracle(dag):
    n, edges = dag
    p = Poset.from_covers(n, edges)
    rel = oracles.order_from_relation(n, edges)
    assert set(p.relation()) == rel
    assert set(covers_from_order(p).cover_edges) == oracles.covers(n, rel)
    assert is_linear_extension(p, p.extension)


@given(small_dags())
def test_unique_generation_matches_chain_counting(dag):
    n, edges = dag
    cd = covers_from_order(Poset.from_covers(n, edges))
    want = oracles.uniquely_generated(n, set(cd.cover_edges))
    assert is_uniquely_generated(cd) == want
    witness = unique_generation_violation(cd)
    if witness is not None:
        assert oracles.cover_chain_counts(n, set(cd.cover_edges), *witness) >= 2


@given(small_dags())
def test_greedy_matches_oracle_and_is_proper(dag):
    n, edges = dag
    p = Poset.from_covers(n, edges)
    cd = covers_from_order(p)
    coloring = greedy_color(cd, p.extension)
    assert coloring == oracles.greedy(n, set(cd.cover_edges), p.extension)
    assert all(coloring[x] != coloring[y] for x, y in cd.cover_edges)


@given(st.integers(min_value=1, max_value=200), st.randoms(use_true_random=False))
def test_tree_claim_on_uniquely_generated_posets(n, rnd):
    cd = CoverDag.from_edges(n, random_tree_like_covers(n, rnd))
    assert is_uniquely_generated(cd)
    coloring = greedy_color(cd, cd.topo)
    assert verify_color_bound(coloring, n)
    rel = None
    for v in (1, n, (n + 1) // 2):
        t = down_set_tree(cd, v)
        assert len(t.members) >= 1 << (coloring[v] - 1)
        if n <= 25:
            rel = rel or oracles.order_from_relation(n, cd.cover_edges)
            assert set(t.members) == oracles.down_set(n, rel, v)


@given(small_dags())
def test_vectorized_tree_claim_matches_explicit_trees(dag):
    n, edges = dag
    p = Poset.from_covers(n, edges)
    cd = covers_from_order(p)
    coloring = greedy_color(cd, p.extension)
    explicit = True
    for v in range(1, n + 1):
        try:
            t = down_set_tree(cd, v)
        except NotUniquelyGenerated:
            explicit = False
            break
        explicit &= len(t.members) >= 1 << (coloring[v] - 1)
    assert verify_tree_claim(cd, coloring) == explicit
    assert explicit == oracles.uniquely_generated(n, set(cd.cover_edges)) or not explicit
