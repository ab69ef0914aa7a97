from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from girthforge.construction import (
    ConstructionParams,
    LayeredGraph,
    build_poset,
    event_A_check,
    paper_constant_chain,
    repair,
    sample_layered_graph,
    series_partial_sum,
    split_sum,
    verify_construction,
)
from girthforge.errors import BadPairsPresent, InsufficientSurvivors, ParameterError
from girthforge.graph import Graph
from girthforge.poset import covers_from_order, is_uniquely_generated


def layered(k, m, edges):
    return LayeredGraph(Graph.from_edges(k * m, edges), k, m)


def test_parameter_validation():
    for bad in ((1, 5, 5), (3, 1, 5), (3, 5, 3)):
        with pytest.raises(ParameterError):
            ConstructionParams.desk_scale(*bad)
    with pytest.raises(ParameterError):
        ConstructionParams.desk_scale(3, 5, 5, edge_scale=0)


def test_paper_mode_rounding():
    with pytest.raises(ParameterError):
        ConstructionParams.paper_exact(2**39, 4)  # below 2^(10r)
    with pytest.raises(ParameterError):
        ConstructionParams.paper_exact(2**40, 4)  # k = floor(log2(3 * 2^40) / 40) = 1
    p = ConstructionParams.paper_exact(2**80, 4)
    assert p.k == 2 and p.m == 3 * 2**80 // 2
    assert p.probability(1, 2) == Fraction(2, p.m)
    assert not p.capped_pairs()


def test_two_layer_sample_is_bipartite():
    params = ConstructionParams.desk_scale(2, 10, 4, seed=3)
    assert params.probability(1, 2) == Fraction(2, 10)
    lg = sample_layered_graph(params)
    assert all(u <= 10 < v for u, v in lg.graph.edges)


def test_sampling_is_deterministic():
    params = ConstructionParams.desk_scale(4, 12, 5, seed=11)
    assert sample_layered_graph(params).graph == sample_layered_graph(params).graph
    other = ConstructionParams.desk_scale(4, 12, 5, seed=12)
    assert sample_layered_graph(params).graph != sample_layered_graph(other).graph


def test_capped_probability():
    params = ConstructionParams.desk_scale(5, 8, 5)
    assert params.capped_pairs() == ((1, 5),)
    assert params.probability(1, 5) == 1
    lg = sample_layered_graph(params)
    assert all(lg.graph.has_edge(u, v) for u in lg.layer(1) for v in lg.layer(5))


def test_intra_layer_edge_rejected():
    with pytest.raises(ValueError):
        layered(2, 3, [(1, 2)])


def test_clean_input_is_untouched():
    lg = layered(3, 2, [(1, 3), (4, 5)])
    gprime, rep = repair(lg, 5)
    assert gprime == lg.graph
    assert rep.deleted == [] and rep.rounds == 0


def test_triangle_is_broken():
    lg = layered(3, 2, [(1, 3), (3, 5), (1, 5), (2, 4)])
    gprime, rep = repair(lg, 5)
    assert {1, 3, 5} & set(rep.deleted)
    assert oracles.girth_by_edge_removal(gprime.n, gprime.edges) is None
    assert verify_construction(gprime, 5).passed


def test_target_n_trims_highest_labels():
    lg = layered(2, 4, [(1, 5), (2, 6)])
    gprime, rep = repair(lg, 4, target_n=5)
    assert gprime.n == 5 and rep.deleted == [6, 7, 8]
    assert rep.old_labels == [1, 2, 3, 4, 5]
    with pytest.raises(InsufficientSurvivors):
        repair(lg, 4, target_n=9)


def test_build_poset_examples():
    p = build_poset(Graph.from_edges(5, [(1, 3), (3, 5)]))
    assert set(p.relation()) == {(1, 3), (3, 5), (1, 5)}
    assert covers_from_order(p).cover_edges == {(1, 3), (3, 5)}
    assert p.extension == (1, 2, 3, 4, 5)
    assert not build_poset(Graph(4, frozenset())).relation()
    with pytest.raises(BadPairsPresent) as exc:
        build_poset(Graph.complete(3))
    assert exc.value.pair == (1, 3)


def test_event_A_examples():
    full = layered(3, 4, [(u, v) for u in range(1, 13) for v in range(u + 1, 13) if (u - 1) // 4 != (v - 1) // 4])
    assert event_A_check(full) is True
    # 3 * 16 / 4 = 12 <= 16 with all of layer 1 against all of layer 3
    assert event_A_check(layered(3, 4, [])) is False
    # adjacent layers alone can never violate: 3m^2/2 > m^2
    assert event_A_check(layered(2, 4, [])) is True
    assert event_A_check(sample_layered_graph(ConstructionParams.desk_scale(3, 20, 5))) is None


def test_event_A_against_rectangle_oracle():
    rnd = np.random.default_rng(2)
    for trial in range(30):
        m = 5
        params = ConstructionParams.desk_scale(3, m, 5, edge_scale=Fraction(int(rnd.integers(1, 4)), 4), seed=trial)
        lg = sample_layered_graph(params)
        ok = True
        for i, j in ((1, 3),):
            bip = {(u, v) for u in lg.layer(i) for v in lg.layer(j) if lg.graph.has_edge(u, v)}
            if oracles.max_empty_rectangle(bip, lg.layer(i), lg.layer(j)) * 2 ** (j - i) >= 3 * m * m:
                ok = False
        assert event_A_check(lg) is ok


def test_verify_construction_examples():
    path = Graph.from_edges(3, [(1, 2), (2, 3)])
    rep = verify_construction(path, 5)
    assert rep.passed and rep.alpha == 2 and rep.chi_lower_bound == 2
    tri = verify_construction(Graph.complete(3), 4)
    assert not tri.clause("bad_pairs").passed
    assert tri.clause("bad_pairs").witness == "pair 1 3"
    assert not tri.clause("girth").passed


def test_two_layer_instances_never_delete():
    for seed in range(10):
        lg = sample_layered_graph(ConstructionParams.desk_scale(2, 8, 4, seed=seed))
        gprime, rep = repair(lg, 4)
        assert rep.deleted == [] and rep.bad_pairs_found == 0
        assert verify_construction(gprime, 4).clause("bad_pairs").passed


def test_alpha_bound_clause_fires():
    lg_params = ConstructionParams.desk_scale(2, 2, 4)
    edgeless = Graph(30, frozenset())
    rep = verify_construction(edgeless, 4, lg_params, event_A=True)
    assert not rep.clause("alpha_bound").passed
    assert rep.clause("alpha_bound").witness == "alpha=30>7m=14"


@settings(max_examples=25)
@given(
    k=st.integers(min_value=2, max_value=4),
    m=st.integers(min_value=2, max_value=6),
    r=st.integers(min_value=4, max_value=6),
    seed=st.integers(min_value=0, max_value=10**6),
)
def test_repair_postconditions_against_oracles(k, m, r, seed):
    lg = sample_layered_graph(ConstructionParams.desk_scale(k, m, r, seed=seed))
    gprime, rep = repair(lg, r)
    g0 = oracles.girth_by_edge_removal(gprime.n, gprime.edges)
    assert g0 is None or g0 >= r
    assert oracles.bad_pairs(gprime.n, gprime.edges) == []
    # relabeling preserves order and the induced edges
    old = rep.old_labels
    assert old == sorted(old) and len(old) == gprime.n
    assert all(lg.graph.has_edge(old[u - 1], old[v - 1]) for u, v in gprime.edges)
    assert sorted(set(old) | set(rep.deleted)) == list(lg.graph.vertices)
    kept = set(old)
    for u, v in lg.graph.edges:
        if u in kept and v in kept:
            assert gprime.has_edge(old.index(u) + 1, old.index(v) + 1)
    p = build_poset(gprime)
    cd = covers_from_order(p)
    assert set(cd.cover_edges) == set(gprime.edges)
    assert is_uniquely_generated(cd)


def test_constant_chain():
    for r in (4, 10, 64):
        cert = paper_constant_chain(r)
        assert cert.holds
        lo, hi = cert.lhs_interval
        assert lo < hi and lo > cert.rhs == Fraction(1, 100)
    assert series_partial_sum(20) < 2
    assert all(series_partial_sum(k) == 2 - Fraction(k + 2, 2**k) for k in range(1, 65))
    with pytest.raises(ValueError):
        paper_constant_chain(3)


def test_split_sum_product_form():
    for k in range(2, 12):
        for h in range(1, k):
            direct = sum(Fraction(1, 2 ** (j - i)) for i in range(1, h + 1) for j in range(h + 1, k + 1))
            assert split_sum(k, h) == direct < 2
