"""Exact expectations and seeded Monte Carlo checks for the layered random graph.

Every Monte Carlo routine derives one 64-bit seed per trial from
``(master_seed, trial_index)`` so any single trial can be replayed alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .construction import ConstructionParams, sample_adjacency
from .errors import InstanceTooLarge, ParameterError
from .graph import Graph
from .independence import max_empty_product
from .monotone import list_bad_pairs

LEMMA_MAX_M = 16
PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def derive_seed(master_seed: int, index: int) -> int:
    state = np.random.SeedSequence([master_seed, index]).generate_state(2, np.uint32)
    return int(state[0]) | int(state[1]) << 32


def trial_rng(master_seed: int, index: int) -> tuple:
    seed = derive_seed(master_seed, index)
    return seed, np.random.default_rng(seed)


@dataclass
class McReport:
    statistic: str
    trials: int
    seeds: list
    values: list
    mean: float
    variance: float
    stderr: float
    analytic: dict = field(default_factory=dict)
    verdict: str = INCONCLUSIVE
    hits: int | None = None

    def summary(self) -> dict:
        out = {"mean": self.mean, "stderr": self.stderr}
        out.update(self.analytic)
        out["verdict"] = self.verdict
        if self.hits is not None:
            out["hits"] = self.hits
        return out


def _moments(values) -> tuple:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return math.nan, math.nan, math.nan
    mean = float(arr.mean())
    var = float(arr.var(ddof=1)) if arr.size > 1 else 0.0
    return mean, var, math.sqrt(var / arr.size)


def within_standard_errors(mean: float, stderr: float, exact, width: float = 3.0) -> bool:
    exact = float(exact)
    if stderr == 0:
        return mean == exact
    return abs(mean - exact) <= width * stderr


def _mean_report(statistic, seeds, values, exact, extra=None) -> McReport:
    mean, var, se = _moments(values)
    analytic = {"exact": float(exact)}
    if extra:
        analytic.update(extra)
    if not values:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS if within_standard_errors(mean, se, exact) else FAIL
    return McReport(statistic, len(values), seeds, values, mean, var, se, analytic, verdict)


# Lemma on empty rectangles in random bipartite graphs -----------------------


@dataclass(frozen=True)
class LemmaParams:
    m: int
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "d", Fraction(self.d))
        if not 0 < self.d <= self.m:
            raise ParameterError(f"need 0 < d <= m, got d={self.d}, m={self.m}")

    @property
    def p(self) -> Fraction:
        return self.d / self.m

    @property
    def threshold(self) -> Fraction:
        return Fraction(3 * self.m * self.m) / self.d


def _lemma_rows(lp: LemmaParams, rng: np.random.Generator) -> np.ndarray:
    hit = rng.random((lp.m, lp.m)) < float(lp.p)
    weights = 1 << np.arange(lp.m, dtype=np.int64)
    return (hit * weights).sum(axis=1)


def lemma1_bad_event(m: int, d, rng: np.random.Generator) -> bool:
    """Sample the bipartite graph once; is there an edge-free X x Y with |X||Y| >= 3m^2/d?"""
    if m > LEMMA_MAX_M:
        raise InstanceTooLarge(f"exact rectangle scan supports m <= {LEMMA_MAX_M}")
    lp = LemmaParams(m, d)
    best = int(max_empty_product(_lemma_rows(lp, rng), m))
    return best * lp.d >= 3 * m * m


def lemma1_estimate(m: int, d, trials: int, master_seed: int, chunk: int = 4096) -> McReport:
    """Empirical frequency of the bad event against the bound 2^-m.

    The report also carries the intermediate bound 2^(2m) e^(-pN) with
    N = 3m^2/d, i.e. 2^(2m) e^(-3m).
    """
    if m > LEMMA_MAX_M:
        raise InstanceTooLarge(f"exact rectangle scan supports m <= {LEMMA_MAX_M}")
    lp = LemmaParams(m, d)
    seeds, values = [], []
    pending = []
    for t in range(trials):
        seed, rng = trial_rng(master_seed, t)
        seeds.append(seed)
        pending.append(_lemma_rows(lp, rng))
        if len(pending) == chunk or t == trials - 1:
            best = max_empty_product(np.stack(pending), m)
            bad = best.astype(object) * lp.d >= 3 * m * m
            values.extend(int(b) for b in bad)
            pending = []
    hits = sum(values)
    bound = 2.0**-m
    proof_bound = 2.0 ** (2 * m) * math.exp(-float(lp.p * lp.threshold))
    mean, var, se = _moments(values)
    if trials == 0:
        verdict = INCONCLUSIVE
    else:
        verdict = PASS if Fraction(hits, trials) <= Fraction(1, 2**m) else FAIL
    return McReport(
        "lemma",
        trials,
        seeds,
        values,
        mean,
        var,
        se,
        {"bound": bound, "proof_bound": proof_bound, "expected_hits_proof": proof_bound * trials},
        verdict,
        hits,
    )


# Exact expectations ---------------------------------------------------------


def _edge_probability(gap: int, m: int, c: Fraction) -> Fraction:
    return min(Fraction(1), Fraction(c) * Fraction(2**gap, m))


def expected_monotone_paths(i: int, j: int, m: int, c=1) -> Fraction:
    """Expected number of monotone paths between fixed vertices of layers ``i < j``.

    Sums over the layer sequences the path visits, with each edge probability
    capped at 1, so it stays exact when the scale pushes probabilities over 1.
    """
    if not 1 <= i < j:
        raise ValueError("need 1 <= i < j")
    c = Fraction(c)
    span = j - i
    f = [Fraction(0)] * (span + 1)
    for t in range(1, span + 1):
        total = _edge_probability(t, m, c)
        for g in range(1, t):
            total += m * _edge_probability(g, m, c) * f[t - g]
        f[t] = total
    return f[span]


def monotone_path_terms(i: int, j: int, m: int, c=1) -> list:
    """Per-length terms C(j-i-1, l-1) m^(l-1) c^l 2^(j-i) / m^l (no cap)."""
    c = Fraction(c)
    span = j - i
    return [
        math.comb(span - 1, l - 1) * Fraction(m) ** (l - 1) * c**l * Fraction(2**span) / Fraction(m) ** l
        for l in range(1, span + 1)
    ]


def monotone_paths_closed_form(i: int, j: int, m: int, c=1) -> Fraction:
    """2^(j-i) c (1+c)^(j-i-1) / m, which is 2^(2(j-i)-1)/m at c = 1 (no cap)."""
    c = Fraction(c)
    span = j - i
    return Fraction(2**span) * c * (1 + c) ** (span - 1) / m


def two_path_term(k: int, m: int, l1: int, l2: int) -> Fraction:
    """(2^k m^(l1-1)) (2^k m^(l2-1)) (2^k / m^l1) (2^k / m^l2)."""
    m = Fraction(m)
    return (2**k * m ** (l1 - 1)) * (2**k * m ** (l2 - 1)) * (2**k / m**l1) * (2**k / m**l2)


def bad_pair_bound(k: int, m: int) -> Fraction:
    """Per-pair bound k^2 2^(4k) / m^2 on the probability of a bad pair."""
    if k < 2:
        raise ValueError("need k >= 2")
    return Fraction(k * k * 2 ** (4 * k), m * m)


def bad_pair_expectation_k3(m: int, c=1) -> Fraction:
    """Exact expected number of bad pairs for three layers.

    Only pairs in A1 x A3 can be bad. Their monotone paths are the direct
    edge and the two-edge paths through distinct middle vertices, which are
    pairwise edge-disjoint; the number of two-edge paths is Binomial(m, q).
    """
    c = Fraction(c)
    p12 = _edge_probability(1, m, c)
    p13 = _edge_probability(2, m, c)
    q = p12 * p12
    none = (1 - q) ** m
    at_least_one = 1 - none
    at_least_two = 1 - none - m * q * (1 - q) ** (m - 1)
    return m * m * (p13 * at_least_one + (1 - p13) * at_least_two)


class CycleExpectation(NamedTuple):
    bound: Fraction
    exact_triangles: Fraction


def short_cycle_expectation(k: int, m: int, r: int, c=1) -> CycleExpectation:
    """Bound sum_{l=3}^{r-1} N^l p_max^l and the exact expected triangle count.

    A triangle needs one vertex in each of three distinct layers i < j < l,
    so E[#triangles] = sum m^3 p_ij p_jl p_il; uncapped this is
    sum 2^(2(l-i)), independent of m.
    """
    c = Fraction(c)
    big_n = k * m
    p_max = _edge_probability(k - 1, m, c)
    bound = sum((Fraction(big_n) ** l * p_max**l for l in range(3, r)), Fraction(0))
    exact = Fraction(0)
    for a, b, e in combinations(range(1, k + 1), 3):
        exact += m**3 * _edge_probability(b - a, m, c) * _edge_probability(e - b, m, c) * _edge_probability(e - a, m, c)
    return CycleExpectation(bound, exact)


def expected_edges(k: int, m: int, c=1) -> Fraction:
    c = Fraction(c)
    return sum(
        (m * m * _edge_probability(j - i, m, c) for i in range(1, k + 1) for j in range(i + 1, k + 1)),
        Fraction(0),
    )


# Monte Carlo over the layered graph ------------------------------------------


def _symmetric(adj: np.ndarray) -> np.ndarray:
    a = adj.astype(np.int64)
    return a + a.T


def count_triangles(adj: np.ndarray) -> int:
    a = _symmetric(adj)
    return int(np.trace(a @ a @ a)) // 6


def count_monotone_paths(adj: np.ndarray, source: int, target: int) -> int:
    """Monotone paths from 0-based ``source`` to ``target`` in an upper-triangular adjacency."""
    counts = np.zeros(adj.shape[0], dtype=np.int64)
    counts[source] = 1
    cols = adj.astype(np.int64)
    for v in range(source + 1, target + 1):
        counts[v] = counts[source:v] @ cols[source:v, v]
    return int(counts[target])


def _graph_from_adjacency(adj: np.ndarray) -> Graph:
    us, vs = np.nonzero(adj)
    return Graph(adj.shape[0], frozenset(zip((us + 1).tolist(), (vs + 1).tolist())))


def _layered_samples(k, m, c, trials, master_seed):
    params = ConstructionParams.desk_scale(k, m, 4, edge_scale=c)
    for t in range(trials):
        seed, rng = trial_rng(master_seed, t)
        yield seed, sample_adjacency(params, rng)


def layered_estimate(statistic: str, k: int, m: int, trials: int, master_seed: int, c=1) -> McReport:
    """Monte Carlo mean of one statistic of the layered graph against its exact expectation.

    ``statistic`` is one of ``edges``, ``triangles``, ``paths`` (monotone paths
    from the first vertex of layer 1 to the last vertex of layer k) and
    ``badpairs`` (three layers only; counted by max flow).
    """
    if statistic == "edges":
        exact = expected_edges(k, m, c)
        fn = lambda adj: int(adj.sum())
    elif statistic == "triangles":
        exact = short_cycle_expectation(k, m, 4, c).exact_triangles
        fn = count_triangles
    elif statistic == "paths":
        exact = expected_monotone_paths(1, k, m, c)
        fn = lambda adj: count_monotone_paths(adj, 0, k * m - 1)
    elif statistic == "badpairs":
        if k == 2:
            exact = Fraction(0)
        elif k == 3:
            exact = bad_pair_expectation_k3(m, c)
        else:
            raise ParameterError("exact bad-pair expectation is available for k = 2 or 3 only")
        fn = lambda adj: len(list_bad_pairs(_graph_from_adjacency(adj)))
    else:
        raise ParameterError(f"unknown statistic {statistic!r}")
    seeds, values = [], []
    for seed, adj in _layered_samples(k, m, c, trials, master_seed):
        seeds.append(seed)
        values.append(fn(adj))
    return _mean_report(statistic, seeds, values, exact)
