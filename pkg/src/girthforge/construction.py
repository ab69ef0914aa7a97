"""Layered random graphs repaired into high-girth cover graphs of uniquely generated posets.

The pipeline is ``sample_layered_graph -> repair -> build_poset ->
verify_construction``. Vertices ``1..k*m`` are split into ``k`` consecutive
layers of ``m`` vertices; a vertex of layer ``i`` and one of layer ``j > i``
are joined independently with probability ``2^(j-i)/m`` (times an optional
edge scale, capped at 1).
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .errors import BadPairsPresent, InsufficientSurvivors, ParameterError
from .graph import DEFAULT_CYCLE_CAP, Graph, count_short_cycles, girth
from .independence import DEFAULT_MIS_BUDGET, max_empty_product, max_independent_set
from .monotone import first_multi_path_pair, list_bad_pairs, reachability_masks, saturating_path_counts
from .poset import Poset, covers_from_order, unique_generation_violation

PAPER_EXACT = "paper"
DESK_SCALE = "desk"
MAX_SAMPLED_VERTICES = 20_000
EVENT_A_MAX_M = 16


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


@dataclass(frozen=True)
class ConstructionParams:
    k: int
    m: int
    r: int
    edge_scale: Fraction = Fraction(1)
    seed: int = 0
    target_n: int | None = None
    mode: str = DESK_SCALE
    n: int | None = None  # requested size in exact mode

    def __post_init__(self):
        object.__setattr__(self, "edge_scale", _as_fraction(self.edge_scale))
        if self.k < 2 or self.m < 2:
            raise ParameterError(f"need k >= 2 and m >= 2, got k={self.k}, m={self.m}")
        if self.r < 4:
            raise ParameterError(f"girth target must be at least 4, got r={self.r}")
        if self.edge_scale <= 0:
            raise ParameterError("edge scale must be positive")
        if self.mode == PAPER_EXACT:
            for i, j in self.layer_pairs():
                if self.raw_probability(i, j) > 1:
                    raise ParameterError(f"p_{i}{j} exceeds 1 with k={self.k}, m={self.m}")
        elif self.mode != DESK_SCALE:
            raise ParameterError(f"unknown mode {self.mode!r}")

    @classmethod
    def desk_scale(cls, k, m, r, edge_scale=1, seed=0, target_n=None) -> ConstructionParams:
        return cls(k, m, r, _as_fraction(edge_scale), seed, target_n, DESK_SCALE)

    @classmethod
    def paper_exact(cls, n, r, seed=0, target_n=None) -> ConstructionParams:
        """N = 3n, k = floor(log2(N) / 10r), m = floor(N / k); needs n >= 2^(10r)."""
        if r < 4:
            raise ParameterError(f"girth target must be at least 4, got r={r}")
        if n < 2 ** (10 * r):
            raise ParameterError(f"exact-mode parameters need n >= 2^{10 * r}")
        big_n = 3 * n
        k = (big_n.bit_length() - 1) // (10 * r)
        if k < 2:
            raise ParameterError(f"k = floor(log2(3n) / 10r) = {k} < 2; n is too small for r={r}")
        m = big_n // k
        return cls(k, m, r, Fraction(1), seed, target_n, PAPER_EXACT, n)

    @property
    def N(self) -> int:
        return self.k * self.m

    def layer_pairs(self):
        return [(i, j) for i in range(1, self.k + 1) for j in range(i + 1, self.k + 1)]

    def raw_probability(self, i: int, j: int) -> Fraction:
        return self.edge_scale * Fraction(2 ** (j - i), self.m)

    def probability(self, i: int, j: int) -> Fraction:
        return min(Fraction(1), self.raw_probability(i, j))

    def capped_pairs(self) -> tuple:
        return tuple((i, j) for i, j in self.layer_pairs() if self.raw_probability(i, j) > 1)

    def layer(self, i: int) -> range:
        return range((i - 1) * self.m + 1, i * self.m + 1)


@dataclass(frozen=True)
class LayeredGraph:
    graph: Graph
    k: int
    m: int
    capped_pairs: tuple = ()

    def __post_init__(self):
        if self.graph.n != self.k * self.m:
            raise ValueError(f"graph has {self.graph.n} vertices, layers need {self.k * self.m}")
        for u, v in self.graph.edges:
            if self.layer_of(u) == self.layer_of(v):
                raise ValueError(f"edge {u}-{v} lies inside layer {self.layer_of(u)}")

    def layer_of(self, v: int) -> int:
        return (v - 1) // self.m + 1

    def layer(self, i: int) -> range:
        return range((i - 1) * self.m + 1, i * self.m + 1)


def sample_adjacency(params: ConstructionParams, rng: np.random.Generator) -> np.ndarray:
    """Upper-triangular boolean adjacency matrix (0-based) of one layered sample.

    Layer pairs are drawn in lexicographic order, each as one ``m x m`` block
    of uniforms, so the output is a fixed function of the generator state.
    """
    k, m = params.k, params.m
    adj = np.zeros((k * m, k * m), dtype=bool)
    for i, j in params.layer_pairs():
        p = float(params.probability(i, j))
        block = rng.random((m, m)) < p
        adj[(i - 1) * m : i * m, (j - 1) * m : j * m] = block
    return adj


def sample_layered_graph(params: ConstructionParams, rng: np.random.Generator | None = None) -> LayeredGraph:
    if params.N > MAX_SAMPLED_VERTICES:
        raise ParameterError(f"{params.N} vertices is beyond what can be sampled here")
    if rng is None:
        rng = np.random.default_rng(params.seed)
    adj = sample_adjacency(params, rng)
    us, vs = np.nonzero(adj)
    g = Graph(params.N, frozenset(zip((us + 1).tolist(), (vs + 1).tolist())))
    return LayeredGraph(g, params.k, params.m, params.capped_pairs())


def event_A_check(lg: LayeredGraph) -> bool | None:
    """Whether every edge-free ``X x Y`` with ``X`` in layer i, ``Y`` in layer j has ``|X||Y| < 3m^2 / 2^(j-i)``.

    Exact for ``m <= 16``; returns None (unchecked) beyond that.
    """
    m = lg.m
    if m > EVENT_A_MAX_M:
        return None
    g = lg.graph
    for i in range(1, lg.k + 1):
        for j in range(i + 2, lg.k + 1):  # j = i + 1 cannot violate: 3m^2/2 > m^2
            base = (j - 1) * m + 1
            rows = np.array(
                [sum(1 << (w - base) for w in g.adj[x] if base <= w < base + m) for x in lg.layer(i)],
                dtype=np.int64,
            )
            best = int(max_empty_product(rows, m))
            if best * 2 ** (j - i) >= 3 * m * m:
                return False
    return True


@dataclass
class RepairReport:
    deleted: list
    bad_pairs_found: int
    short_cycles_found: int
    short_cycles_capped: bool
    event_A: bool | None
    survived_n: int
    old_labels: list
    rounds: int = 1
    layer_of: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "deleted": " ".join(map(str, self.deleted)) or "-",
            "deleted_count": len(self.deleted),
            "bad_pairs_found": self.bad_pairs_found,
            "short_cycles_found": self.short_cycles_found,
            "short_cycles_capped": str(self.short_cycles_capped).lower(),
            "event_A": {True: "true", False: "false", None: "unchecked"}[self.event_A],
            "survived_n": self.survived_n,
            "rounds": self.rounds,
            "old_labels": " ".join(map(str, self.old_labels)) or "-",
        }


def _violations(g: Graph, r: int, cycle_cap: int) -> tuple:
    bad = list_bad_pairs(g)
    cycles = count_short_cycles(g, r, cap=cycle_cap)
    return bad, cycles


def _greedy_hitting_set(sets: list, labels: list) -> list:
    """Repeatedly take the vertex in the most unhit sets; ties go to the smallest label."""
    remaining = [frozenset(s) for s in sets]
    picked = []
    while remaining:
        tally = Counter(v for s in remaining for v in s)
        top = max(tally.values())
        v = min((v for v, c in tally.items() if c == top), key=lambda u: labels[u - 1])
        picked.append(v)
        remaining = [s for s in remaining if v not in s]
    return picked


def repair(lg: LayeredGraph, r: int, target_n: int | None = None, cycle_cap: int = DEFAULT_CYCLE_CAP):
    """Delete vertices until no bad pair and no cycle shorter than ``r`` remains.

    Returns ``(gprime, report)`` where ``gprime`` is the surviving induced
    subgraph relabeled ``1..n'`` in the original order. When the cycle
    enumeration hits ``cycle_cap`` only a sample of the short cycles is hit
    per round, so rounds repeat until a full re-check comes back clean.
    """
    g = lg.graph
    labels = list(g.vertices)  # current label -> original label
    deleted = []
    bad, cycles = _violations(g, r, cycle_cap)
    first_bad, first_cycles, capped = len(bad), cycles.count, cycles.capped
    rounds = 0
    while bad or cycles.count:
        rounds += 1
        sets = [set(p) for p in bad] + [set(c) for c in cycles.witnesses]
        hit = set(_greedy_hitting_set(sets, labels))
        deleted.extend(labels[v - 1] for v in sorted(hit, key=lambda u: labels[u - 1]))
        g, kept = g.induced(v for v in g.vertices if v not in hit)
        labels = [labels[v - 1] for v in kept]
        bad, cycles = _violations(g, r, cycle_cap)
    if target_n is not None:
        if g.n < target_n:
            raise InsufficientSurvivors(g.n, target_n)
        if g.n > target_n:
            extra = list(range(target_n + 1, g.n + 1))
            deleted.extend(labels[v - 1] for v in extra)
            g, kept = g.induced(range(1, target_n + 1))
            labels = [labels[v - 1] for v in kept]
    report = RepairReport(
        deleted=deleted,
        bad_pairs_found=first_bad,
        short_cycles_found=first_cycles,
        short_cycles_capped=capped,
        event_A=event_A_check(lg),
        survived_n=g.n,
        old_labels=labels,
        rounds=rounds,
        layer_of=[lg.layer_of(v) for v in labels],
    )
    return g, report


def build_poset(gprime: Graph) -> Poset:
    """``a < b`` iff ``a < b`` as integers and a monotone path joins them.

    The identity order is recorded as the linear extension.
    """
    witness = first_multi_path_pair(gprime)
    if witness is not None:
        bad = list_bad_pairs(gprime)
        raise BadPairsPresent(bad[0] if bad else witness)
    return _reachability_poset(gprime)


def _reachability_poset(g: Graph) -> Poset:
    reach = reachability_masks(g)
    return Poset(g.n, tuple(reach), tuple(g.vertices))


class Clause(NamedTuple):
    name: str
    passed: bool
    witness: str


@dataclass
class VerificationReport:
    clauses: list
    n: int
    alpha: int
    alpha_exact: bool
    chi_lower_bound: int

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def failed(self) -> list:
        return [c for c in self.clauses if not c.passed]

    def clause(self, name: str) -> Clause:
        return next(c for c in self.clauses if c.name == name)


def verify_construction(
    gprime: Graph,
    r: int,
    params: ConstructionParams | None = None,
    event_A: bool | None = None,
    budget: int = DEFAULT_MIS_BUDGET,
) -> VerificationReport:
    """Re-derive every claimed property of a repaired graph from scratch.

    Clauses: ``girth`` (at least r), ``bad_pairs`` (none, by flow),
    ``covers`` (cover relation of the reachability order equals the edge
    set), ``unique`` (at most one cover chain between any two elements),
    ``independence`` (alpha and the bound ceil(n'/alpha) on chi), and
    ``alpha_bound`` (alpha <= 7m whenever event A was checked true).
    """
    clauses = []
    gi = girth(gprime)
    clauses.append(
        Clause("girth", gi.at_least(r), "-" if gi.at_least(r) else "cycle " + " ".join(map(str, gi.cycle)))
    )

    bad = list_bad_pairs(gprime)
    clauses.append(Clause("bad_pairs", not bad, "-" if not bad else "pair {} {}".format(*bad[0])))

    poset = _reachability_poset(gprime)
    cd = covers_from_order(poset)
    diff = sorted(set(cd.cover_edges) ^ set(gprime.edges))
    clauses.append(Clause("covers", not diff, "-" if not diff else "edge {} {}".format(*diff[0])))

    unique_witness = None
    for x in gprime.vertices:
        counts = saturating_path_counts(gprime.n, cd.cover_edges, x, order=cd.topo)
        over = [y for y, c in counts.items() if c >= 2]
        if over:
            unique_witness = (x, over[0])
            break
    if unique_witness is None and unique_generation_violation(cd) is not None:
        unique_witness = unique_generation_violation(cd)
    clauses.append(
        Clause("unique", unique_witness is None, "-" if unique_witness is None else "pair {} {}".format(*unique_witness))
    )

    mis = max_independent_set(gprime, budget)
    chi_lb = math.ceil(gprime.n / mis.alpha) if mis.alpha else 0
    clauses.append(
        Clause("independence", True, f"alpha={mis.alpha} exact={str(mis.exact).lower()} chi>={chi_lb}")
    )

    if params is None or event_A is not True:
        clauses.append(Clause("alpha_bound", True, "vacuous:event_A=" + {None: "unchecked", False: "false", True: "true"}[event_A]))
    else:
        limit = 7 * params.m
        if mis.alpha > limit:
            clauses.append(Clause("alpha_bound", False, f"alpha={mis.alpha}>7m={limit}"))
        elif mis.exact:
            clauses.append(Clause("alpha_bound", True, f"alpha={mis.alpha}<=7m={limit}"))
        else:
            clauses.append(Clause("alpha_bound", True, f"vacuous:alpha_inexact lower={mis.alpha}<=7m={limit}"))
    return VerificationReport(clauses, gprime.n, mis.alpha, mis.exact, chi_lb)


# constant chain -----------------------------------------------------------

# 3/2 < log2(3) < 8/5, since 2^3 < 3^2 and 3^5 < 2^8
LOG2_3_LOWER = Fraction(3, 2)
LOG2_3_UPPER = Fraction(8, 5)


@dataclass(frozen=True)
class ConstantCertificate:
    r: int
    k_interval: tuple  # rational bracket of log2(N) / 10r
    lhs_interval: tuple  # bracket of n / 7m = k / 21
    rhs: Fraction  # log2(n) / (1000 r)
    holds: bool
    series_sum: Fraction  # sum_{l=1}^{K} l 2^-l for K = ceil(k)
    series_remainder: Fraction
    split_sum_max: Fraction  # max over h of sum_{i<=h<j} 2^(i-j), K layers


def series_partial_sum(k: int) -> Fraction:
    return sum((Fraction(l, 2**l) for l in range(1, k + 1)), Fraction(0))


def split_sum(k: int, h: int) -> Fraction:
    """sum over i <= h < j <= k of 2^(i-j), via its product form."""
    return (2 - Fraction(2, 2**h)) * (1 - Fraction(1, 2 ** (k - h)))


def split_sum_max(k: int) -> Fraction:
    return max((split_sum(k, h) for h in range(1, k)), default=Fraction(0))


def paper_constant_chain(r: int) -> ConstantCertificate:
    """Check n/7m = k/21 > log2(n)/(1000 r) at n = 2^(10r) with exact rationals.

    log2(N) = 10r + log2(3) is irrational, so k is carried as a rational
    interval and the inequality is checked at its lower end.
    """
    if not 4 <= r <= 64:
        raise ValueError("r must lie in 4..64")
    assert 2**3 < 3**2 and 3**5 < 2**8
    n = 2 ** (10 * r)
    big_n = 3 * n
    k_lo = (10 * r + LOG2_3_LOWER) / (10 * r)
    k_hi = (10 * r + LOG2_3_UPPER) / (10 * r)
    lhs = []
    for k in (k_lo, k_hi):
        m = big_n / k
        ratio = n / (7 * m)
        assert ratio == k / 21
        lhs.append(ratio)
    rhs = Fraction(10 * r, 1000 * r)
    kk = math.ceil(k_hi)
    s = series_partial_sum(kk)
    return ConstantCertificate(
        r=r,
        k_interval=(k_lo, k_hi),
        lhs_interval=tuple(lhs),
        rhs=rhs,
        holds=lhs[0] > rhs,
        series_sum=s,
        series_remainder=2 - s,
        split_sum_max=split_sum_max(max(kk, 2)),
    )
