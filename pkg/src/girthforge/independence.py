"""Independence number by branch and bound, exact chromatic number, empty rectangles."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InstanceTooLarge
from .graph import Graph
from .monotone import iter_bits

DEFAULT_MIS_BUDGET = 200_000
CHROMATIC_CAP = 20

# 31-bit primes; products of two residues fit in int64.
_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
)


class IndependentSet(NamedTuple):
    alpha: int
    witness: tuple
    exact: bool
    nodes: int


def is_independent(g: Graph, vertices) -> bool:
    vs = set(vertices)
    return not any(u in vs and v in vs for u, v in g.edges)


def _greedy_independent(nbr: list, cand: int) -> int:
    chosen = 0
    while cand:
        v = min(iter_bits(cand), key=lambda u: (bin(nbr[u] & cand).count("1"), u))
        chosen |= 1 << v
        cand &= ~((1 << v) | nbr[v])
    return chosen


def _clique_cover_bound(nbr: list, cand: int) -> int:
    """Number of cliques in a greedy clique cover of ``cand``; bounds alpha from above."""
    cliques = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        grow = nbr[v] & rest
        while grow:
            wl = grow & -grow
            w = wl.bit_length() - 1
            rest ^= wl
            grow &= nbr[w] & ~wl
        cliques += 1
    return cliques


def max_independent_set(g: Graph, budget: int = DEFAULT_MIS_BUDGET) -> IndependentSet:
    """Branch and bound for the independence number.

    Vertices of degree at most one in the candidate set are taken without
    branching. Otherwise the search branches on a maximum-degree vertex and
    prunes with a greedy clique-cover upper bound. If more than ``budget``
    search nodes are needed the best set found so far is returned with
    ``exact=False``.
    """
    nbr = list(g.masks)
    full = sum(1 << v for v in g.vertices)
    best = _greedy_independent(nbr, full)
    best_size = best.bit_count()
    nodes = 0
    exhausted = False

    def search(cand: int, chosen: int):
        nonlocal best, best_size, nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return
        changed = True
        while changed and cand:
            changed = False
            for v in iter_bits(cand):
                if not cand >> v & 1:
                    continue
                if (nbr[v] & cand).bit_count() <= 1:
                    chosen |= 1 << v
                    cand &= ~((1 << v) | nbr[v])
                    changed = True
        size = chosen.bit_count()
        if not cand:
            if size > best_size:
                best, best_size = chosen, size
            return
        if size + _clique_cover_bound(nbr, cand) <= best_size:
            return
        v = max(iter_bits(cand), key=lambda u: ((nbr[u] & cand).bit_count(), -u))
        bit = 1 << v
        search(cand & ~(bit | nbr[v]), chosen | bit)
        if exhausted:
            return
        search(cand & ~bit, chosen)

    search(full, 0)
    return IndependentSet(best_size, tuple(iter_bits(best)), not exhausted, nodes)


def _independent_set_counts(g: Graph) -> np.ndarray:
    """``out[S]`` = number of independent subsets (including the empty one) of ``S``.

    Bit ``b`` of the index ``S`` stands for vertex ``b + 1``.
    """
    n = g.n
    out = np.ones(1, dtype=np.int64)
    for b in range(n):
        low_nbrs = 0
        for w in g.adj[b + 1]:
            if w - 1 < b:
                low_nbrs |= 1 << (w - 1)
        idx = np.arange(1 << b, dtype=np.int64)
        out = np.concatenate([out, out + out[idx & ~low_nbrs]])
    return out


def _covering_count_nonzero(counts: np.ndarray, sign: np.ndarray, k: int) -> bool:
    """Whether the number of ordered k-tuples of independent sets covering V is positive.

    Inclusion-exclusion gives that count as sum over S of
    (-1)^(n-|S|) * counts[S]^k. It is a nonnegative integer bounded by
    counts[V]^k, so it is evaluated modulo enough primes to make a residue
    of zero everywhere imply an exact zero.
    """
    needed_bits = k * int(counts[-1]).bit_length() + 1
    bits = 0
    for p in _PRIMES:
        base = counts % p
        acc = np.ones_like(base)
        for _ in range(k):
            acc = (acc * base) % p
        total = int((acc[sign > 0].sum() - acc[sign < 0].sum()) % p)
        if total:
            return True
        bits += p.bit_length() - 1
        if bits >= needed_bits:
            return False
    raise AssertionError("prime table too short for this instance")


def _color_with(g: Graph, k: int) -> dict | None:
    order = sorted(g.vertices, key=lambda v: -g.degree(v))
    color = {}

    def place(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        used = {color[w] for w in g.adj[v] if w in color}
        for c in range(1, k + 1):
            if c not in used:
                color[v] = c
                if place(i + 1):
                    return True
                del color[v]
            # symmetry: a fresh color is only worth trying once
            if c > max(color.values(), default=0):
                break
        return False

    return dict(color) if place(0) else None


def exact_coloring(g: Graph) -> dict:
    """An optimal proper coloring (colors ``1..chi``); at most ``CHROMATIC_CAP`` vertices."""
    if g.n > CHROMATIC_CAP:
        raise InstanceTooLarge(f"exact chromatic number is capped at {CHROMATIC_CAP} vertices, got {g.n}")
    if g.n == 0:
        return {}
    counts = _independent_set_counts(g)
    popcount = np.bitwise_count(np.arange(1 << g.n, dtype=np.uint64)).astype(np.int64)
    sign = np.where((g.n - popcount) % 2 == 0, 1, -1)
    k = 1 if not g.edges else 2
    while not _covering_count_nonzero(counts, sign, k):
        k += 1
    coloring = _color_with(g, k)
    if coloring is None:
        raise AssertionError(f"inclusion-exclusion says {k} colors suffice but none was found")
    return coloring


def chromatic_number_exact(g: Graph) -> int:
    return max(exact_coloring(g).values(), default=0)


def max_empty_product(rows: np.ndarray, width: int) -> np.ndarray:
    """Largest ``|X| * |Y|`` over edge-free rectangles of a bipartite graph.

    ``rows[..., a]`` is the neighbor bitmask (over ``width`` columns) of row
    ``a``. For every row subset ``X`` the best ``Y`` is the common
    non-neighborhood of ``X``, so only ``2^rows`` subsets are scanned.
    Leading axes are treated as a batch.
    """
    rows = np.asarray(rows, dtype=np.int64)
    a = rows.shape[-1]
    if a > 20:
        raise InstanceTooLarge("exhaustive rectangle scan is limited to 20 rows")
    batch = rows.shape[:-1]
    union = np.zeros(batch + (1,), dtype=np.int64)
    size = np.zeros(1, dtype=np.int64)
    for b in range(a):
        union = np.concatenate([union, union | rows[..., b : b + 1]], axis=-1)
        size = np.concatenate([size, size + 1])
    free = width - np.bitwise_count(union.astype(np.uint64)).astype(np.int64)
    return (free * size).max(axis=-1)
