"""Finite posets, cover relations, and greedy coloring of cover graphs.

Elements are ``1..n``. Down-sets and up-sets are int bitsets (bit ``v``
marks element ``v``).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ChainOfThree, NotUniquelyGenerated
from .graph import Graph
from .monotone import iter_bits


def _topological_order(n: int, succ: list) -> tuple:
    """Kahn's algorithm with smallest-label-first tie-breaking."""
    indeg = [0] * (n + 1)
    for u in range(1, n + 1):
        for v in succ[u]:
            indeg[v] += 1
    heap = [v for v in range(1, n + 1) if indeg[v] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        u = heapq.heappop(heap)
        order.append(u)
        for v in succ[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                heapq.heappush(heap, v)
    if len(order) != n:
        raise ValueError("relation contains a directed cycle")
    return tuple(order)


@dataclass(frozen=True)
class CoverDag:
    """Hasse diagram: ``(x, y)`` in ``cover_edges`` means ``y`` covers ``x``."""

    n: int
    cover_edges: frozenset

    def __post_init__(self):
        for x, y in self.cover_edges:
            if x == y or not (1 <= x <= self.n and 1 <= y <= self.n):
                raise ValueError(f"invalid cover edge {x}->{y}")
        self.topo  # raises on cycles

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> CoverDag:
        return cls(n, frozenset((int(x), int(y)) for x, y in edges))

    @cached_property
    def covered(self) -> tuple:
        """``covered[v]`` lists the elements covered by ``v`` (the set C(v))."""
        out = [[] for _ in range(self.n + 1)]
        for x, y in self.cover_edges:
            out[y].append(x)
        return tuple(tuple(sorted(c)) for c in out)

    @cached_property
    def covering(self) -> tuple:
        out = [[] for _ in range(self.n + 1)]
        for x, y in self.cover_edges:
            out[x].append(y)
        return tuple(tuple(sorted(c)) for c in out)

    @cached_property
    def topo(self) -> tuple:
        return _topological_order(self.n, [list(s) for s in self.covering])

    @cached_property
    def down(self) -> tuple:
        """``down[v]`` is the bitset of T(v) = {u : u <= v}, ``v`` included."""
        out = [0] * (self.n + 1)
        for v in self.topo:
            acc = 1 << v
            for u in self.covered[v]:
                acc |= out[u]
            out[v] = acc
        return tuple(out)

    def cover_graph(self) -> Graph:
        return Graph.from_edges(self.n, self.cover_edges)


@dataclass(frozen=True)
class Poset:
    """Strict partial order on ``1..n`` with a chosen linear extension.

    ``above[x]`` is the bitset of all ``y`` with ``x < y``.
    """

    n: int
    above: tuple
    extension: tuple = field(default=())

    def __post_init__(self):
        if len(self.above) != self.n + 1:
            raise ValueError("above must have n + 1 entries")
        for x in range(1, self.n + 1):
            if self.above[x] >> x & 1:
                raise ValueError(f"order is not irreflexive at {x}")
            for y in iter_bits(self.above[x]):
                if self.above[y] & ~self.above[x]:
                    raise ValueError(f"order is not transitive at {x} < {y}")
        if not self.extension:
            object.__setattr__(self, "extension", linear_extension(self))
        elif not is_linear_extension(self, self.extension):
            raise ValueError("extension does not respect the order")

    @classmethod
    def from_covers(cls, n: int, covers: Iterable, extension=None) -> Poset:
        """Reachability closure of a DAG given by directed pairs ``(x, y)``, ``x < y``."""
        cd = CoverDag.from_edges(n, covers)
        above = [0] * (n + 1)
        for v in reversed(cd.topo):
            acc = 0
            for w in cd.covering[v]:
                acc |= (1 << w) | above[w]
            above[v] = acc
        return cls(n, tuple(above), tuple(extension) if extension else ())

    @classmethod
    def from_relation(cls, n: int, pairs: Iterable, extension=None) -> Poset:
        above = [0] * (n + 1)
        for x, y in pairs:
            above[x] |= 1 << y
        return cls(n, tuple(above), tuple(extension) if extension else ())

    @classmethod
    def chain(cls, n: int) -> Poset:
        return cls.from_covers(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def antichain(cls, n: int) -> Poset:
        return cls(n, (0,) * (n + 1))

    @cached_property
    def below(self) -> tuple:
        out = [0] * (self.n + 1)
        for x in range(1, self.n + 1):
            for y in iter_bits(self.above[x]):
                out[y] |= 1 << x
        return tuple(out)

    def less(self, x: int, y: int) -> bool:
        return bool(self.above[x] >> y & 1)

    def relation(self) -> list:
        return [(x, y) for x in range(1, self.n + 1) for y in iter_bits(self.above[x])]


def is_linear_extension(p: Poset, ext) -> bool:
    if sorted(ext) != list(range(1, p.n + 1)):
        return False
    pos = {v: i for i, v in enumerate(ext)}
    return all(pos[x] < pos[y] for x, y in p.relation())


def covers_from_order(p: Poset) -> CoverDag:
    """``y`` covers ``x`` iff ``x < y`` and nothing lies strictly between them."""
    below = p.below
    edges = [(x, y) for x in range(1, p.n + 1) for y in iter_bits(p.above[x]) if not p.above[x] & below[y]]
    return CoverDag(p.n, frozenset(edges))


def unique_generation_violation(cd: CoverDag) -> tuple | None:
    """A pair ``(w, v)`` joined by two different cover chains, or None.

    Two cover chains from ``w`` to ``v`` exist exactly when, for some ``v``,
    the down-sets of two elements covered by ``v`` overlap; the overlap
    then contains ``w``.
    """
    down = cd.down
    for v in cd.topo:
        acc = 0
        for u in cd.covered[v]:
            common = acc & down[u]
            if common:
                return ((common & -common).bit_length() - 1, v)
            acc |= down[u]
    return None


def is_uniquely_generated(cd: CoverDag) -> bool:
    return unique_generation_violation(cd) is None


def linear_extension(obj) -> tuple:
    """Topological order, smallest label first among the available elements."""
    if isinstance(obj, CoverDag):
        return obj.topo
    succ = [list(iter_bits(obj.above[v])) for v in range(obj.n + 1)]
    return _topological_order(obj.n, succ)


class ColoringError(AssertionError):
    pass


def greedy_color(cd: CoverDag, ext) -> dict:
    """Color ``ext`` in order; each element gets the least color unused by the elements it covers.

    Only the covered elements are consulted, so properness on the full cover
    graph is checked afterwards rather than assumed.
    """
    color = {}
    for v in ext:
        taken = {color[u] for u in cd.covered[v] if u in color}
        c = 1
        while c in taken:
            c += 1
        color[v] = c
    for x, y in cd.cover_edges:
        if color[x] == color[y]:
            raise ColoringError(f"cover edge {x}->{y} is monochromatic; is the order a linear extension?")
    return color


def color_bound(n: int) -> int:
    """floor(log2 n) + 1 for n >= 1."""
    return n.bit_length() if n >= 1 else 0


def verify_color_bound(coloring: dict, n: int) -> bool:
    return max(coloring.values(), default=0) <= color_bound(n)


class DownSet(NamedTuple):
    root: int
    members: tuple
    edges: tuple


def _induced_cover_edges(cd: CoverDag, members: int) -> list:
    return [(u, v) for v in iter_bits(members) for u in cd.covered[v] if members >> u & 1]


def down_set_tree(cd: CoverDag, v: int) -> DownSet:
    """T(v) with its induced cover edges, checked to form a tree.

    T(v) is always connected (every member reaches ``v`` by covers), so the
    check is the edge count ``|T(v)| - 1``.
    """
    members = cd.down[v]
    edges = _induced_cover_edges(cd, members)
    size = members.bit_count()
    if len(edges) != size - 1:
        sub = CoverDag(cd.n, frozenset(edges))
        witness = unique_generation_violation(sub)
        raise NotUniquelyGenerated(witness)
    if not _connected(members, edges):
        raise AssertionError(f"down-set of {v} is disconnected")
    return DownSet(v, tuple(iter_bits(members)), tuple(sorted(edges)))


def _connected(members: int, edges) -> bool:
    verts = list(iter_bits(members))
    if len(verts) <= 1:
        return True
    adj = {v: [] for v in verts}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(verts)


def down_set_matrix(cd: CoverDag) -> np.ndarray:
    """Boolean ``(n+1) x (n+1)`` matrix; row ``v`` is the indicator of T(v)."""
    width = (cd.n + 8) // 8
    raw = b"".join(d.to_bytes(width, "little") for d in cd.down)
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8).reshape(cd.n + 1, width), axis=1, bitorder="little")
    return bits[:, : cd.n + 1].astype(bool)


def verify_tree_claim(cd: CoverDag, coloring: dict) -> bool:
    """Every T(v) spans a tree of cover edges, with at least ``2^(color(v)-1)`` elements.

    T(v) is connected through covers, so it is a tree exactly when it
    carries ``|T(v)| - 1`` cover edges; every cover edge inside T(v) is
    counted once at its upper end, giving ``sum over u in T(v) of |C(u)|``.
    """
    if cd.n == 0:
        return True
    member = down_set_matrix(cd)
    sizes = member.sum(axis=1)
    below_count = np.array([len(c) for c in cd.covered], dtype=np.int64)
    edges = member.astype(np.int64) @ below_count
    colors = np.array([0] + [coloring[v] for v in range(1, cd.n + 1)], dtype=np.int64)
    v = slice(1, None)
    if np.any(edges[v] != sizes[v] - 1):
        return False
    return bool(np.all(sizes[v] >= np.left_shift(1, colors[v] - 1)))


def comparability_graph(p: Poset) -> Graph:
    g = Graph.from_edges(p.n, p.relation())
    cover = covers_from_order(p)
    assert all(g.has_edge(x, y) for x, y in cover.cover_edges), "cover graph must be a subgraph"
    return g


def check_height2(p: Poset) -> tuple:
    """Split a poset with no 3-element chain into (minimals, maximals).

    Elements with nothing below them, isolated ones included, are minimal;
    the rest are maximal.
    """
    below = p.below
    for y in range(1, p.n + 1):
        if below[y] and p.above[y]:
            x = (below[y] & -below[y]).bit_length() - 1
            z = (p.above[y] & -p.above[y]).bit_length() - 1
            raise ChainOfThree((x, y, z))
    minimals = tuple(v for v in range(1, p.n + 1) if not below[v])
    maximals = tuple(v for v in range(1, p.n + 1) if below[v])
    assert set(covers_from_order(p).cover_edges) == set(p.relation())
    return minimals, maximals
