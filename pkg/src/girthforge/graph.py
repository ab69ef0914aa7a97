"""Undirected simple graphs on vertices 1..n, girth and short-cycle enumeration."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import CycleCapExceeded

DEFAULT_CYCLE_CAP = 20_000


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices labeled ``1..n``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``. Use
    :meth:`from_edges` to build one from arbitrary pairs.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative vertex count {self.n}")
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (u < v):
                raise ValueError(f"edge {e} is not normalized (u < v)")
            if not (1 <= u and v <= self.n):
                raise ValueError(f"edge {e} has an endpoint outside 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> Graph:
        normalized = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            e = _edge(int(u), int(v))
            if e in normalized:
                raise ValueError(f"duplicate edge {e}")
            normalized.add(e)
        return cls(n, frozenset(normalized))

    @classmethod
    def cycle(cls, length: int) -> Graph:
        return cls.from_edges(length, [(i, i % length + 1) for i in range(1, length + 1)])

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls.from_edges(n, [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)])

    @classmethod
    def petersen(cls) -> Graph:
        outer = [(i, i % 5 + 1) for i in range(1, 6)]
        spokes = [(i, i + 5) for i in range(1, 6)]
        inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def adj(self) -> tuple:
        """Neighbor sets indexed by vertex; index 0 is an unused empty set."""
        nbrs = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def masks(self) -> tuple:
        """Neighbor bitmasks: bit ``v`` of ``masks[u]`` is set iff ``uv`` is an edge."""
        out = [0] * (self.n + 1)
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list]:
        """Induced subgraph on ``keep``, relabeled ``1..len(keep)`` in increasing order.

        Returns the subgraph and the list mapping new label ``i`` to
        ``old[i - 1]``.
        """
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old, start=1)}
        edges = [(new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of]
        return Graph(len(old), frozenset(edges)), old


class Girth(NamedTuple):
    value: float  # int, or math.inf for forests
    cycle: tuple | None

    @property
    def finite(self) -> bool:
        return self.value != math.inf

    def at_least(self, r: int) -> bool:
        return self.value >= r


def _tree_path(parent: dict, v: int) -> list:
    path = [v]
    while parent[v] is not None:
        v = parent[v]
        path.append(v)
    return path


def girth(g: Graph) -> Girth:
    """Length of a shortest cycle with a witness; ``math.inf`` for forests.

    Runs a BFS from every vertex; a non-tree edge ``uw`` closes a walk of
    length ``d(u) + d(w) + 1`` which contains a cycle no longer than that.
    """
    best = math.inf
    best_cycle = None
    for root in g.vertices:
        if best == 3:
            break
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if length < best:
                        cyc = _cycle_from_tree(parent, u, w)
                        best = len(cyc)
                        best_cycle = cyc
    return Girth(best, best_cycle)


def _cycle_from_tree(parent: dict, u: int, w: int) -> tuple:
    pu = _tree_path(parent, u)  # u ... root
    pw = _tree_path(parent, w)  # w ... root
    on_w = {x: i for i, x in enumerate(pw)}
    i = next(i for i, x in enumerate(pu) if x in on_w)
    j = on_w[pu[i]]
    # u -> ... -> lca, then lca -> ... -> w (excluding lca twice)
    return tuple(pu[: i + 1] + pw[:j][::-1])


class ShortCycles(NamedTuple):
    count: int
    witnesses: list
    capped: bool


def _canonical_cycle(cycle) -> tuple:
    """Rotate/reflect so the smallest vertex is first and its smaller neighbor second."""
    c = list(cycle)
    i = c.index(min(c))
    c = c[i:] + c[:i]
    if len(c) > 2 and c[-1] < c[1]:
        c = [c[0]] + c[1:][::-1]
    return tuple(c)


def shortest_cycle_through(g: Graph, v: int, limit: float = math.inf) -> tuple | None:
    """Shortest cycle containing ``v`` (length < ``limit``), or None.

    BFS from ``v`` labels each vertex with the child of ``v`` it hangs
    under; an edge between two different branches closes a cycle through
    ``v``, and the shortest such closure is a shortest cycle through ``v``.
    """
    dist = {v: 0}
    parent = {v: None}
    branch = {v: None}
    queue = deque([v])
    best = None
    best_len = limit
    while queue:
        u = queue.popleft()
        if 2 * dist[u] + 1 >= best_len:
            break
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                branch[w] = w if u == v else branch[u]
                queue.append(w)
            elif w != parent[u] and u != v and w != v and branch[w] != branch[u]:
                length = dist[u] + dist[w] + 1
                if length < best_len:
                    best_len = length
                    best = tuple(_tree_path(parent, u)[::-1] + _tree_path(parent, w)[:-1])
    return _canonical_cycle(best) if best is not None else None


def iter_short_cycles(g: Graph, max_len: int):
    """Yield every cycle of length 3..max_len exactly once, in canonical form.

    Each cycle is found from its smallest vertex ``s`` by a DFS through
    vertices larger than ``s``; the reflection is discarded by requiring the
    second vertex to be smaller than the last.
    """
    adj = g.adj
    for s in g.vertices:
        if sum(1 for w in adj[s] if w > s) < 2:
            continue
        path = [s]
        on_path = {s}

        def extend(u):
            depth = len(path)
            for w in sorted(adj[u]):
                if w <= s or w in on_path:
                    continue
                if depth + 1 <= max_len and s in adj[w] and depth + 1 >= 3 and path[1] < w:
                    yield tuple(path) + (w,)
                if depth + 1 < max_len:
                    path.append(w)
                    on_path.add(w)
                    yield from extend(w)
                    path.pop()
                    on_path.discard(w)

        yield from extend(s)


def count_short_cycles(g: Graph, r: int, cap: int = DEFAULT_CYCLE_CAP, strict: bool = False) -> ShortCycles:
    """Count cycles of length at most ``r - 1``.

    Cycles are counted once per rotation/reflection class. If more than
    ``cap`` cycles exist, enumeration stops: ``capped`` is set, ``count`` is
    the lower bound ``cap + 1``, and ``witnesses`` falls back to one shortest
    cycle through each vertex lying on a short cycle. With ``strict=True``
    passing the cap raises :class:`CycleCapExceeded` instead.
    """
    if r < 4:
        raise ValueError("r must be at least 4")
    found = []
    for cyc in iter_short_cycles(g, r - 1):
        found.append(cyc)
        if len(found) > cap:
            if strict:
                raise CycleCapExceeded(cap, len(found))
            seen = set()
            witnesses = []
            for v in g.vertices:
                c = shortest_cycle_through(g, v, limit=r)
                if c is not None and c not in seen:
                    seen.add(c)
                    witnesses.append(c)
            return ShortCycles(len(found), witnesses, True)
    return ShortCycles(len(found), found, False)
