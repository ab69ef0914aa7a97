"""Monotone paths: paths whose integer vertex labels strictly increase.

Every undirected graph on ``1..n`` is read as a DAG by orienting each edge
from its smaller to its larger endpoint. Reachability, path counting and
edge-disjointness all live on that DAG. Vertex sets are Python ints used as
bitsets (bit ``v`` set means vertex ``v`` is a member).
"""

from __future__ import annotations

from typing import Iterable

from .graph import Graph


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def up_masks(g: Graph) -> list:
    """``up[u]`` is the bitmask of neighbors of ``u`` with a larger label."""
    up = [0] * (g.n + 1)
    for u, v in g.edges:
        up[u] |= 1 << v
    return up


def reachability_masks(g: Graph) -> list:
    """``reach[x]`` is the bitmask of all ``y > x`` joined to ``x`` by a monotone path."""
    up = up_masks(g)
    reach = [0] * (g.n + 1)
    for x in range(g.n, 0, -1):
        acc = up[x]
        for y in iter_bits(up[x]):
            acc |= reach[y]
        reach[x] = acc
    return reach


def monotone_reachability(g: Graph) -> frozenset:
    """All pairs ``(x, y)``, ``x < y``, joined by a monotone path."""
    reach = reachability_masks(g)
    return frozenset((x, y) for x in g.vertices for y in iter_bits(reach[x]))


def saturating_path_counts(n: int, dag_edges: Iterable, source: int, order=None) -> dict:
    """Number of directed ``source -> y`` paths for every ``y != source``, capped at 2.

    ``dag_edges`` are directed pairs ``(u, v)``. Vertices are processed in
    ``order`` (a topological order); by default that is increasing label,
    which requires ``u < v`` for every edge.
    """
    out = [[] for _ in range(n + 1)]
    for u, v in dag_edges:
        if order is None and not u < v:
            raise ValueError(f"edge {u}->{v} does not increase; pass a topological order")
        out[u].append(v)
    if order is None:
        order = range(1, n + 1)
    counts = [0] * (n + 1)
    counts[source] = 1
    started = False
    for v in order:
        if v == source:
            started = True
        if not started:
            continue
        c = counts[v]
        if c:
            for w in out[v]:
                counts[w] = min(2, counts[w] + c)
    return {v: counts[v] for v in range(1, n + 1) if v != source}


def _multi_path_masks(up: list, n: int, x: int) -> int:
    """Bitmask of the ``y`` reached from ``x`` by at least two distinct monotone paths."""
    one = 0  # reached at least once
    two = 0  # reached at least twice
    for y in iter_bits(up[x]):
        one |= 1 << y
    for u in range(x + 1, n + 1):
        bit = 1 << u
        if not one & bit:
            continue
        targets = up[u]
        if two & bit:
            two |= targets
        else:
            two |= one & targets
        one |= targets
    return two


def edge_disjoint_path_count(g: Graph, x: int, y: int, limit: int = 2, up: list | None = None) -> int:
    """Maximum number of edge-disjoint monotone ``x -> y`` paths, capped at ``limit``.

    Unit-capacity augmenting paths on the increasing-label DAG restricted to
    labels in ``[x, y]``. Residual arcs are the unused forward edges plus the
    reversals of edges already carrying flow.
    """
    if not x < y:
        raise ValueError("need x < y")
    if up is None:
        up = up_masks(g)
    window = ((1 << (y + 1)) - 1) ^ ((1 << x) - 1)
    used_out = {}  # u -> bitmask of v with flow u->v
    used_in = {}  # v -> bitmask of u with flow u->v
    flow = 0
    ybit = 1 << y
    while flow < limit:
        parent = {x: None}
        seen = 1 << x
        frontier = [x]
        found = False
        while frontier and not found:
            nxt = []
            for u in frontier:
                fwd = up[u] & window & ~used_out.get(u, 0)
                back = used_in.get(u, 0)
                for w in iter_bits((fwd | back) & ~seen):
                    seen |= 1 << w
                    parent[w] = u
                    if w == y:
                        found = True
                        break
                    nxt.append(w)
                if found:
                    break
            frontier = nxt
        if not found or not seen & ybit:
            break
        v = y
        while parent[v] is not None:
            u = parent[v]
            if used_in.get(u, 0) >> v & 1:
                # cancel flow v->u
                used_out[v] &= ~(1 << u)
                used_in[u] &= ~(1 << v)
            else:
                used_out[u] = used_out.get(u, 0) | (1 << v)
                used_in[v] = used_in.get(v, 0) | (1 << u)
            v = u
        flow += 1
    return flow


def has_two_edge_disjoint_monotone_paths(g: Graph, x: int, y: int) -> bool:
    return edge_disjoint_path_count(g, x, y, limit=2) >= 2


def list_bad_pairs(g: Graph) -> list:
    """All pairs ``(x, y)``, ``x < y``, joined by two edge-disjoint monotone paths.

    Only pairs reached by at least two distinct monotone paths can be bad,
    so the flow test runs on those candidates alone.
    """
    up = up_masks(g)
    bad = []
    for x in g.vertices:
        for y in iter_bits(_multi_path_masks(up, g.n, x)):
            if edge_disjoint_path_count(g, x, y, 2, up) >= 2:
                bad.append((x, y))
    return bad


def first_multi_path_pair(g: Graph) -> tuple | None:
    """Some pair joined by two distinct monotone paths, or None.

    A graph has no bad pair exactly when no such pair exists: two distinct
    paths from ``x`` to ``y`` split at some vertex ``a`` and first meet again
    at ``b``, and the two ``a``-``b`` stretches are edge-disjoint.
    """
    up = up_masks(g)
    for x in g.vertices:
        two = _multi_path_masks(up, g.n, x)
        if two:
            return (x, (two & -two).bit_length() - 1)
    return None
