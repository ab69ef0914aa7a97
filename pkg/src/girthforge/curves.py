"""Grounded polylines on the integer grid, their intersections and disjointness graphs.

A curve is grounded when its first point lies on the y-axis and every other
point has positive x. Two curves intersect when they share any point:
crossings, touchings and collinear overlaps all count. All predicates use
exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

import numpy as np

from .errors import RealizationError
from .graph import Graph
from .poset import CoverDag, Poset, check_height2, covers_from_order

COORD_LIMIT = 1 << 30  # keeps orientation products inside int64


class Curve(NamedTuple):
    id: int
    points: tuple

    def segments(self):
        return zip(self.points, self.points[1:])


@dataclass(frozen=True)
class CurveFamily:
    curves: tuple

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(Curve(c[0], tuple(map(tuple, c[1]))) for c in self.curves))

    @property
    def ids(self) -> list:
        return [c.id for c in self.curves]

    def curve(self, cid: int) -> Curve:
        return next(c for c in self.curves if c.id == cid)

    def validate(self) -> None:
        ids = self.ids
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate curve ids")
        grounds = set()
        for c in self.curves:
            if not c.points:
                raise ValueError(f"curve {c.id} is empty")
            for x, y in c.points:
                if not (isinstance(x, int) and isinstance(y, int)):
                    raise ValueError(f"curve {c.id} has a non-integer point {(x, y)}")
                if abs(x) >= COORD_LIMIT or abs(y) >= COORD_LIMIT:
                    raise ValueError(f"curve {c.id} has a coordinate beyond {COORD_LIMIT}")
            if c.points[0][0] != 0:
                raise ValueError(f"curve {c.id} does not start on the y-axis")
            if any(x <= 0 for x, _ in c.points[1:]):
                raise ValueError(f"curve {c.id} leaves the open right half-plane after its ground point")
            for a, b in c.segments():
                if a == b:
                    raise ValueError(f"curve {c.id} has a zero-length segment at {a}")
            y0 = c.points[0][1]
            if y0 in grounds:
                raise ValueError(f"two curves are grounded at height {y0}")
            grounds.add(y0)

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True


def orientation(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _in_box(p, q, r) -> bool:
    """``q`` lies in the bounding box of ``p`` and ``r``."""
    return min(p[0], r[0]) <= q[0] <= max(p[0], r[0]) and min(p[1], r[1]) <= q[1] <= max(p[1], r[1])


def segments_intersect(p1, p2, q1, q2) -> bool:
    o1 = orientation(p1, p2, q1)
    o2 = orientation(p1, p2, q2)
    o3 = orientation(q1, q2, p1)
    o4 = orientation(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _in_box(p1, q1, p2))
        or (o2 == 0 and _in_box(p1, q2, p2))
        or (o3 == 0 and _in_box(q1, p1, q2))
        or (o4 == 0 and _in_box(q1, p2, q2))
    )


def _segment_table(f: CurveFamily):
    owner, a, b = [], [], []
    for idx, c in enumerate(f.curves):
        for p, q in c.segments():
            owner.append(idx)
            a.append(p)
            b.append(q)
    # a one-point curve is a degenerate segment
    for idx, c in enumerate(f.curves):
        if len(c.points) == 1:
            owner.append(idx)
            a.append(c.points[0])
            b.append(c.points[0])
    return np.array(owner, dtype=np.int64), np.array(a, dtype=np.int64).reshape(-1, 2), np.array(b, dtype=np.int64).reshape(-1, 2)


def _orient(a, b, c):
    d = (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (b[..., 1] - a[..., 1]) * (c[..., 0] - a[..., 0])
    return np.sign(d)


def _between(p, q, r):
    lo = np.minimum(p, r)
    hi = np.maximum(p, r)
    return np.all((lo <= q) & (q <= hi), axis=-1)


def _candidate_pairs(f: CurveFamily):
    """Segment pairs from different curves whose bounding boxes meet."""
    owner, a, b = _segment_table(f)
    if len(owner) == 0:
        return owner, a, b, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    if np.abs(a).max(initial=0) >= COORD_LIMIT or np.abs(b).max(initial=0) >= COORD_LIMIT:
        raise ValueError("coordinates too large for exact int64 predicates")
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    box = np.all((lo[:, None, :] <= hi[None, :, :]) & (lo[None, :, :] <= hi[:, None, :]), axis=-1)
    box &= owner[:, None] < owner[None, :]
    i, j = np.nonzero(box)
    return owner, a, b, i, j


def pairwise_intersections(f: CurveFamily) -> set:
    """Unordered id pairs ``(a, b)``, ``a < b``, of curves sharing at least one point."""
    owner, a, b, i, j = _candidate_pairs(f)
    if len(i) == 0:
        return set()
    P1, P2, Q1, Q2 = a[i], b[i], a[j], b[j]
    o1 = _orient(P1, P2, Q1)
    o2 = _orient(P1, P2, Q2)
    o3 = _orient(Q1, Q2, P1)
    o4 = _orient(Q1, Q2, P2)
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    hit |= (o1 == 0) & _between(P1, Q1, P2)
    hit |= (o2 == 0) & _between(P1, Q2, P2)
    hit |= (o3 == 0) & _between(Q1, P1, Q2)
    hit |= (o4 == 0) & _between(Q1, P2, Q2)
    ids = f.ids
    out = set()
    for si, sj in zip(owner[i[hit]].tolist(), owner[j[hit]].tolist()):
        x, y = ids[si], ids[sj]
        out.add((x, y) if x < y else (y, x))
    return out


def disjointness_graph(f: CurveFamily) -> Graph:
    """Graph on curve ids (which must be ``1..n``) joining the disjoint pairs."""
    n = len(f.curves)
    if sorted(f.ids) != list(range(1, n + 1)):
        raise ValueError("curve ids must be exactly 1..n")
    hits = pairwise_intersections(f)
    return Graph(n, frozenset(p for p in combinations(range(1, n + 1), 2) if p not in hits))


class RealizationCheck(NamedTuple):
    ok: bool
    missing: tuple  # cover pairs whose curves intersect
    extra: tuple  # disjoint pairs that are not cover pairs


def verify_realization(f: CurveFamily, cd: CoverDag) -> RealizationCheck:
    """The disjointness graph of ``f`` must equal the undirected cover graph of ``cd``."""
    if sorted(f.ids) != list(range(1, cd.n + 1)):
        raise ValueError("curve ids must match the poset elements 1..n")
    want = {(min(x, y), max(x, y)) for x, y in cd.cover_edges}
    got = set(disjointness_graph(f).edges)
    return RealizationCheck(want == got, tuple(sorted(want - got)), tuple(sorted(got - want)))


def collinear_overlaps(f: CurveFamily) -> list:
    """Pairs of curves with two segments overlapping along a stretch of positive length."""
    owner, a, b, i, j = _candidate_pairs(f)
    if len(i) == 0:
        return []
    P1, P2, Q1, Q2 = a[i], b[i], a[j], b[j]
    collinear = (_orient(P1, P2, Q1) == 0) & (_orient(P1, P2, Q2) == 0)
    axis = (P1[:, 0] == P2[:, 0]).astype(np.int64)  # project vertical segments onto y
    rows = np.arange(len(i))
    p_lo = np.minimum(P1[rows, axis], P2[rows, axis])
    p_hi = np.maximum(P1[rows, axis], P2[rows, axis])
    q_lo = np.minimum(Q1[rows, axis], Q2[rows, axis])
    q_hi = np.maximum(Q1[rows, axis], Q2[rows, axis])
    overlap = collinear & (np.maximum(p_lo, q_lo) < np.minimum(p_hi, q_hi))
    ids = f.ids
    return sorted({(ids[x], ids[y]) for x, y in zip(owner[i[overlap]].tolist(), owner[j[overlap]].tolist())})


def realize_height2(p: Poset, check: bool = True) -> CurveFamily:
    """Grounded curves whose disjointness graph is the cover graph of a height-2 poset.

    Minimal number ``i`` (of ``s``) is a hook: right along ``y = 10iu``, down
    a vertical at ``x = (10s+i)u`` to ``y = -10iu``, right to ``x = (20s+10)u``.
    Any two hooks cross. Maximal number ``t`` (of ``q``) runs right along a
    top rail above every hook, down a lane right of every hook, left along a
    deep rail below every hook, and up a corridor at ``0 < x < 10u``. From the
    corridor it pokes right, just past the vertical of each minimal it does
    not cover, in a thin loop at a height only that vertical reaches. Top
    rails of later maximals cut the lanes of earlier ones. The unit
    ``u = 2(q+2)`` leaves room for per-maximal offsets, so distinct curves
    never overlap collinearly.
    """
    minimals, maximals = check_height2(p)
    s, q = len(minimals), len(maximals)
    u = 2 * (q + 2)
    right = 20 * s + 10
    curves = []
    hook_index = {v: i for i, v in enumerate(minimals, start=1)}
    for v, i in hook_index.items():
        vx = (10 * s + i) * u
        curves.append(Curve(v, ((0, 10 * i * u), (vx, 10 * i * u), (vx, -10 * i * u), (right * u, -10 * i * u))))
    below = p.below
    for t, v in enumerate(maximals, start=1):
        top = (10 * s + 10 * (q - t + 1)) * u
        lane = (right + 10 * t) * u
        deep = -(10 * s + 10 * t) * u
        corridor = 2 * (q - t + 1)
        pts = [(0, top), (lane, top), (lane, deep), (corridor, deep)]
        for w in reversed(minimals):
            if below[v] >> w & 1:
                continue
            i = hook_index[w]
            y = -10 * i * u + 2 * t
            tip = (10 * s + i) * u + t
            pts += [(corridor, y), (tip, y), (tip, y + 1), (corridor, y + 1)]
        curves.append(Curve(v, tuple(pts)))
    family = CurveFamily(tuple(sorted(curves)))
    if check:
        family.validate()
        overlaps = collinear_overlaps(family)
        if overlaps:
            raise RealizationError(f"collinear overlap between curves {overlaps[0]}")
        result = verify_realization(family, covers_from_order(p))
        if not result.ok:
            raise RealizationError(f"realization mismatch: missing={result.missing} extra={result.extra}")
    return family


def four_curve_path_family() -> CurveFamily:
    """Four grounded curves whose disjointness graph is the path 1-2-3-4.

    Curves 3 and 4 hook back to the left so that each one meets every curve
    except its neighbors in the path.
    """
    return CurveFamily(
        (
            Curve(1, ((0, 10), (10, 15), (20, 5))),
            Curve(2, ((0, 25), (10, 20), (15, 20))),
            Curve(3, ((0, 35), (15, 30), (30, 10), (20, -5), (10, 5), (20, 15))),
            Curve(4, ((0, 45), (40, 20), (40, -10), (10, -5), (5, 10), (10, 25))),
        )
    )
