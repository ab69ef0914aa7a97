"""Shared generators for tests."""

from hypothesis import strategies as st

from girthforge.graph import Graph
from girthforge.poset import Poset


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


def random_forest_covers(n, rng):
    """Cover edges of a random forest poset whose labels follow a random linear extension.

    Every element except roots gets exactly one parent among later labels, so
    each down-set is a tree.
    """
    covers = []
    for x in range(1, n):
        if rng.random() < 0.9:
            covers.append((x, rng.randint(x + 1, n)))
    return covers


def random_tree_like_covers(n, rng):
    """Unique generation with branching below: every element covers a set of elements whose down-sets are disjoint."""
    covers = []
    roots = []
    for v in range(1, n + 1):
        # pick children among current roots; their down-sets are disjoint by construction
        k = min(len(roots), rng.choice((0, 1, 1, 2, 3)))
        kids = rng.sample(roots, k)
        for c in kids:
            covers.append((c, v))
            roots.remove(c)
        roots.append(v)
    return covers


def random_height2(rnd, max_side=12):
    """Random height-2 poset: each minimal-maximal pair is a cover with probability 1/2.

    A drawn maximal with no covers is isolated and therefore minimal; such
    draws are resampled whenever they push the minimal count past ``max_side``.
    """
    while True:
        s = rnd.randint(1, max_side)
        q = rnd.randint(0, max_side)
        labels = list(range(1, s + q + 1))
        rnd.shuffle(labels)
        mins, maxs = labels[:s], labels[s:]
        covers = [(a, b) for b in maxs for a in mins if rnd.random() < 0.5]
        if s + sum(1 for b in maxs if not any(y == b for _, y in covers)) <= max_side:
            return Poset.from_relation(s + q, covers)
