"""
Greedy coloring of uniquely generated posets
============================================

A poset is uniquely generated when any two comparable elements are joined
by exactly one chain of covers. Color the elements along a linear
extension, each one taking the least color not used by the elements it
covers. The number of colors never exceeds floor(log2 n) + 1.
"""

import random

from girthforge.poset import CoverDag, color_bound, down_set_tree, greedy_color, verify_tree_claim

# a chain alternates between two colors
chain = CoverDag.from_edges(6, [(i, i + 1) for i in range(1, 6)])
print("chain:", greedy_color(chain, chain.topo))


# The worst case: element v_k covers one copy of each of v_1 .. v_{k-1},
# so it sees every smaller color below it and is forced to take color k.
def forcing_poset(k):
    covers = []
    size = 0

    def build(level):
        nonlocal size
        kids = [build(j) for j in range(1, level)]
        size += 1
        root = size
        covers.extend((kid, root) for kid in kids)
        return root

    build(k)
    return CoverDag.from_edges(size, covers)


for k in range(1, 9):
    cd = forcing_poset(k)
    coloring = greedy_color(cd, cd.topo)
    print(f"k={k}: n={cd.n:4d} colors={max(coloring.values())} bound={color_bound(cd.n)}")

# n = 2^(k-1) here, so the bound is met exactly.
# The certificate behind the bound: an element of color c sits on top of a
# tree of at least 2^(c-1) elements.
cd = forcing_poset(5)
coloring = greedy_color(cd, cd.topo)
t = down_set_tree(cd, cd.topo[-1])
print("top of the 5-level poset:", len(t.members), "elements below, color", coloring[t.root])
print("tree claim holds everywhere:", verify_tree_claim(cd, coloring))

# random forests stay far below the bound
rnd = random.Random(0)
n = 1000
covers = [(x, rnd.randint(x + 1, n)) for x in range(1, n) if rnd.random() < 0.9]
forest = CoverDag.from_edges(n, covers)
print("random forest on 1000 elements:", max(greedy_color(forest, forest.topo).values()), "colors, bound", color_bound(n))
