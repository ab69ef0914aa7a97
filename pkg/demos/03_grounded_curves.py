"""
Grounded curves for a height-2 poset
====================================

Every poset without a three-element chain is realized by grounded curves:
two curves are disjoint exactly when one covers the other. The output is
an SVG next to this script.
"""

from pathlib import Path

from girthforge.curves import disjointness_graph, four_curve_path_family, realize_height2
from girthforge.poset import Poset, check_height2
from girthforge.svg import export_svg

# a small example: minimals 1, 2, 3 and maximals 4, 5
p = Poset.from_relation(5, [(1, 4), (2, 4), (2, 5), (3, 5)])
print("minimals, maximals:", check_height2(p))

family = realize_height2(p)  # verified on construction
for c in family.curves:
    print(f"curve {c.id}: {len(c.points)} points, grounded at y={c.points[0][1]}")
print("disjoint pairs:", disjointness_graph(family).sorted_edges())

out = Path(__file__).with_name("height2.svg")
export_svg(family, out)
print("wrote", out)

# a hand-drawn family whose disjointness graph is a path
path = four_curve_path_family()
print("four curves, disjoint pairs:", disjointness_graph(path).sorted_edges())
export_svg(path, Path(__file__).with_name("path4.svg"))
