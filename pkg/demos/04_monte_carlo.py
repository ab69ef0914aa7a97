"""
Exact expectations against seeded Monte Carlo
=============================================

Each quantity below has an exact rational expectation. The sample mean
over seeded trials should land within three standard errors of it.
"""

from girthforge.probability import (
    bad_pair_expectation_k3,
    expected_edges,
    expected_monotone_paths,
    layered_estimate,
    lemma1_estimate,
    short_cycle_expectation,
)

print("E[edges], k=4 m=16:", expected_edges(4, 16))
print("E[increasing paths layer 1 -> 4]:", expected_monotone_paths(1, 4, 16))
print("E[triangles], k=4:", short_cycle_expectation(4, 16, 4).exact_triangles)
print("E[bad pairs], k=3 m=16:", bad_pair_expectation_k3(16), "~", float(bad_pair_expectation_k3(16)))

for stat, k in (("edges", 4), ("paths", 4), ("triangles", 4), ("badpairs", 3)):
    rep = layered_estimate(stat, k, 16, trials=2000, master_seed=1)
    print(f"{stat:9s} mean {rep.mean:8.3f} +- {rep.stderr:.3f}  exact {rep.analytic['exact']:8.3f}  {rep.verdict}")

# a large empty rectangle in a random bipartite graph is rare
rep = lemma1_estimate(m=8, d=4, trials=20_000, master_seed=1)
print("empty-rectangle event:", rep.hits, "hits in", rep.trials, "trials; bound 2^-8 =", rep.analytic["bound"])
