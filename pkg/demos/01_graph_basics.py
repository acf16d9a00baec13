"""Build a pseudo-undirected graph and inspect its matrices.

A pseudo-undirected graph connects node pairs with two oppositely
directed edges whose weights may differ. This demo builds a weighted
3-node path, prints the out-degree Laplacian, and shows the spanning
tree / cycle factorization of the incidence matrix.

Run: python3 demos/01_graph_basics.py
"""

from __future__ import annotations

import numpy as np

from pugraph import incidence_set, laplacian, pseudo_graph, validate

g = pseudo_graph(3, [(1, 2, 1.0, 2.0), (2, 3, 3.0, 4.0)])

print("edge columns (tail, head), forward block then reverse:")
print(" ", g.edge_order)
print()
print("out-degree Laplacian L = D - A:")
print(laplacian(g).matrix)
print()

# The full incidence matrix factors exactly through the spanning tree:
# E = E_tau @ R, where each column of R is the signed tree path from
# that edge's tail to its head. For a path graph R is just [I | -I].
inc = incidence_set(g)
print("E_tau (spanning tree incidence):")
print(inc.E_tau)
print("R (signed tree paths, one column per directed edge):")
print(inc.R)
assert np.array_equal(inc.E, inc.E_tau @ inc.R)

d = validate(g)
print()
print("connected:", d.connected)
print("negative weights:", d.negative_weights)
print("out-degree by node:", d.out_degree)
