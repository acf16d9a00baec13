"""Consensus values that escape the initial-state hull.

With only positive weights the left null vector p of the Laplacian is
positive, so the consensus value p.x / sum(p) is a convex combination
of the initial states. A negative weight can keep the network feasible
(one zero eigenvalue, the rest in the open right half plane) while
pushing an entry of p negative, and then the agreed value may land
outside [min x0, max x0]. This demo shows both regimes on the same
5-node path and confirms the prediction against a time-domain run.

Run: python3 demos/02_consensus_outside_hull.py
"""

from __future__ import annotations

import numpy as np

from pugraph import (
    consensus_feasible,
    consensus_value,
    laplacian,
    left_null_vector_direct,
    path_graph,
    predicted_vs_simulated,
)

x0 = np.array([47.83, 33.84, 22.88, 41.77, 40.97])

for label, reverse in (
    ("all-positive", [0.1, 1.04, 0.15, 2.0]),
    ("one negative", [0.1, 1.04, -1.1, 2.0]),
):
    g = path_graph(5, forward=[2.0, 1.0, 1.3, 3.2], reverse=reverse)
    L = laplacian(g)
    rep = consensus_feasible(L)
    p = left_null_vector_direct(L)
    cv = consensus_value(p, x0)
    print(f"--- {label} weights ---")
    print("feasible:", rep.feasible)
    print("p:", np.round(p.p, 6))
    print(f"consensus value: {cv.value:.6f}  "
          f"(hull [{x0.min():.2f}, {x0.max():.2f}], in hull: {cv.in_hull})")

    # Cross-check: integrate xdot = -L x and compare the settled value.
    pr = predicted_vs_simulated(g, x0)
    print(f"simulated settle: {pr.verdict.value:.6f} "
          f"at t={pr.verdict.time:.2f} (rel gap {pr.rel_gap:.2e})")
    print()
