"""Single-edge gain margins from edge-agreement transfer functions.

Scaling one directed edge weight by a factor kappa keeps consensus
feasible until kappa crosses a finite margin. The margin is read off
a rational transfer function M(s) built from the incidence
factorization: the closed loop det(sI - A - Delta B C) loses
feasibility where 1 + Delta M(s) = 0, so the gain margin is
min 1/|M(j omega)| over the phase crossovers. This demo computes the
margin for an edge of the unit-weight 4-node path, cross-checks it
against a brute-force critical perturbation search on the Laplacian,
and shows the closed-form law for leading edges.

Run: python3 demos/03_gain_margins.py
"""

from __future__ import annotations

import numpy as np

from pugraph import (
    closed_form_leading_margin,
    critical_perturbation_oracle,
    edge_transfer_function,
    gain_margin,
    path_graph,
)

g = path_graph(4, forward=[1.0, 1.0, 1.0], reverse=[1.0, 1.0, 1.0])

# Perturbing edge 3->4 of P4 excites a crossover away from the origin,
# so the effective margin is set off-axis rather than at omega = 0.
tf = edge_transfer_function(g, (3, 4))
print("M(s) = -num/den for edge 3->4 of unit P4:")
print("  num:", np.round(tf.num, 6))
print("  den:", np.round(tf.den, 6))

report = gain_margin(tf)
for c in report.crossovers:
    print(f"  crossover omega={c.omega_pc:.6f}  |M| = {c.magnitude:.6f}"
          f"  -> margin {1.0 / c.magnitude:.6f}")
print(f"effective margin: {report.effective_margin:.10f}")

# Independent check: bisect the most negative additive Delta for which
# the rank-one perturbed Laplacian still has one zero eigenvalue and
# the rest in the open right half plane. |Delta*| equals the margin.
delta = critical_perturbation_oracle(g, (3, 4))
print(f"bisection oracle: |Delta*| = {abs(delta):.10f}")

# Leading edges of a unit path obey a closed form: margin n/(n - l).
print()
print("leading-edge margins, transfer function vs n/(n-1):")
for n in (3, 5, 9, 15, 21):
    gp = path_graph(n, forward=[1.0] * (n - 1), reverse=[1.0] * (n - 1))
    m = gain_margin(edge_transfer_function(gp, (1, 2))).effective_margin
    print(f"  n={n:2d}  {m:.10f}  vs  {closed_form_leading_margin(n, 1):.10f}")
