"""Cooperative salvo: consensus on time-to-go synchronizes impacts.

Five interceptors chase one constant-velocity target. Each broadcasts
its time-to-go over a pseudo-undirected communication path and biases
its lateral acceleration with the consensus coupling term, so the
group trades speed advantage for simultaneity. The bundled scenario
pair differs in one communication weight: all-positive weights agree
inside the initial time-to-go hull, while one negative weight drags
the agreed impact time far outside it (later than every initial
estimate).

Runs the two bundled scenarios (about 20 s total).

Run: python3 demos/04_simultaneous_interception.py
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from pugraph import simulate_salvo
from pugraph.io import salvo_config_from_dict
import json

for name in ("salvo-positive", "salvo-negative"):
    raw = resources.files("pugraph").joinpath(
        "data", "scenarios", f"{name}.json").read_text()
    cfg = salvo_config_from_dict(json.loads(raw))
    res = simulate_salvo(cfg)

    print(f"--- {name} ---")
    print("initial t_go:     ", np.round(res.initial_t_go, 2))
    print(f"predicted impact:  {res.consensus_prediction:.4f}"
          f"  (in initial hull: {res.in_hull})")
    print("impact times:     ", np.round(res.impact_times, 4))
    print(f"spread:            {res.spread:.3e}")
    print("saturation:       ", np.round(res.saturation_fraction, 3))
    print("kinematic capture:", np.round(res.kinematic_capture_times, 2))
    print()
