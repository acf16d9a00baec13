"""Shared fixtures: benchmark salvo runs and random-graph builders."""
from __future__ import annotations

import numpy as np
import pytest

from pugraph import benchmark_scenario, path_graph, pseudo_graph, simulate_salvo


@pytest.fixture(scope="session")
def salvo_positive():
    """Five-interceptor benchmark run, all-positive link weights."""
    return simulate_salvo(benchmark_scenario(negative_edge=False))


@pytest.fixture(scope="session")
def salvo_negative():
    """Same benchmark with the one admissible negative link weight."""
    return simulate_salvo(benchmark_scenario(negative_edge=True))


def random_positive_path(rng: np.random.Generator, n_min: int = 3,
                         n_max: int = 8, w_lo: float = 0.5, w_hi: float = 2.0):
    n = int(rng.integers(n_min, n_max + 1))
    return path_graph(n, rng.uniform(w_lo, w_hi, n - 1),
                      rng.uniform(w_lo, w_hi, n - 1))


def random_connected_graph(rng: np.random.Generator, n_min: int = 3,
                           n_max: int = 7, w_lo: float = 0.2, w_hi: float = 3.0):
    """Random positive-weight graph: a path backbone plus random chords."""
    n = int(rng.integers(n_min, n_max + 1))
    pairs = [(i, i + 1, float(rng.uniform(w_lo, w_hi)), float(rng.uniform(w_lo, w_hi)))
             for i in range(1, n)]
    seen = {(a, b) for a, b, _, _ in pairs}
    for _ in range(int(rng.integers(0, n))):
        a, b = sorted(int(v) for v in rng.choice(n, size=2, replace=False) + 1)
        if (a, b) in seen:
            continue
        seen.add((a, b))
        pairs.append((a, b, float(rng.uniform(w_lo, w_hi)),
                      float(rng.uniform(w_lo, w_hi))))
    return pseudo_graph(n, pairs)
