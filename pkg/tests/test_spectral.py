"""Left null vectors, feasibility, and eventual-positivity certificates."""
from __future__ import annotations

import numpy as np
import pytest

from conftest import random_positive_path
from pugraph import (
    InvalidParameter,
    NegativeWeightUnsupported,
    RankDeficiencyNotOne,
    ZeroSuperdiagonal,
    ZeroWeightSum,
    consensus_feasible,
    consensus_value,
    is_eventually_positive,
    l_star,
    laplacian,
    left_null_vector_direct,
    left_null_vector_path,
    left_null_vector_projection,
    null_range_bases,
    path_graph,
)

WEIGHTED_P3 = path_graph(3, forward=[1.0, 3.0], reverse=[2.0, 4.0])


def test_weighted_path_null_vector_by_hand():
    # backward recursion: p3 = 1, p2 = 4/3, p1 = (4/3)(2/1) = 8/3
    want = np.array([8.0 / 3.0, 4.0 / 3.0, 1.0])
    for p in (left_null_vector_path(laplacian(WEIGHTED_P3)),
              left_null_vector_direct(laplacian(WEIGHTED_P3)),
              left_null_vector_projection(WEIGHTED_P3)):
        assert np.allclose(p.p, want, atol=1e-12)
        assert p.p[-1] == 1.0
        assert p.sign_pattern == (1, 1, 1)
        assert p.residual <= 1e-9


def test_consensus_value_and_hull_membership():
    p = left_null_vector_direct(laplacian(WEIGHTED_P3))
    cv = consensus_value(p, [0.0, 0.0, 3.0])
    assert abs(cv.value - 0.6) < 1e-12
    assert cv.in_hull
    assert float(cv) == cv.value


def test_negative_weight_moves_value_outside_hull():
    g = path_graph(5, forward=[2.0, 1.0, 1.3, 3.2],
                   reverse=[0.1, 1.04, -1.1, 2.0])
    L = laplacian(g)
    assert consensus_feasible(L).feasible
    p = left_null_vector_direct(L)
    assert p.sign_pattern == (-1, -1, -1, 1, 1)
    x0 = [47.83, 33.84, 22.88, 41.77, 40.97]
    cv = consensus_value(p, x0)
    assert cv.value > max(x0)
    assert not cv.in_hull
    # path recursion admits the negative weights as well
    assert np.allclose(left_null_vector_path(L).p, p.p, atol=1e-9)


def test_projection_rejects_negative_weights():
    g = path_graph(3, [1.0, 1.0], [1.0, -0.5])
    with pytest.raises(NegativeWeightUnsupported):
        left_null_vector_projection(g)


def test_path_recursion_input_guards():
    with pytest.raises(InvalidParameter):
        left_null_vector_path(np.ones((3, 3)))  # not tridiagonal
    M = np.array([[1.0, 0.0, 0.0],
                  [-2.0, 5.0, -3.0],
                  [0.0, -4.0, 4.0]])
    with pytest.raises(ZeroSuperdiagonal):
        left_null_vector_path(M)


def test_direct_solve_requires_rank_deficiency_one():
    # two disconnected agreement clusters: null space of L^T is 2-D
    L = np.zeros((4, 4))
    L[:2, :2] = [[1.0, -1.0], [-1.0, 1.0]]
    L[2:, 2:] = [[2.0, -2.0], [-2.0, 2.0]]
    with pytest.raises(RankDeficiencyNotOne):
        left_null_vector_direct(L)


def test_zero_weight_sum_is_rejected():
    with pytest.raises(ZeroWeightSum):
        consensus_value(np.array([1.0, -1.0]), [3.0, 4.0])


def test_feasibility_spectrum_is_sorted_and_classified():
    rep = consensus_feasible(laplacian(WEIGHTED_P3))
    assert rep.feasible
    re = np.real(rep.spectrum)
    assert np.all(np.diff(re) >= -1e-12)
    assert np.abs(rep.spectrum[0]) <= 1e-8 * np.linalg.norm(
        laplacian(WEIGHTED_P3).matrix, 2)

    bad = laplacian(path_graph(3, [1.0, 1.0], [1.0, -5.0]))
    assert not consensus_feasible(bad).feasible
    assert not consensus_feasible(np.zeros((2, 2))).feasible  # double zero


def test_null_vector_residual_contract_on_random_paths():
    rng = np.random.default_rng(11)
    for _ in range(100):
        g = random_positive_path(rng)
        L = laplacian(g).matrix
        p = left_null_vector_direct(L)
        bound = 1e-9 * max(1.0, np.linalg.norm(L, np.inf) * np.max(np.abs(p.p)))
        assert np.max(np.abs(L.T @ p.p)) <= bound


def test_null_range_bases_are_consistent():
    bases = null_range_bases(WEIGHTED_P3)
    assert np.allclose(bases.U.T @ bases.U, np.eye(bases.U.shape[1]), atol=1e-12)
    # the projector product fixes the intersection direction
    vals = np.linalg.eigvals(bases.P_U @ bases.P_V)
    assert np.min(np.abs(vals - 1.0)) <= 1e-8


def test_eventual_positivity_certificate_on_paths():
    for n in (3, 5, 8):
        g = path_graph(n, [1.0] * (n - 1), [1.0] * (n - 1))
        k = is_eventually_positive(l_star(g), max_power=n - 1)
        assert k is not None and k <= n - 1


def test_eventual_positivity_fails_for_reducible_matrices():
    assert is_eventually_positive(np.eye(2), max_power=6) is None
    with pytest.raises(InvalidParameter):
        is_eventually_positive(np.eye(2), max_power=0)
    with pytest.raises(InvalidParameter):
        l_star(WEIGHTED_P3, eps=0.0)
