"""Graph construction, Laplacians, and the incidence factorization."""
from __future__ import annotations

import numpy as np
import pytest

from conftest import random_connected_graph
from pugraph import (
    DisconnectedGraph,
    GraphDefinitionError,
    incidence_set,
    laplacian,
    l_star,
    path_graph,
    pseudo_graph,
    validate,
    weighted_adjacency,
    weighted_out_degree,
    weights,
)


def test_path_graph_laplacian_matches_hand_computation():
    g = path_graph(3, forward=[1.0, 3.0], reverse=[2.0, 4.0])
    want = np.array([[1.0, -1.0, 0.0],
                     [-2.0, 5.0, -3.0],
                     [0.0, -4.0, 4.0]])
    assert np.array_equal(laplacian(g).matrix, want)
    assert np.array_equal(weighted_out_degree(g), [1.0, 5.0, 4.0])


def test_edge_order_is_forward_block_then_reverse_block():
    g = pseudo_graph(4, [(1, 2, 1.0, 2.0), (3, 4, 3.0, 4.0), (2, 3, 5.0, 6.0)])
    assert g.edge_order == ((1, 2), (3, 4), (2, 3), (2, 1), (4, 3), (3, 2))
    assert np.array_equal(weights(g), [1.0, 3.0, 5.0, 2.0, 4.0, 6.0])


def test_laplacian_equals_incidence_product():
    rng = np.random.default_rng(7)
    for _ in range(50):
        g = random_connected_graph(rng)
        inc = incidence_set(g)
        W = np.diag(weights(g))
        assert np.allclose(laplacian(g).matrix, inc.E_out @ W @ inc.E.T,
                           atol=1e-12)


def test_incidence_factorization_is_exact():
    rng = np.random.default_rng(8)
    for _ in range(50):
        g = random_connected_graph(rng)
        inc = incidence_set(g)
        assert np.array_equal(inc.E, inc.E_tau @ inc.R)
        assert np.all(np.isin(inc.R, (-1.0, 0.0, 1.0)))
        # reverse-block columns mirror the forward block with a sign flip
        m = g.m
        assert np.array_equal(inc.R[:, m:], -inc.R[:, :m])


def test_spanning_tree_follows_declaration_order():
    # pairs declared (1,2), (2,3), (1,3): the first two close no cycle
    # and form the tree, so the chord 1->3 maps to the tree path
    # through both of them with positive signs.
    g = pseudo_graph(3, [(1, 2, 1.0, 1.0), (2, 3, 1.0, 1.0), (1, 3, 1.0, 1.0)])
    inc = incidence_set(g)
    assert inc.E_tau.shape == (3, 2)
    assert np.array_equal(inc.E_tau[:, 0], [1.0, -1.0, 0.0])
    assert np.array_equal(inc.E_tau[:, 1], [0.0, 1.0, -1.0])
    assert np.array_equal(inc.R[:, 2], [1.0, 1.0])


def test_adjacency_orientation():
    g = pseudo_graph(2, [(1, 2, 3.0, 5.0)])
    A = weighted_adjacency(g)
    assert A[0, 1] == 3.0 and A[1, 0] == 5.0


def test_rejects_bad_definitions():
    with pytest.raises(GraphDefinitionError):
        pseudo_graph(3, [(1, 1, 1.0, 1.0)])  # self loop
    with pytest.raises(GraphDefinitionError):
        pseudo_graph(3, [(1, 2, 1.0, 1.0), (2, 1, 1.0, 1.0)])  # duplicate pair
    with pytest.raises(GraphDefinitionError):
        pseudo_graph(2, [(1, 3, 1.0, 1.0)])  # index out of range
    with pytest.raises(GraphDefinitionError):
        path_graph(3, [1.0], [1.0, 1.0])  # wrong weight count


def test_disconnected_graph_is_reported_and_rejected():
    g = pseudo_graph(4, [(1, 2, 1.0, 1.0), (3, 4, 1.0, 1.0)])
    assert not validate(g).connected
    with pytest.raises(DisconnectedGraph):
        incidence_set(g)


def test_validate_counts_negative_weights_and_degrees():
    g = pseudo_graph(3, [(1, 2, 2.0, -0.5), (2, 3, 1.0, 1.0)])
    d = validate(g)
    assert d.connected
    assert d.negative_weights == 1
    assert d.out_degree == {1: 2.0, 2: 0.5, 3: 1.0}
    assert d.in_degree == {1: -0.5, 2: 3.0, 3: 1.0}


def test_laplacian_object_converts_to_array():
    g = path_graph(2, [1.0], [1.0])
    L = laplacian(g)
    assert np.array_equal(np.asarray(L), L.matrix)


def test_l_star_shifts_every_diagonal_positive():
    g = path_graph(4, [1.0, 2.0, 3.0], [0.5, 0.5, 0.5])
    M = l_star(g, eps=0.25)
    A = weighted_adjacency(g)
    d = A.sum(axis=1)
    assert np.allclose(M, A - np.diag(d) + (2 * d.max() + 0.25) * np.eye(4))
    assert np.all(np.diag(M) > 0)
