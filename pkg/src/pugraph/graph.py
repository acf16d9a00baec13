"""Pseudo-undirected graphs and their structural matrices.

A pseudo-undirected graph joins node pairs by two oppositely directed
edges whose weights may differ and may be negative; a pair is admitted
only if both weights are nonzero (a pair with both weights zero is
simply absent; exactly one zero is rejected). All matrices share one
edge-column ordering:

    columns 1..m        a->b direction of each declared pair, in
                        declaration order,
    columns m+1..2m     b->a direction of each pair, same order.

Node indices are 1-based at the interface and 0-based internally.

The out-Laplacian is ``L = E_out @ diag(w) @ E.T`` where ``E`` is the
(+1 tail, -1 head) incidence matrix and ``E_out`` keeps only the +1
entries. Rows of L sum to zero, so the all-ones vector spans its right
null space; the left null space is generally different and is handled
by :mod:`pugraph.spectral`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DisconnectedGraph, GraphDefinitionError

__all__ = [
    "EdgePair",
    "PseudoGraph",
    "IncidenceSet",
    "Laplacian",
    "GraphDiagnostics",
    "pseudo_graph",
    "path_graph",
    "laplacian",
    "incidence_set",
    "weights",
    "weighted_adjacency",
    "weighted_out_degree",
    "validate",
    "as_matrix",
]


@dataclass(frozen=True)
class EdgePair:
    """One undirected pair carrying two directed weights."""

    a: int
    b: int
    w_ab: float
    w_ba: float


@dataclass(frozen=True)
class PseudoGraph:
    """Validated pseudo-undirected graph; single source of truth."""

    n: int
    pairs: tuple[EdgePair, ...]

    @property
    def m(self) -> int:
        """Number of pairs; the directed edge count is 2m."""
        return len(self.pairs)

    @property
    def edge_order(self) -> tuple[tuple[int, int], ...]:
        """Column index -> (tail, head), forward block then reverse."""
        fwd = tuple((p.a, p.b) for p in self.pairs)
        rev = tuple((p.b, p.a) for p in self.pairs)
        return fwd + rev


@dataclass(frozen=True)
class IncidenceSet:
    """Incidence factorization E = E_tau @ R under the shared ordering."""

    E: np.ndarray
    E_out: np.ndarray
    E_tau: np.ndarray
    R: np.ndarray
    edge_order: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class Laplacian:
    """Out-Laplacian matrix plus provenance."""

    matrix: np.ndarray
    n: int
    edge_order: tuple[tuple[int, int], ...]

    def __array__(self, dtype=None, copy=None):
        m = self.matrix
        if dtype is not None:
            m = m.astype(dtype)
        return np.array(m) if copy else np.asarray(m)


@dataclass(frozen=True)
class GraphDiagnostics:
    """Pure validation report; never raises."""

    connected: bool
    negative_weights: int
    out_degree: dict[int, float] = field(default_factory=dict)
    in_degree: dict[int, float] = field(default_factory=dict)


def as_matrix(L) -> np.ndarray:
    """Accept a Laplacian record or a plain array."""
    if isinstance(L, Laplacian):
        return L.matrix
    return np.asarray(L, dtype=float)


def pseudo_graph(n: int, pairs: Sequence[EdgePair | tuple]) -> PseudoGraph:
    """Validate and freeze a pseudo-undirected graph.

    Parameters
    ----------
    n : int
        Node count, >= 2. Nodes are 1..n.
    pairs : sequence
        ``EdgePair`` records or ``(a, b, w_ab, w_ba)`` tuples.

    Raises
    ------
    GraphDefinitionError
        On self-pairs, duplicate unordered pairs, out-of-range nodes,
        or pairs with exactly one zero weight.
    """
    if int(n) != n or n < 2:
        raise GraphDefinitionError(f"node count must be an integer >= 2, got {n}")
    n = int(n)
    norm: list[EdgePair] = []
    seen: set[frozenset[int]] = set()
    for p in pairs:
        if not isinstance(p, EdgePair):
            p = EdgePair(int(p[0]), int(p[1]), float(p[2]), float(p[3]))
        else:
            p = EdgePair(int(p.a), int(p.b), float(p.w_ab), float(p.w_ba))
        if p.a == p.b:
            raise GraphDefinitionError(f"self-pair at node {p.a}")
        if not (1 <= p.a <= n and 1 <= p.b <= n):
            raise GraphDefinitionError(f"pair ({p.a},{p.b}) outside 1..{n}")
        key = frozenset((p.a, p.b))
        if key in seen:
            raise GraphDefinitionError(f"duplicate pair {{{p.a},{p.b}}}")
        seen.add(key)
        # exact zero test: weights are configured inputs, not computed values
        if (p.w_ab == 0.0) != (p.w_ba == 0.0):
            raise GraphDefinitionError(
                f"pair ({p.a},{p.b}) has exactly one zero weight; "
                "one direction cannot vanish alone"
            )
        if p.w_ab == 0.0 and p.w_ba == 0.0:
            raise GraphDefinitionError(
                f"pair ({p.a},{p.b}) has both weights zero; omit the pair instead"
            )
        norm.append(p)
    return PseudoGraph(n=n, pairs=tuple(norm))


def path_graph(n: int, forward: Sequence[float], reverse: Sequence[float]) -> PseudoGraph:
    """Path on n nodes: pair i joins nodes (i, i+1).

    ``forward[i]`` weights edge i+1 -> i+2 and ``reverse[i]`` the
    opposite direction (1-based nodes). The Laplacian of the result is
    tridiagonal with diagonal ``(forward[0], reverse[0]+forward[1],
    ..., reverse[-1])``.
    """
    forward = [float(w) for w in forward]
    reverse = [float(w) for w in reverse]
    if len(forward) != n - 1 or len(reverse) != n - 1:
        raise GraphDefinitionError(
            f"path on {n} nodes needs {n - 1} weights per direction, "
            f"got {len(forward)}/{len(reverse)}"
        )
    pairs = [EdgePair(i + 1, i + 2, forward[i], reverse[i]) for i in range(n - 1)]
    return pseudo_graph(n, pairs)


def weights(g: PseudoGraph) -> np.ndarray:
    """Diagonal of W: 2m weights in the shared column ordering."""
    return np.array([p.w_ab for p in g.pairs] + [p.w_ba for p in g.pairs])


def weighted_adjacency(g: PseudoGraph) -> np.ndarray:
    """A[i, j] = weight of directed edge i->j (0-based rows/cols)."""
    A = np.zeros((g.n, g.n))
    for p in g.pairs:
        A[p.a - 1, p.b - 1] = p.w_ab
        A[p.b - 1, p.a - 1] = p.w_ba
    return A


def weighted_out_degree(g: PseudoGraph) -> np.ndarray:
    """Row sums of the weighted adjacency."""
    return weighted_adjacency(g).sum(axis=1)


def laplacian(g: PseudoGraph) -> Laplacian:
    """Out-Laplacian L = E_out @ W @ E.T (degree minus adjacency)."""
    A = weighted_adjacency(g)
    L = np.diag(A.sum(axis=1)) - A
    return Laplacian(matrix=L, n=g.n, edge_order=g.edge_order)


def _skeleton_adjacency(g: PseudoGraph) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for p in g.pairs:
        adj[p.a - 1].append(p.b - 1)
        adj[p.b - 1].append(p.a - 1)
    return adj


def _is_connected(g: PseudoGraph) -> bool:
    if g.n == 1:
        return True
    adj = _skeleton_adjacency(g)
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == g.n


def _spanning_tree(g: PseudoGraph) -> list[int]:
    """Pair indices forming a spanning tree.

    Pairs are scanned in declaration order and accepted whenever they
    join two components (union-find). This keeps the factorization
    reproducible and, for path graphs, yields the path edges in order.
    """
    parent = list(range(g.n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: list[int] = []
    for k, p in enumerate(g.pairs):
        ra, rb = find(p.a - 1), find(p.b - 1)
        if ra != rb:
            parent[ra] = rb
            tree.append(k)
    return tree


def _tree_path_signs(tree_pairs: list[tuple[int, int]], n: int,
                     src: int, dst: int) -> np.ndarray:
    """Signed tree-edge indicator of the path src -> dst.

    Entry k is +1 if tree edge k is traversed tail->head, -1 if
    head->tail, 0 if unused. Exact integers.
    """
    adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(n)}
    for k, (a, b) in enumerate(tree_pairs):
        adj[a].append((b, k, +1))
        adj[b].append((a, k, -1))
    # iterative DFS carrying the signed-edge stack
    out = np.zeros(len(tree_pairs), dtype=int)
    stack: list[tuple[int, int, list[tuple[int, int]]]] = [(src, -1, [])]
    while stack:
        node, avoid, path = stack.pop()
        if node == dst:
            for k, s in path:
                out[k] = s
            return out
        for nxt, k, s in adj[node]:
            if nxt != avoid:
                stack.append((nxt, node, path + [(k, s)]))
    raise DisconnectedGraph(f"no tree path between nodes {src + 1} and {dst + 1}")


def incidence_set(g: PseudoGraph) -> IncidenceSet:
    """Incidence matrices and the exact factorization E = E_tau @ R.

    E_tau holds the spanning-tree pair columns (a->b orientation) in
    declaration order; each non-tree column of R is the signed tree
    path from that edge's tail to its head, solved exactly (entries in
    {-1, 0, +1}). For path graphs E_tau is the (+1, -1) bidiagonal
    matrix and R = [I | -I].

    Raises
    ------
    DisconnectedGraph
        If the undirected skeleton is not connected.
    """
    if not _is_connected(g):
        raise DisconnectedGraph("undirected skeleton is not connected")
    n, m = g.n, g.m
    order = g.edge_order
    E = np.zeros((n, 2 * m))
    E_out = np.zeros((n, 2 * m))
    for c, (tail, head) in enumerate(order):
        E[tail - 1, c] = 1.0
        E[head - 1, c] = -1.0
        E_out[tail - 1, c] = 1.0

    tree = _spanning_tree(g)
    tree_pairs = [(g.pairs[k].a - 1, g.pairs[k].b - 1) for k in tree]
    E_tau = np.zeros((n, n - 1))
    for j, (a, b) in enumerate(tree_pairs):
        E_tau[a, j] = 1.0
        E_tau[b, j] = -1.0

    col_of_tree_pair = {k: j for j, k in enumerate(tree)}
    R = np.zeros((n - 1, 2 * m))
    for c in range(2 * m):
        pair_idx = c % m
        pair = g.pairs[pair_idx]
        sign = 1.0 if c < m else -1.0  # reverse block flips orientation
        if pair_idx in col_of_tree_pair:
            R[col_of_tree_pair[pair_idx], c] = sign
        else:
            R[:, c] = sign * _tree_path_signs(tree_pairs, n, pair.a - 1, pair.b - 1)
    return IncidenceSet(E=E, E_out=E_out, E_tau=E_tau, R=R, edge_order=order)


def validate(g: PseudoGraph) -> GraphDiagnostics:
    """Connectivity, negative-weight count, and degree maps (pure report)."""
    w = weights(g)
    A = weighted_adjacency(g)
    return GraphDiagnostics(
        connected=_is_connected(g),
        negative_weights=int(np.sum(w < 0)),
        out_degree={i + 1: float(A[i].sum()) for i in range(g.n)},
        in_degree={i + 1: float(A[:, i].sum()) for i in range(g.n)},
    )
