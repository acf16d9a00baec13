"""Left null vectors, consensus values, and eventual-positivity certificates.

For the consensus protocol ``xdot = -L x`` over a pseudo-undirected
graph, the trajectory settles (when feasible) on

    x* = sum_i p_i x_i(0) / sum_i p_i,

where ``p`` spans the left null space of the out-Laplacian. Three
routes to ``p`` are provided:

* a projection method that intersects null(E) with range(W E_out^T)
  via the eigenvalue-1 eigenvector of the projector product (requires
  strictly positive weights),
* the exact backward recursion along tridiagonal path Laplacians
  (valid for admissible negative weights), and
* a dense null-space solve of L^T as the general fallback.

The shifted matrix ``A - D + (2 d_g + eps) I`` is eventually positive
for connected graphs (some power, and all higher powers, have strictly
positive entries at an exponent no larger than the graph diameter),
which certifies that the zero eigenvalue is simple with a positive
left eigenvector when all weights are positive.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import graph as graph_mod
from .errors import (
    InvalidParameter,
    NegativeWeightUnsupported,
    NoUnitEigenvector,
    NumericalError,
    RankDeficiencyNotOne,
    ZeroSuperdiagonal,
    ZeroWeightSum,
)
from .graph import Laplacian, PseudoGraph, as_matrix

__all__ = [
    "LeftNullVector",
    "NullRangeBases",
    "ConsensusValue",
    "FeasibilityReport",
    "l_star",
    "is_eventually_positive",
    "null_range_bases",
    "left_null_vector_projection",
    "left_null_vector_path",
    "left_null_vector_direct",
    "consensus_value",
    "consensus_feasible",
]


@dataclass(frozen=True)
class LeftNullVector:
    """Vector p with L^T p = 0, normalized so the last entry is 1."""

    p: np.ndarray
    residual: float
    sign_pattern: tuple[int, ...]


@dataclass(frozen=True)
class NullRangeBases:
    """Bases and projectors for null(E) and range(W E_out^T)."""

    U: np.ndarray
    V: np.ndarray
    P_U: np.ndarray
    P_V: np.ndarray


@dataclass(frozen=True)
class ConsensusValue:
    """Predicted agreement value plus hull membership of the value."""

    value: float
    in_hull: bool

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class FeasibilityReport:
    """Spectral consensus feasibility for xdot = -L x."""

    feasible: bool
    spectrum: np.ndarray


def l_star(g: PseudoGraph, eps: float = 1.0) -> np.ndarray:
    """Eventual-positivity shift A - D + (2 d_g + eps) I.

    ``d_g`` is the maximum weighted out-degree; any ``eps > 0`` makes
    every diagonal entry at least ``d_g + eps > 0``.
    """
    if eps <= 0:
        raise InvalidParameter(f"eps must be positive, got {eps}")
    A = graph_mod.weighted_adjacency(g)
    d = A.sum(axis=1)
    d_g = float(d.max())
    return A - np.diag(d) + (2.0 * d_g + eps) * np.eye(g.n)


def is_eventually_positive(M: np.ndarray, max_power: int) -> int | None:
    """Smallest k <= max_power with all entries of M^k > 0, else None."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise InvalidParameter("square matrix required")
    if max_power < 1:
        raise InvalidParameter("max_power must be >= 1")
    P = np.eye(M.shape[0])
    for k in range(1, max_power + 1):
        P = P @ M
        if np.all(P > 0):
            return k
    return None


def null_range_bases(g: PseudoGraph) -> NullRangeBases:
    """Orthonormal basis U of null(E), V = W E_out^T, and projectors."""
    inc = graph_mod.incidence_set(g)
    W = np.diag(graph_mod.weights(g))
    U = scipy.linalg.null_space(inc.E)
    V = W @ inc.E_out.T
    P_U = U @ U.T
    P_V = V @ np.linalg.solve(V.T @ V, V.T)
    return NullRangeBases(U=U, V=V, P_U=P_U, P_V=P_V)


def _finalize(L: np.ndarray, p: np.ndarray, err: type[Exception]) -> LeftNullVector:
    """Normalize to p_n = 1 and enforce the residual contract."""
    if abs(p[-1]) < 1e-14 * max(1.0, float(np.max(np.abs(p)))):
        raise err("null vector has (numerically) zero last entry; cannot normalize")
    p = p / p[-1]
    residual = float(np.max(np.abs(L.T @ p)))
    bound = 1e-9 * max(1.0, float(np.linalg.norm(L, np.inf)) * float(np.max(np.abs(p))))
    if residual > bound:
        raise err(f"left null residual {residual:.3e} exceeds bound {bound:.3e}")
    return LeftNullVector(
        p=p, residual=residual, sign_pattern=tuple(int(s) for s in np.sign(p))
    )


def left_null_vector_projection(g: PseudoGraph) -> LeftNullVector:
    """p via the subspace-intersection (projector product) method.

    Finds v in null(E) ∩ range(W E_out^T) as an eigenvector of
    ``P_U @ P_V`` at eigenvalue 1, then maps back through the
    least-squares pullback p = (V^T V)^{-1} V^T v.

    Raises
    ------
    NegativeWeightUnsupported
        If any weight is not strictly positive (use
        :func:`left_null_vector_direct` instead).
    NoUnitEigenvector
        If no eigenvalue of the projector product lies within 1e-8
        of 1 (disconnection or numerical failure).
    """
    w = graph_mod.weights(g)
    if np.any(w <= 0):
        raise NegativeWeightUnsupported(
            "projection method requires strictly positive weights"
        )
    bases = null_range_bases(g)
    prod = bases.P_U @ bases.P_V
    vals, vecs = np.linalg.eig(prod)
    hits = np.flatnonzero(np.abs(vals - 1.0) <= 1e-8)
    if hits.size == 0:
        raise NoUnitEigenvector("projector product has no eigenvalue at 1")
    # several unit eigenvalues: orthogonalize and keep the candidate with
    # the smallest combined membership residual
    cand = np.real(vecs[:, hits])
    cand, _ = np.linalg.qr(cand)
    E = graph_mod.incidence_set(g).E
    best, best_res = None, np.inf
    for j in range(cand.shape[1]):
        v = cand[:, j]
        res = float(np.linalg.norm(E @ v) + np.linalg.norm(v - bases.P_V @ v))
        if res < best_res:
            best, best_res = v, res
    v = best
    p = np.linalg.solve(bases.V.T @ bases.V, bases.V.T @ v)
    L = graph_mod.laplacian(g).matrix
    return _finalize(L, p, NoUnitEigenvector)


def left_null_vector_path(L: Laplacian | np.ndarray) -> LeftNullVector:
    """p by the exact backward recursion on a tridiagonal path Laplacian.

    Starting from p_n = 1, each entry is the next one scaled by the
    ratio of the subdiagonal to the superdiagonal Laplacian entry; the
    recursion is valid for admissible negative weights as well.
    """
    M = as_matrix(L)
    n = M.shape[0]
    band = np.tri(n, k=1) * np.tri(n, k=1).T  # tridiagonal mask
    if np.any(M[band == 0] != 0.0):
        raise InvalidParameter("matrix is not tridiagonal")
    p = np.ones(n)
    for i in range(n - 2, -1, -1):
        sup = M[i, i + 1]
        if sup == 0.0:
            raise ZeroSuperdiagonal(f"superdiagonal entry ({i + 1},{i + 2}) is zero")
        p[i] = p[i + 1] * (M[i + 1, i] / sup)
    return _finalize(M, p, NumericalError)


def left_null_vector_direct(L: Laplacian | np.ndarray) -> LeftNullVector:
    """p by a dense null-space solve of L^T (general fallback).

    Raises
    ------
    RankDeficiencyNotOne
        If rank(L) != n - 1, i.e. either no agreement directions or
        multiple independent clusters.
    """
    M = as_matrix(L)
    ns = scipy.linalg.null_space(M.T)
    if ns.shape[1] != 1:
        raise RankDeficiencyNotOne(
            f"null space of L^T has dimension {ns.shape[1]}, expected 1"
        )
    return _finalize(M, ns[:, 0], NumericalError)


def consensus_value(p: LeftNullVector | np.ndarray, x0) -> ConsensusValue:
    """Weighted average sum(p_i x0_i)/sum(p_i) with hull membership.

    The hull flag uses the closed interval [min x0, max x0] with a
    1e-12 relative guard against rounding at the endpoints.
    """
    pv = p.p if isinstance(p, LeftNullVector) else np.asarray(p, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    if pv.shape != x0.shape:
        raise InvalidParameter(f"p has length {pv.size}, x0 has length {x0.size}")
    total = float(pv.sum())
    if abs(total) <= 1e-12 * float(np.sum(np.abs(pv))):
        raise ZeroWeightSum("null-vector entries sum to zero; value undefined")
    value = float(pv @ x0) / total
    slack = 1e-12 * (1.0 + float(np.max(np.abs(x0))))
    in_hull = bool(x0.min() - slack <= value <= x0.max() + slack)
    return ConsensusValue(value=value, in_hull=in_hull)


def consensus_feasible(L: Laplacian | np.ndarray) -> FeasibilityReport:
    """Feasible iff 0 is a simple eigenvalue and the rest have Re > 0.

    The zero test is scale-aware: |lambda| <= 1e-8 * ||L||_2.
    """
    M = as_matrix(L)
    vals = np.linalg.eigvals(M)
    scale = float(np.linalg.norm(M, 2))
    tol = 1e-8 * max(scale, 1e-300)
    zeros = np.abs(vals) <= tol
    others_ok = np.all(np.real(vals[~zeros]) > 0.0)
    feasible = bool(int(zeros.sum()) == 1 and others_ok)
    order = np.lexsort((np.imag(vals), np.real(vals)))
    return FeasibilityReport(feasible=feasible, spectrum=vals[order])
