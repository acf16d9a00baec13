"""Single-edge gain margins via edge-agreement transfer functions.

Perturbing one directed edge weight by Delta turns the consensus
protocol into a feedback interconnection: with tree-edge differences
x_tau = E_tau^T x, the nominal system matrix is

    A = -E_tau^T E_out W R^T,

the perturbation enters through B = -E_tau^T E_out e and is read out
by C = e^T R^T (e selects the perturbed edge column), and the loop
transfer function is M(s) = -num(s)/den(s) with den = char(A). The
closed-loop characteristic polynomial is den(s) + Delta * num(s), so
consensus survives exactly while |Delta| stays below the effective
gain margin min over phase crossovers of 1/|M(j w)|.

Characteristic polynomials come from the Leverrier trace recursion,
run in exact integer arithmetic whenever the system matrix is
integral so printed catalog coefficients are reproduced exactly.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import graph as graph_mod
from . import spectral
from .errors import (
    DegenerateNumerator,
    InvalidParameter,
    NoCrossingWithinLimit,
    NumericalError,
    UnknownEdge,
    UnstableNominal,
)
from .graph import PseudoGraph, laplacian, path_graph

__all__ = [
    "EdgeAgreementSystem",
    "RationalTransferFunction",
    "Crossover",
    "MarginReport",
    "SweepRow",
    "SweepTable",
    "edge_agreement_matrices",
    "transfer_function",
    "edge_transfer_function",
    "phase_crossovers",
    "gain_margin",
    "closed_form_leading_margin",
    "critical_perturbation_oracle",
    "margin_sweep",
]


@dataclass(frozen=True)
class EdgeAgreementSystem:
    """State-space triple of the single-edge agreement loop."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    edge: tuple[int, int]


@dataclass(frozen=True)
class RationalTransferFunction:
    """M(s) = -num(s)/den(s); den is always char(A), never cancelled.

    Coefficients are stored descending; den is monic of degree n-1 and
    num has degree n-2 with positive leading coefficient (the global
    minus sign is factored out front).
    """

    num: np.ndarray
    den: np.ndarray
    edge: tuple[int, int] | None = None


@dataclass(frozen=True)
class Crossover:
    """One phase-crossover frequency and the loop gain there."""

    omega_pc: float
    magnitude: float


@dataclass(frozen=True)
class MarginReport:
    """Effective gain margin = min over crossovers of 1/|M(j w)|."""

    crossovers: tuple[Crossover, ...]
    effective_margin: float
    perturbed_edge: tuple[int, int] | None


def edge_agreement_matrices(g: PseudoGraph, edge: tuple[int, int]) -> EdgeAgreementSystem:
    """Build (A, B, C) for a perturbation on the given directed edge.

    The spectrum of A is checked against the nonzero spectrum of -L.

    Raises
    ------
    UnknownEdge
        If (tail, head) is not a directed edge of the graph.
    """
    edge = (int(edge[0]), int(edge[1]))
    inc = graph_mod.incidence_set(g)
    try:
        col = inc.edge_order.index(edge)
    except ValueError:
        raise UnknownEdge(f"no directed edge {edge[0]}->{edge[1]}") from None
    W = np.diag(graph_mod.weights(g))
    A = -inc.E_tau.T @ inc.E_out @ W @ inc.R.T
    B = -(inc.E_tau.T @ inc.E_out[:, col])
    C = inc.R[:, col].copy()

    # A must carry exactly the nonzero consensus spectrum
    L = laplacian(g).matrix
    lam_L = np.linalg.eigvals(-L)
    lam_L = np.delete(lam_L, int(np.argmin(np.abs(lam_L))))
    lam_A = np.linalg.eigvals(A)
    key = lambda v: np.lexsort((np.imag(v), np.real(v)))
    scale = max(1.0, float(np.max(np.abs(lam_A))) if lam_A.size else 1.0)
    if lam_A.size and np.max(np.abs(lam_A[key(lam_A)] - lam_L[key(lam_L)])) > 1e-8 * scale:
        raise NumericalError("agreement-system spectrum mismatch with -L")
    return EdgeAgreementSystem(A=A, B=B, C=C, edge=edge)


def _faddeev_int(A: Sequence[Sequence[int]], B: Sequence[int],
                 C: Sequence[int]) -> tuple[list[int], list[int]]:
    """Leverrier recursion in exact integer arithmetic."""
    q = len(A)
    A_ = np.array(A, dtype=object)
    B_ = np.array(B, dtype=object)
    C_ = np.array(C, dtype=object)
    eye = np.array([[1 if i == j else 0 for j in range(q)] for i in range(q)],
                   dtype=object)
    N = eye
    den: list[int] = [1]
    adj: list[int] = [int(C_ @ N @ B_)]
    for k in range(1, q + 1):
        M = A_ @ N
        ck = Fraction(-int(np.trace(M)), k)
        if ck.denominator != 1:
            raise NumericalError("trace recursion produced a non-integer coefficient")
        ck = int(ck)
        den.append(ck)
        if k < q:
            N = M + ck * eye
            adj.append(int(C_ @ N @ B_))
    return [-a for a in adj], den


def _faddeev_float(A: np.ndarray, B: np.ndarray,
                   C: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    q = A.shape[0]
    N = np.eye(q)
    den = [1.0]
    adj = [float(C @ N @ B)]
    for k in range(1, q + 1):
        M = A @ N
        ck = -float(np.trace(M)) / k
        den.append(ck)
        if k < q:
            N = M + ck * np.eye(q)
            adj.append(float(C @ N @ B))
    return -np.array(adj), np.array(den)


def transfer_function(A: np.ndarray, B: np.ndarray, C: np.ndarray,
                      edge: tuple[int, int] | None = None) -> RationalTransferFunction:
    """M(s) = -num/den from the state-space triple.

    den is char(A) via the Leverrier trace recursion; num collects the
    adjugate accumulation C N_k B. Integral triples are processed in
    exact integer arithmetic. The closed-loop identity
    char(A + Delta B C) = den + Delta * num holds by construction.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_1d(np.asarray(B, dtype=float)).ravel()
    C = np.atleast_1d(np.asarray(C, dtype=float)).ravel()
    q = A.shape[0]
    if A.shape != (q, q) or B.size != q or C.size != q:
        raise InvalidParameter("inconsistent state-space dimensions")
    integral = (np.allclose(A, np.rint(A), atol=1e-12, rtol=0)
                and np.allclose(B, np.rint(B), atol=1e-12, rtol=0)
                and np.allclose(C, np.rint(C), atol=1e-12, rtol=0))
    if integral:
        num, den = _faddeev_int(np.rint(A).astype(int).tolist(),
                                np.rint(B).astype(int).tolist(),
                                np.rint(C).astype(int).tolist())
        num = np.array([float(x) for x in num])
        den = np.array([float(x) for x in den])
    else:
        num, den = _faddeev_float(A, B, C)
    return RationalTransferFunction(num=num, den=den, edge=edge)


def edge_transfer_function(g: PseudoGraph, edge: tuple[int, int]) -> RationalTransferFunction:
    """Agreement transfer function for one directed edge of g."""
    sys = edge_agreement_matrices(g, edge)
    return transfer_function(sys.A, sys.B, sys.C, edge=sys.edge)


def _jw_split(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Real/imag coefficient polynomials (in w) of p(jw), descending."""
    d = len(coeffs) - 1
    re = np.zeros_like(coeffs)
    im = np.zeros_like(coeffs)
    for j, c in enumerate(coeffs):
        k = d - j  # power of s
        r = k % 4
        if r == 0:
            re[j] = c
        elif r == 1:
            im[j] = c
        elif r == 2:
            re[j] = -c
        else:
            im[j] = -c
    return re, im


def _cross_parts(tf: RationalTransferFunction) -> tuple[np.ndarray, np.ndarray]:
    """Re and Im coefficient polynomials of num(jw) * conj(den(jw))."""
    nR, nI = _jw_split(tf.num)
    dR, dI = _jw_split(tf.den)
    re = np.polyadd(np.polymul(nR, dR), np.polymul(nI, dI))
    im = np.polysub(np.polymul(nI, dR), np.polymul(nR, dI))
    return re, im


def phase_crossovers(tf: RationalTransferFunction) -> np.ndarray:
    """Frequencies w >= 0 where M(jw) is negative real.

    Zeros of Im{num(jw) conj(den(jw))} are found by dividing the odd
    polynomial by w, substituting u = w^2, and taking companion-matrix
    eigenvalue roots; a zero is admitted only where
    Re{num(jw) conj(den(jw))} > 0 (phase exactly -pi). w = 0 is always
    tested.

    Raises
    ------
    DegenerateNumerator
        If the numerator is identically zero.
    """
    scale = float(np.max(np.abs(tf.den)))
    if np.all(np.abs(tf.num) <= 1e-12 * scale):
        raise DegenerateNumerator("numerator is identically zero")
    re, im = _cross_parts(tf)

    candidates = [0.0]
    im_over_w = im[:-1]  # odd polynomial: constant term vanishes
    if im_over_w.size:
        d = len(im_over_w) - 1
        odd = [im_over_w[j] for j in range(len(im_over_w)) if (d - j) % 2 == 1]
        if odd and np.max(np.abs(odd)) > 1e-9 * max(1.0, np.max(np.abs(im_over_w))):
            raise NumericalError("crossover polynomial is not even in w")
        u_poly = np.array([im_over_w[j] for j in range(len(im_over_w))
                           if (d - j) % 2 == 0])
        u_poly = np.trim_zeros(u_poly, "f")
        if u_poly.size > 1:
            for u in np.roots(u_poly):
                if abs(np.imag(u)) > 1e-8 or np.real(u) < -1e-10:
                    continue
                candidates.append(float(np.sqrt(max(np.real(u), 0.0))))

    admitted: list[float] = []
    for w in sorted(candidates):
        if admitted and abs(w - admitted[-1]) <= 1e-9:
            continue
        if np.polyval(re, w) > 0.0:
            admitted.append(w)
    return np.array(admitted)


def gain_margin(tf: RationalTransferFunction) -> MarginReport:
    """Effective gain margin of the edge transfer function.

    Raises
    ------
    UnstableNominal
        If den has a root with nonnegative real part (the nominal
        graph already fails consensus).
    """
    roots = np.roots(tf.den)
    if roots.size and float(np.max(np.real(roots))) >= -1e-12:
        raise UnstableNominal("nominal denominator is not strictly stable")
    crossings = phase_crossovers(tf)
    reports = []
    for w in crossings:
        mag = abs(np.polyval(tf.num, 1j * w)) / abs(np.polyval(tf.den, 1j * w))
        reports.append(Crossover(omega_pc=float(w), magnitude=float(mag)))
    if not reports:
        return MarginReport(crossovers=(), effective_margin=float("inf"),
                            perturbed_edge=tf.edge)
    # ties broken toward smaller w: ascending scan with strict improvement
    best = reports[0]
    for c in reports[1:]:
        if c.magnitude > best.magnitude:
            best = c
    return MarginReport(crossovers=tuple(reports),
                        effective_margin=1.0 / best.magnitude,
                        perturbed_edge=tf.edge)


def closed_form_leading_margin(n: int, ell: int) -> float:
    """Unit-weight leading/central margin law n / (n - ell).

    Valid for ell = 1..n/2 (even n) or 1..ceil(n/2) (odd n).
    """
    if n < 2:
        raise InvalidParameter("n must be >= 2")
    top = n // 2 if n % 2 == 0 else (n + 1) // 2
    if not 1 <= ell <= top:
        raise InvalidParameter(f"ell={ell} outside 1..{top} for n={n}")
    return n / (n - ell)


def critical_perturbation_oracle(g: PseudoGraph, edge: tuple[int, int],
                                 search_limit: float = 1e6) -> float:
    """Most negative feasibility-preserving Delta on one edge (bisection).

    Ground truth for the margin computation: the perturbed Laplacian is
    L + Delta e_a (e_a - e_b)^T and feasibility is the spectral test;
    the eigenvalue-crossing boundary is bisected to 1e-9.

    Raises
    ------
    UnstableNominal
        If the nominal graph is already infeasible.
    NoCrossingWithinLimit
        If no infeasible Delta is found within the search limit.
    """
    edge = (int(edge[0]), int(edge[1]))
    if edge not in g.edge_order:
        raise UnknownEdge(f"no directed edge {edge[0]}->{edge[1]}")
    L0 = laplacian(g).matrix
    a, b = edge[0] - 1, edge[1] - 1
    bump = np.zeros_like(L0)
    bump[a, a] = 1.0
    bump[a, b] = -1.0

    def feasible(delta: float) -> bool:
        return spectral.consensus_feasible(L0 + delta * bump).feasible

    if not feasible(0.0):
        raise UnstableNominal("nominal graph fails the feasibility test")
    lo = -1.0
    while feasible(lo):
        lo *= 2.0
        if -lo > search_limit:
            raise NoCrossingWithinLimit(
                f"no feasibility crossing within |Delta| <= {search_limit:g}"
            )
    hi = 0.0 if lo == -1.0 else lo / 2.0  # hi feasible, lo infeasible
    while hi - lo > 1e-9:
        mid = 0.5 * (hi + lo)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class SweepRow:
    """Margin of one edge of the unit-weight path on n nodes."""

    n: int
    edge: tuple[int, int]
    margin: float
    omega_pc: float
    crossovers: tuple[Crossover, ...]


@dataclass(frozen=True)
class SweepTable:
    selector: str
    rows: tuple[SweepRow, ...]


def _selector_edges(selector: str, n: int) -> list[tuple[int, int]]:
    kind, _, arg = selector.partition(":")
    if kind == "leading":
        ell = int(arg) if arg else 1
        if ell < 1:
            raise InvalidParameter("leading edge index must be >= 1")
        return [(ell, ell + 1)] if ell <= n - 1 else []
    if kind == "central":
        if n % 2 == 0:
            return [(n // 2, n // 2 + 1)]
        return [((n - 1) // 2, (n + 1) // 2), ((n + 1) // 2, (n + 3) // 2)]
    if kind == "trailing":
        k = int(arg) if arg else 1
        if k < 1:
            raise InvalidParameter("trailing edge index must be >= 1")
        ell = n - k
        return [(ell, ell + 1)] if ell >= 1 else []
    raise InvalidParameter(f"unknown edge selector {selector!r}")


def _sweep_one(args: tuple[int, tuple[int, int]]) -> SweepRow:
    n, edge = args
    g = path_graph(n, [1.0] * (n - 1), [1.0] * (n - 1))
    report = gain_margin(edge_transfer_function(g, edge))
    worst = max(report.crossovers, key=lambda c: c.magnitude)
    return SweepRow(n=n, edge=edge, margin=report.effective_margin,
                    omega_pc=worst.omega_pc, crossovers=report.crossovers)


def margin_sweep(n_range: Iterable[int], edge_selector: str) -> SweepTable:
    """Unit-weight margin trends across path sizes.

    ``edge_selector`` is ``leading:<ell>``, ``central`` (both central
    edges for odd n), or ``trailing:<k>`` (k-th edge from the far
    end). Sizes for which the selector names no valid edge are
    skipped. PUGRAPH_THREADS > 1 evaluates sizes concurrently.
    """
    jobs: list[tuple[int, tuple[int, int]]] = []
    for n in n_range:
        for edge in _selector_edges(edge_selector, int(n)):
            jobs.append((int(n), edge))
    workers = int(os.environ.get("PUGRAPH_THREADS", "1") or "1")
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_one, jobs))
    else:
        rows = [_sweep_one(j) for j in jobs]
    return SweepTable(selector=edge_selector, rows=tuple(rows))
