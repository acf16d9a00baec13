"""Fixed-step simulation of the consensus protocol xdot = -L x.

The integrator is classical fourth-order Runge-Kutta. Because the
dynamics are linear and time-invariant, one RK4 step equals
multiplication by the degree-4 Taylor polynomial of expm(-dt L); the
step matrix is formed once and reused, which keeps long runs cheap and
bit-reproducible.

Convergence is declared when the state spread max_i |x_i - mean(x)|
falls below a tolerance (spread, not derivative, to avoid false
positives near slow modes); divergence when the state norm exceeds
1e9 times the initial norm.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import spectral
from .errors import StepTooLarge
from .graph import Laplacian, PseudoGraph, as_matrix, laplacian

__all__ = ["Verdict", "Trajectory", "PredictionReport", "simulate",
           "predicted_vs_simulated"]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a run: kind is 'converged', 'diverged', or 'timeout'."""

    kind: str
    value: float | None = None
    time: float | None = None


@dataclass(frozen=True)
class Trajectory:
    """Fixed-step state history plus the run verdict."""

    times: np.ndarray
    states: np.ndarray
    verdict: Verdict


def _rk4_step_matrix(L: np.ndarray, dt: float) -> np.ndarray:
    A = -dt * L
    n = L.shape[0]
    phi = np.eye(n)
    term = np.eye(n)
    for k in (1, 2, 3, 4):
        term = term @ A / k
        phi = phi + term
    return phi


def simulate(L: Laplacian | np.ndarray, x0, dt: float | None = None,
             t_max: float = 50.0, tol: float | None = None) -> Trajectory:
    """Integrate xdot = -L x from x0 until convergence or divergence.

    Parameters
    ----------
    L : Laplacian or array
    x0 : array of initial states
    dt : step size; defaults to 0.05 / max|Re lambda| (clamped to the
        stability guard). Must satisfy dt <= 0.1 / max|lambda|.
    t_max : horizon; verdict 'timeout' if neither detector fires.
    tol : convergence spread; defaults to 1e-6 * (1 + ||x0||_inf).

    Raises
    ------
    StepTooLarge
        If dt violates the stability guard.
    """
    M = as_matrix(L)
    x0 = np.asarray(x0, dtype=float)
    lam = np.linalg.eigvals(M)
    lam_abs = float(np.max(np.abs(lam))) if lam.size else 0.0
    lam_re = float(np.max(np.abs(np.real(lam)))) if lam.size else 0.0
    if dt is None:
        dt = 0.05 / lam_re if lam_re > 0 else t_max / 1000.0
        if lam_abs > 0:
            dt = min(dt, 0.09 / lam_abs)
    if lam_abs > 0 and dt > 0.1 / lam_abs:
        raise StepTooLarge(f"dt={dt:g} exceeds stability guard {0.1 / lam_abs:g}")
    if dt <= 0:
        raise StepTooLarge("dt must be positive")
    if tol is None:
        x0_inf = float(np.max(np.abs(x0))) if x0.size else 0.0
        tol = 1e-6 * (1.0 + x0_inf)

    phi = _rk4_step_matrix(M, dt)
    n_steps = int(np.ceil(t_max / dt))
    blow = 1e9 * max(float(np.linalg.norm(x0)), 1e-300)

    times = [0.0]
    states = [x0.copy()]
    x = x0.copy()
    verdict = None
    for k in range(n_steps + 1):
        t = k * dt
        spread = float(np.max(np.abs(x - x.mean()))) if x.size else 0.0
        if spread < tol:
            verdict = Verdict(kind="converged", value=float(x.mean()), time=t)
            break
        if float(np.linalg.norm(x)) > blow:
            verdict = Verdict(kind="diverged", time=t)
            break
        if k == n_steps:
            break
        x = phi @ x
        times.append((k + 1) * dt)
        states.append(x.copy())
    if verdict is None:
        verdict = Verdict(kind="timeout", time=float(times[-1]))
    return Trajectory(times=np.array(times), states=np.array(states),
                      verdict=verdict)


@dataclass(frozen=True)
class PredictionReport:
    """Spectral prediction against a simulated run."""

    predicted: spectral.ConsensusValue
    verdict: Verdict
    abs_gap: float
    rel_gap: float


def predicted_vs_simulated(g: PseudoGraph, x0, dt: float | None = None,
                           t_max: float = 200.0,
                           tol: float | None = None) -> PredictionReport:
    """Predict the consensus value, simulate, and report the gap."""
    L = laplacian(g)
    p = spectral.left_null_vector_direct(L)
    predicted = spectral.consensus_value(p, x0)
    traj = simulate(L, x0, dt=dt, t_max=t_max, tol=tol)
    if traj.verdict.kind == "converged":
        abs_gap = abs(traj.verdict.value - predicted.value)
        rel_gap = abs_gap / max(abs(predicted.value), 1e-300)
    else:
        abs_gap = rel_gap = float("nan")
    return PredictionReport(predicted=predicted, verdict=traj.verdict,
                            abs_gap=abs_gap, rel_gap=rel_gap)
