"""Exception hierarchy shared across the toolkit.

Every error carries an ``exit_code`` used by the command-line layer:
2 for malformed or contract-violating input, 3 for well-posed problems
whose answer is "consensus/interception is infeasible or diverged", and
4 for internal numerical failures (a computation that should have
succeeded did not).
"""
from __future__ import annotations


class PugraphError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 4


class InputError(PugraphError):
    """Malformed input or violated call contract."""

    exit_code = 2


class InfeasibleError(PugraphError):
    """Structurally valid input whose consensus/run is infeasible."""

    exit_code = 3


class NumericalError(PugraphError):
    """Internal numerical failure."""

    exit_code = 4


# -- graph construction / lookup ------------------------------------------

class GraphDefinitionError(InputError):
    """Self-pair, duplicate pair, half-zero weight pair, or bad dimension."""


class DisconnectedGraph(InputError):
    """Undirected skeleton is not connected."""


class UnknownEdge(InputError):
    """Requested directed edge does not exist in the graph."""


class InvalidParameter(InputError):
    """Out-of-range or inconsistent numeric parameter."""


# -- spectral ---------------------------------------------------------------

class NegativeWeightUnsupported(InputError):
    """Projection method requires strictly positive weights."""


class NoUnitEigenvector(NumericalError):
    """Projector product has no eigenvalue-1 eigenvector."""


class RankDeficiencyNotOne(InfeasibleError):
    """Laplacian transpose null space is not one-dimensional."""


class ZeroWeightSum(InfeasibleError):
    """Null-vector entries sum to zero; consensus value undefined."""


class ZeroSuperdiagonal(InputError):
    """Path recursion requires nonzero superdiagonal entries."""


# -- dynamics ---------------------------------------------------------------

class StepTooLarge(InputError):
    """Requested step size violates the integrator stability guard."""


# -- robustness -------------------------------------------------------------

class DegenerateNumerator(NumericalError):
    """Edge transfer function has an identically zero numerator."""


class UnstableNominal(InfeasibleError):
    """Nominal graph already fails consensus; margins undefined."""


class NoCrossingWithinLimit(NumericalError):
    """Feasibility boundary not found within the search limit."""


# -- guidance ---------------------------------------------------------------

class NonConvergentPursuit(InfeasibleError):
    """Pursuit geometry cannot reach capture (range not closing)."""


class ConsensusInfeasibleTopology(InfeasibleError):
    """Salvo topology fails the consensus feasibility test."""
