"""Consensus analysis on pseudo-undirected graphs.

Graphs whose node pairs carry two oppositely directed, independently
weighted (possibly negative) edges produce non-symmetric Laplacians.
This package builds those Laplacians and their incidence
factorizations, extracts the left null vector that weights the
consensus value, simulates the agreement dynamics, computes
single-edge gain margins through edge-agreement transfer functions,
and applies the machinery to a cooperative simultaneous-interception
guidance scenario. The ``pugraph`` CLI exposes each analysis over
declarative files.
"""
from .dynamics import (
    PredictionReport,
    Trajectory,
    Verdict,
    predicted_vs_simulated,
    simulate,
)
from .errors import (
    ConsensusInfeasibleTopology,
    DegenerateNumerator,
    DisconnectedGraph,
    GraphDefinitionError,
    InfeasibleError,
    InputError,
    InvalidParameter,
    NegativeWeightUnsupported,
    NoCrossingWithinLimit,
    NonConvergentPursuit,
    NoUnitEigenvector,
    NumericalError,
    PugraphError,
    RankDeficiencyNotOne,
    StepTooLarge,
    UnknownEdge,
    UnstableNominal,
    ZeroSuperdiagonal,
    ZeroWeightSum,
)
from .graph import (
    EdgePair,
    GraphDiagnostics,
    IncidenceSet,
    Laplacian,
    PseudoGraph,
    incidence_set,
    laplacian,
    path_graph,
    pseudo_graph,
    validate,
    weighted_adjacency,
    weighted_out_degree,
    weights,
)
from .guidance import (
    EngagementState,
    SalvoConfig,
    SalvoResult,
    benchmark_scenario,
    guidance_command,
    kinematics_derivatives,
    simulate_salvo,
    tgo_consensus_residual,
    time_to_go,
)
from .robustness import (
    Crossover,
    EdgeAgreementSystem,
    MarginReport,
    RationalTransferFunction,
    SweepRow,
    SweepTable,
    closed_form_leading_margin,
    critical_perturbation_oracle,
    edge_agreement_matrices,
    edge_transfer_function,
    gain_margin,
    margin_sweep,
    phase_crossovers,
    transfer_function,
)
from .spectral import (
    ConsensusValue,
    FeasibilityReport,
    LeftNullVector,
    NullRangeBases,
    consensus_feasible,
    consensus_value,
    is_eventually_positive,
    l_star,
    left_null_vector_direct,
    left_null_vector_path,
    left_null_vector_projection,
    null_range_bases,
)

__version__ = "0.1.0"
