"""Continuous-time quantum walks on the hypercube under two dephasing models.

The walker hops between corners of the d-dimensional hypercube and is
watched by an environment in one of two ways: per vertex (every
off-diagonal density-matrix element decays at a common rate) or per
coordinate bit (elements decay in proportion to the Hamming distance of
their indices).  The package provides exact and perturbative
closed-form hitting probabilities, numerical Lindblad propagation, a
discrete measured process, a spectral check of the perturbative decay
rates, and the qubit-network models the two walks reduce from.
"""

__version__ = "0.1.0"

from .closed_form import (
    PERTURBATIVE_VALIDITY_RATIO,
    DecayRateTable,
    SeriesTerm,
    build_decay_table,
    kendon_tregenna_probability,
    perturbative_series,
    perturbative_valid,
    subspace_asymptote,
    subspace_hitting,
    unitary_hitting,
    vertex_decay_rate,
    vertex_hitting_lower_bound,
    vertex_hitting_perturbative,
)
from .core import (
    MAX_DIMENSION,
    Diagnostics,
    IntegratorError,
    PositivityError,
    WalkParams,
    build_hamiltonian,
    diagnose,
    hamming_distance,
    hamming_matrix,
    hitting_probability,
    maximally_mixed,
    validate_density_matrix,
    vertex_state,
    von_neumann_entropy,
)
from .dynamics import (
    IntegratorConfig,
    Method,
    ModelKind,
    ProjectorFamily,
    SpectralReport,
    SubspaceSpectrum,
    Trajectory,
    discrete_measured_step,
    evolve,
    lindblad_rhs,
    subspace_projectors,
    verify_perturbative_spectrum,
    vertex_projectors,
    walk_unitary,
)
from .network import (
    CouplingMatrix,
    ExcitationState,
    NetworkTrajectory,
    NoiseKind,
    NoiseParams,
    evolve_collective,
    evolve_independent,
    hypercube_coupling,
    load_coupling_csv,
    rescale_excited_block,
    single_excitation,
)

__all__ = [
    "__version__",
    "MAX_DIMENSION",
    "PERTURBATIVE_VALIDITY_RATIO",
    "CouplingMatrix",
    "DecayRateTable",
    "Diagnostics",
    "ExcitationState",
    "IntegratorConfig",
    "IntegratorError",
    "Method",
    "ModelKind",
    "NetworkTrajectory",
    "NoiseKind",
    "NoiseParams",
    "PositivityError",
    "ProjectorFamily",
    "SeriesTerm",
    "SpectralReport",
    "SubspaceSpectrum",
    "Trajectory",
    "WalkParams",
    "build_decay_table",
    "build_hamiltonian",
    "diagnose",
    "discrete_measured_step",
    "evolve",
    "evolve_collective",
    "evolve_independent",
    "hamming_distance",
    "hamming_matrix",
    "hitting_probability",
    "hypercube_coupling",
    "kendon_tregenna_probability",
    "lindblad_rhs",
    "load_coupling_csv",
    "maximally_mixed",
    "perturbative_series",
    "perturbative_valid",
    "rescale_excited_block",
    "single_excitation",
    "subspace_asymptote",
    "subspace_hitting",
    "subspace_projectors",
    "unitary_hitting",
    "validate_density_matrix",
    "verify_perturbative_spectrum",
    "vertex_decay_rate",
    "vertex_hitting_lower_bound",
    "vertex_hitting_perturbative",
    "vertex_projectors",
    "vertex_state",
    "von_neumann_entropy",
    "walk_unitary",
]
