"""Dense coding over correlated dephasing environments.

A numpy toolkit for the noisy superdense-coding protocol: two-qubit state
algebra, correlated Gaussian dephasing stages, Bell-measurement statistics,
closed-form capacities and mutual information, counting-statistics error
bars, least-squares parameter fits and linear-inversion tomography.
"""

__version__ = "0.1.0"

from .config import ConfigError, RunConfig, default_config, parse_config
from .environment import (
    DephasingTimes,
    JointSpectrum,
    StructuralError,
    capacity_from_non_markovianity,
    decoherence_function,
    dephase_encoded_state,
    evolve_post_encoding,
    evolve_pre_encoding,
    joint_dephasing_factor,
    non_markovianity,
)
from .experiment import (
    CountTable,
    FitResult,
    SweepRow,
    estimate_mi_with_errors,
    expected_tomography_counts,
    fit_k_s,
    fit_result_to_csv,
    reconstruct_linear_inversion,
    run_sweep,
    sample_counts,
    sweep_rows_to_csv,
    tomography_counts,
)
from .protocol import (
    BELL_OUTPUT_ORDER,
    ConditionalTable,
    EncodingScheme,
    MeasurementModel,
    NoiseOrder,
    SECTOR_PARTNER,
    SchemeVariant,
    capacity_bob_noise,
    capacity_pre_encoding,
    closed_form_mi,
    closed_form_mi3,
    closed_form_mi4,
    conditional_probabilities,
    effective_visibility,
    mutual_information,
    simulate_protocol,
)
from .states import (
    BASIS_LABELS,
    BELL_FOR_PAULI,
    BellLabel,
    InvariantViolation,
    PAULI_FOR_BELL,
    Party,
    PauliLabel,
    apply_pauli,
    bell_state,
    binary_entropy,
    concurrence,
    dense_coding_capacity,
    density_matrix_from_text,
    density_matrix_to_text,
    fidelity,
    partial_trace,
    validate_density_matrix,
    von_neumann_entropy,
)

__all__ = [
    "BASIS_LABELS",
    "BELL_FOR_PAULI",
    "BELL_OUTPUT_ORDER",
    "BellLabel",
    "ConditionalTable",
    "ConfigError",
    "CountTable",
    "DephasingTimes",
    "EncodingScheme",
    "FitResult",
    "InvariantViolation",
    "JointSpectrum",
    "MeasurementModel",
    "NoiseOrder",
    "PAULI_FOR_BELL",
    "Party",
    "PauliLabel",
    "RunConfig",
    "SECTOR_PARTNER",
    "SchemeVariant",
    "StructuralError",
    "SweepRow",
    "apply_pauli",
    "bell_state",
    "binary_entropy",
    "capacity_bob_noise",
    "capacity_from_non_markovianity",
    "capacity_pre_encoding",
    "closed_form_mi",
    "closed_form_mi3",
    "closed_form_mi4",
    "concurrence",
    "conditional_probabilities",
    "decoherence_function",
    "default_config",
    "dense_coding_capacity",
    "density_matrix_from_text",
    "density_matrix_to_text",
    "dephase_encoded_state",
    "effective_visibility",
    "estimate_mi_with_errors",
    "evolve_post_encoding",
    "evolve_pre_encoding",
    "expected_tomography_counts",
    "fidelity",
    "fit_k_s",
    "fit_result_to_csv",
    "joint_dephasing_factor",
    "mutual_information",
    "non_markovianity",
    "parse_config",
    "partial_trace",
    "reconstruct_linear_inversion",
    "run_sweep",
    "sample_counts",
    "simulate_protocol",
    "sweep_rows_to_csv",
    "tomography_counts",
    "validate_density_matrix",
    "von_neumann_entropy",
]
