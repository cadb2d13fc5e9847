"""Entanglement concentration of two atomic ensembles by heralded photon
subtraction, simulated in truncated Fock space.

The pipeline: build a two-mode squeezed state of the collective spins, let a
weak atom-light interaction copy excitations into two light modes, send the
light through lossy detectors, and condition on both detectors firing.  The
package computes the heralded state exactly on a per-mode photon-number
cutoff, measures its logarithmic negativity via a block-diagonal partial
transpose, and compares against the closed-form entanglement of the input.
"""
from .params import (
    InteractionStrength,
    SqueezingParams,
    kappa_from_r,
    lambda_from_r,
    squeezing_from_kappa,
)
from .fock import LogBinomialTable, amplitude_matrix, bs_amplitude, log_binomial, mode_norm_sq
from .states import (
    ConditionalAtomicState,
    JointAmplitudeTable,
    TMSSVector,
    apply_effective_beamsplitter,
    build_tmss,
    condition_on_clicks_ideal,
    success_probability_ideal,
    tmss_density_matrix,
)
from .losses import (
    DetectorModel,
    condition_on_clicks_lossy,
    loss_transform_coeff,
    success_probability_lossy,
)
from .eigen import IntegrityError, symmetric_eigensystem, symmetric_eigenvalues
from .negativity import (
    EntanglementReport,
    PTBlockSet,
    negativity,
    partial_transpose_blocks,
    tmss_negativity_closed,
)
from .oracle import (
    DenseMultiModeState,
    oracle_conditional_state,
    oracle_pre_detection_matrix,
    oracle_success_probability,
)
from .sweep import (
    CrossoverResult,
    SweepRow,
    SweepSpec,
    evaluate_point,
    find_crossover,
    log_negativity_pipeline,
    run_sweep,
    write_rows,
)

__version__ = "0.1.0"

__all__ = [
    "InteractionStrength",
    "SqueezingParams",
    "kappa_from_r",
    "lambda_from_r",
    "squeezing_from_kappa",
    "LogBinomialTable",
    "amplitude_matrix",
    "bs_amplitude",
    "log_binomial",
    "mode_norm_sq",
    "ConditionalAtomicState",
    "JointAmplitudeTable",
    "TMSSVector",
    "apply_effective_beamsplitter",
    "build_tmss",
    "condition_on_clicks_ideal",
    "success_probability_ideal",
    "tmss_density_matrix",
    "DetectorModel",
    "condition_on_clicks_lossy",
    "loss_transform_coeff",
    "success_probability_lossy",
    "IntegrityError",
    "symmetric_eigensystem",
    "symmetric_eigenvalues",
    "EntanglementReport",
    "PTBlockSet",
    "negativity",
    "partial_transpose_blocks",
    "tmss_negativity_closed",
    "DenseMultiModeState",
    "oracle_conditional_state",
    "oracle_pre_detection_matrix",
    "oracle_success_probability",
    "CrossoverResult",
    "SweepRow",
    "SweepSpec",
    "evaluate_point",
    "find_crossover",
    "log_negativity_pipeline",
    "run_sweep",
    "write_rows",
    "__version__",
]
