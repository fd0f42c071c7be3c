# SPDX-License-Identifier: MIT
"""Measurement-based algorithmic cooling and SPAM-error separation."""

from cooltrace._core import (  # noqa: F401
    BlochState,
    CapacityError,
    DiagonalSpam,
    DivergenceError,
    DomainError,
    EstimationError,
    InconsistencyError,
    McEstimate,
    NoisyStepResult,
    Povm1Q,
    ProtocolResult,
    SimulatedDevice,
    SpamEstimate,
    SpamParams,
    StepRecord,
    ThermalScale,
    TrialBound,
    UnreachableBranchError,
    ancillas_for_ratio,
    bcs_fixed_point,
    bcs_iterate,
    bcs_step,
    characterize,
    compose_spam,
    delta_from_temperature,
    effective_temperature,
    improvement_lower_bound,
    improvement_ratio,
    invert_spam_for_sp,
    mbac2_failure,
    mbac2_noisy_step,
    mbac2_step,
    mbac_k_closed,
    mbac_k_noisy_bound,
    mc_mbac2_failure,
    mc_run_bcs,
    mc_run_mbac_k,
    mc_runs_to_success,
    n_upper,
    reduce_to_diagonal,
    run_bcs_exact,
    run_mbac_k_exact,
    run_sv_k,
    spam_error,
    step_success_prob,
    x_relabel_measurement,
    z_twirl_measurement,
    z_twirl_state,
)

__version__ = "0.1.0"
