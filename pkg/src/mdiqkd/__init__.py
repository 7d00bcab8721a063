"""Security analysis of multi-party device-independent QKD under imperfect measurements.

The package quantifies how measurement accuracy limits a multi-party
key-distribution protocol certified by a genuine-multipartite-nonlocality
test: exact state simulation (`qstate`), the test itself (`svetlichny`),
the accuracy model (`noise`), the eavesdropper's mixture attack (`attack`),
key-rate bounds (`keyrate`), accuracy/visibility thresholds (`thresholds`),
and a round-level Monte Carlo validation of all of it (`mcsim`).
"""

__version__ = "0.1.0"

from .attack import (
    AttackDecomposition,
    local_weight_3party,
    local_weight_nparty,
    local_weight_werner,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    DomainError,
    EnumerationCapError,
    IncompleteModelError,
    InsufficientDataError,
)
from .keyrate import (
    KeyRateReport,
    binary_entropy,
    dw_rate,
    dw_rate_werner,
    h_a_given_e,
    h_a_given_rest,
)
from .mcsim import (
    Estimate,
    SimConfig,
    SimReport,
    SimStats,
    estimate_key_consistency,
    estimate_si,
    run_protocol,
    simulate,
)
from .noise import (
    Accuracy,
    DetectorParams,
    accuracy_from_detector,
    degrade_success_prob,
    degraded_si_value,
    flip_channel,
)
from .qstate import (
    DensityMatrix,
    MeasurementSetting,
    StateVector,
    correlator,
    ghz_state,
    joint_outcome_probs,
    werner_state,
)
from .svetlichny import (
    CorrelationModel,
    SvetlichnyValue,
    deterministic_bound,
    max_violation_settings,
    probability_form_from_settings,
    si_correlator_value,
    si_probability_value,
)
from .thresholds import (
    ThresholdReport,
    critical_accuracy,
    threshold_accuracy,
    thresholds_table,
    werner_boundary,
)

__all__ = [
    "__version__",
    "Accuracy",
    "AttackDecomposition",
    "ConvergenceError",
    "CorrelationModel",
    "DensityMatrix",
    "DetectorParams",
    "DimensionError",
    "DomainError",
    "EnumerationCapError",
    "Estimate",
    "IncompleteModelError",
    "InsufficientDataError",
    "KeyRateReport",
    "MeasurementSetting",
    "SimConfig",
    "SimReport",
    "SimStats",
    "StateVector",
    "SvetlichnyValue",
    "ThresholdReport",
    "accuracy_from_detector",
    "binary_entropy",
    "correlator",
    "critical_accuracy",
    "degrade_success_prob",
    "degraded_si_value",
    "deterministic_bound",
    "dw_rate",
    "dw_rate_werner",
    "estimate_key_consistency",
    "estimate_si",
    "flip_channel",
    "ghz_state",
    "h_a_given_e",
    "h_a_given_rest",
    "joint_outcome_probs",
    "local_weight_3party",
    "local_weight_nparty",
    "local_weight_werner",
    "max_violation_settings",
    "probability_form_from_settings",
    "run_protocol",
    "si_correlator_value",
    "si_probability_value",
    "simulate",
    "threshold_accuracy",
    "thresholds_table",
    "werner_boundary",
    "werner_state",
]
