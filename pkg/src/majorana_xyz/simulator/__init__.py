"""Tableau simulation, gauge-measurement schedules and lookup decoding."""

from __future__ import annotations

from .decoding import (
    DecoderTable,
    DecoderUnsupported,
    MonteCarloResult,
    NoiseModel,
    build_decoder,
    exact_failure_probability,
    failure_counts_by_weight,
    monte_carlo,
    sample_error,
    shot_error,
    syndrome_of,
    wilson_interval,
)
from .measurement import (
    GaugeSchedule,
    SyndromeRecord,
    build_gauge_schedule,
    extract_syndrome,
    prepare_code_state,
)
from .tableau import MeasurementResult, Tableau, apply_pauli, measure_pauli

__all__ = [
    "DecoderTable",
    "DecoderUnsupported",
    "GaugeSchedule",
    "MeasurementResult",
    "MonteCarloResult",
    "NoiseModel",
    "SyndromeRecord",
    "Tableau",
    "apply_pauli",
    "build_decoder",
    "build_gauge_schedule",
    "exact_failure_probability",
    "extract_syndrome",
    "failure_counts_by_weight",
    "measure_pauli",
    "monte_carlo",
    "prepare_code_state",
    "sample_error",
    "shot_error",
    "syndrome_of",
    "wilson_interval",
]
