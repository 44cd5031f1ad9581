"""Semiclassical Bell tests with classical fields and click detectors."""

from .fields import (
    Analyzer,
    ClickProbabilitySet,
    Detector,
    EntangledState,
    FieldState,
    MeasurementSettings,
    SeparableState,
    click_probability,
    joint_intensity,
    polarization_marginal_intensity,
    probability_set,
    spatial_marginal_intensity,
)
from .inequalities import (
    ChReport,
    NonlinearReport,
    ch_report,
    ch_value,
    linearized_bounds,
    linearized_ch,
    nonlinear_report,
    nonlinear_value,
)
from .montecarlo import McConfig, McEstimate, simulate_click_probability, simulate_probability_set
from .presets import SETTINGS_PRESETS, settings_preset
from .sweep import (
    SearchResult,
    SweepRow,
    SweepSpec,
    evaluate_point,
    find_sign_change,
    kappa_sweep,
    search_settings,
)

__version__ = "0.1.0"

__all__ = [
    "Analyzer",
    "ChReport",
    "ClickProbabilitySet",
    "Detector",
    "EntangledState",
    "FieldState",
    "McConfig",
    "McEstimate",
    "MeasurementSettings",
    "NonlinearReport",
    "SETTINGS_PRESETS",
    "SearchResult",
    "SeparableState",
    "SweepRow",
    "SweepSpec",
    "ch_report",
    "ch_value",
    "click_probability",
    "evaluate_point",
    "find_sign_change",
    "joint_intensity",
    "kappa_sweep",
    "linearized_bounds",
    "linearized_ch",
    "nonlinear_report",
    "nonlinear_value",
    "polarization_marginal_intensity",
    "probability_set",
    "search_settings",
    "settings_preset",
    "simulate_click_probability",
    "simulate_probability_set",
    "spatial_marginal_intensity",
]
