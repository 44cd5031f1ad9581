"""Clauser-Horne combination C, its low-intensity linearization, and the
nonlinear no-click ratio criterion with its state-dependent bounds."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .fields import (
    ClickProbabilitySet,
    Detector,
    EntangledState,
    FieldState,
    MeasurementSettings,
    amplitude_scale_sq,
    exponent_set,
    kappa_is_nominal,
    probability_set,
)

DEFAULT_TOLERANCE = 1e-12

CH_LOWER = -1.0
CH_UPPER = 0.0


@dataclass(frozen=True)
class ChReport:
    c_value: float
    lower_bound: float
    upper_bound: float
    violated_upper: bool
    violated_lower: bool
    kappa: float
    kappa_nominal: bool = False


@dataclass(frozen=True)
class NonlinearReport:
    cnl_value: float
    lower_bound: float
    upper_bound: float
    violated: bool
    kappa: float
    kappa_nominal: bool = False


def ch_value(p: ClickProbabilitySet) -> float:
    """C = P_xu - P_xv + P_yu + P_yv - P_y - P_u."""
    return p.p_xu - p.p_xv + p.p_yu + p.p_yv - p.p_y - p.p_u


def ch_report(
    state: FieldState,
    settings: MeasurementSettings,
    detector: Detector,
    tolerance: float = DEFAULT_TOLERANCE,
) -> ChReport:
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    p = probability_set(state, settings, detector)
    c = ch_value(p)
    return ChReport(
        c_value=c,
        lower_bound=CH_LOWER,
        upper_bound=CH_UPPER,
        violated_upper=c > CH_UPPER + tolerance,
        violated_lower=c < CH_LOWER - tolerance,
        kappa=p.kappa,
        kappa_nominal=kappa_is_nominal(state),
    )


def _unit_intensities(state: FieldState, settings: MeasurementSettings) -> dict[str, float]:
    # normalized intensities: exponents at gain chosen so kappa = 1
    eps2 = amplitude_scale_sq(state)
    if eps2 == 0.0:
        return {k: 0.0 for k in ("p_xu", "p_xv", "p_yu", "p_yv", "p_y", "p_u")}
    return exponent_set(state, settings, Detector(1.0 / eps2))


def linearized_ch(state: FieldState, settings: MeasurementSettings, kappa: float) -> float:
    """First-order (low-intensity) Taylor expansion of C in kappa.

    For entangled states this linearizes the same six probabilities; the
    paper-analyzed separable bounds do not apply there.
    """
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    i = _unit_intensities(state, settings)
    return kappa * (i["p_xu"] - i["p_xv"] + i["p_yu"] + i["p_yv"] - i["p_y"] - i["p_u"])


def linearized_bounds(kappa: float) -> tuple[float, float]:
    """Universal separable-state bounds (-kappa, 0) of the linearized C."""
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    return (-kappa, 0.0)


def nonlinear_value(p: ClickProbabilitySet) -> float:
    """The no-click ratio (1-P_xv)(1-P_y)(1-P_u) / (1-P_xu)(1-P_yu)(1-P_yv).

    Evaluated as a single exponential of an exponent sum, never as a ratio of
    1-P products, so near-saturated probabilities keep full accuracy.
    """
    for name in ("p_xu", "p_yu", "p_yv"):
        if getattr(p, name) >= 1.0:
            raise ValueError(f"degenerate input: denominator probability {name} = 1")
    k = {name: -math.log1p(-getattr(p, name))
         for name in ("p_xu", "p_xv", "p_yu", "p_yv", "p_y", "p_u")}
    return math.exp(k["p_xu"] + k["p_yu"] + k["p_yv"] - k["p_xv"] - k["p_y"] - k["p_u"])


def nonlinear_exponent(
    state: FieldState, settings: MeasurementSettings, detector: Detector
) -> float:
    """log of the nonlinear criterion, from exact gain*intensity exponents."""
    e = exponent_set(state, settings, detector)
    return e["p_xu"] + e["p_yu"] + e["p_yv"] - e["p_xv"] - e["p_y"] - e["p_u"]


def nonlinear_report(
    state: FieldState,
    settings: MeasurementSettings,
    detector: Detector,
    tolerance: float = DEFAULT_TOLERANCE,
) -> NonlinearReport:
    """Bound check 1 >= C_nl >= exp(-kappa), relative tolerance on the lower bound."""
    if tolerance < 0:
        raise ValueError("tolerance must be >= 0")
    kappa = detector.gain * amplitude_scale_sq(state)
    exponent = nonlinear_exponent(state, settings, detector)
    cnl = math.exp(exponent)
    lower = math.exp(-kappa)
    # compare in exponent space: cnl < lower*(1 - tol) <=> exponent < -kappa + log1p(-tol)
    violated = cnl > 1.0 + tolerance or exponent < -kappa + math.log1p(-tolerance)
    return NonlinearReport(
        cnl_value=cnl,
        lower_bound=lower,
        upper_bound=1.0,
        violated=violated,
        kappa=kappa,
        kappa_nominal=kappa_is_nominal(state),
    )
