"""Classical two-beam field states, analyzers, and the click-probability law.

All analyzers and field directions are real unit 2-vectors parametrized by an
angle. A photoelectric detector with gain g = eta*T converts an intensity I
into a click probability P = 1 - exp(-g*I).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

_MIN_VECTOR_NORM = 1e-9


@dataclass(frozen=True)
class Analyzer:
    """A measurement direction: the unit vector (cos(angle), sin(angle))."""

    angle: float

    def __post_init__(self):
        if not math.isfinite(self.angle):
            raise ValueError(f"analyzer angle must be finite, got {self.angle}")

    @classmethod
    def from_vector(cls, vx: float, vy: float) -> "Analyzer":
        norm = math.hypot(vx, vy)
        if norm < _MIN_VECTOR_NORM:
            raise ValueError(f"analyzer vector too close to zero (norm {norm})")
        return cls(math.atan2(vy, vx))

    @property
    def unit(self) -> tuple[float, float]:
        return (math.cos(self.angle), math.sin(self.angle))


@dataclass(frozen=True)
class EntangledState:
    """Two-beam field with orthogonal polarizations: a1*|1>|up> + am1*|-1>|right>.

    Maximally entangled when a1 == am1.
    """

    a1: float
    am1: float

    def __post_init__(self):
        if not (math.isfinite(self.a1) and math.isfinite(self.am1)):
            raise ValueError("entangled amplitudes must be finite")


@dataclass(frozen=True)
class SeparableState:
    """Factorized field amp*|s0>|p0>: same polarization at both apertures."""

    amp: float
    alpha0: float
    beta0: float

    def __post_init__(self):
        for name in ("amp", "alpha0", "beta0"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"separable state field {name} must be finite")


FieldState = Union[EntangledState, SeparableState]


@dataclass(frozen=True)
class Detector:
    """Photoelectric detector; gain is the product eta*T (inverse intensity)."""

    gain: float

    def __post_init__(self):
        if not (math.isfinite(self.gain) and self.gain >= 0.0):
            raise ValueError(f"detector gain must be finite and >= 0, got {self.gain}")


@dataclass(frozen=True)
class MeasurementSettings:
    """The four analyzer directions of a Bell test: spatial x, y; polarization u, v."""

    sx: Analyzer
    sy: Analyzer
    pu: Analyzer
    pv: Analyzer

    @classmethod
    def from_angles(cls, x: float, y: float, u: float, v: float) -> "MeasurementSettings":
        return cls(Analyzer(x), Analyzer(y), Analyzer(u), Analyzer(v))

    def angles(self) -> tuple[float, float, float, float]:
        return (self.sx.angle, self.sy.angle, self.pu.angle, self.pv.angle)


@dataclass(frozen=True)
class ClickProbabilitySet:
    """The six click probabilities entering the CH and nonlinear criteria."""

    p_xu: float
    p_xv: float
    p_yu: float
    p_yv: float
    p_y: float
    p_u: float
    kappa: float

    def as_dict(self) -> dict[str, float]:
        return {
            "p_xu": self.p_xu,
            "p_xv": self.p_xv,
            "p_yu": self.p_yu,
            "p_yv": self.p_yv,
            "p_y": self.p_y,
            "p_u": self.p_u,
        }


def amplitude_scale_sq(state: FieldState) -> float:
    """Reference squared amplitude eps^2 used to report kappa = gain * eps^2.

    For entangled states with unequal amplitudes this is max(a1^2, am1^2), a
    nominal convention (no physical kappa exists in that case).
    """
    if isinstance(state, EntangledState):
        return max(state.a1 ** 2, state.am1 ** 2)
    return state.amp ** 2


def kappa_is_nominal(state: FieldState) -> bool:
    return isinstance(state, EntangledState) and state.a1 != state.am1


def joint_intensity(state: FieldState, s: Analyzer, p: Analyzer) -> float:
    """Squared field amplitude after beam splitter at s and polarizer at p."""
    ca, sa = s.unit
    cb, sb = p.unit
    if isinstance(state, EntangledState):
        amp = ca * cb * state.a1 + sa * sb * state.am1
        return amp * amp
    ds = ca * math.cos(state.alpha0) + sa * math.sin(state.alpha0)
    dp = cb * math.cos(state.beta0) + sb * math.sin(state.beta0)
    amp = state.amp * ds * dp
    return amp * amp


def spatial_marginal_intensity(state: FieldState, s: Analyzer) -> float:
    """Squared norm of the field leaving the beam splitter, no polarizer."""
    ca, sa = s.unit
    if isinstance(state, EntangledState):
        return (ca * state.a1) ** 2 + (sa * state.am1) ** 2
    ds = ca * math.cos(state.alpha0) + sa * math.sin(state.alpha0)
    return (state.amp * ds) ** 2


def polarization_marginal_intensity(state: FieldState, p: Analyzer) -> float:
    """Squared norm of the field through the polarizer alone (Malus' law)."""
    cb, sb = p.unit
    if isinstance(state, EntangledState):
        return (cb * state.a1) ** 2 + (sb * state.am1) ** 2
    dp = cb * math.cos(state.beta0) + sb * math.sin(state.beta0)
    return (state.amp * dp) ** 2


_ONE_BELOW = math.nextafter(1.0, 0.0)


def click_probability(intensity: float, detector: Detector) -> float:
    """P(click) = 1 - exp(-gain * intensity), via expm1 for small exponents.

    Always strictly below 1: deep saturation clamps to the largest double
    below 1, which is within half an ulp of the true value.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    return min(-math.expm1(-detector.gain * intensity), _ONE_BELOW)


def probability_set(
    state: FieldState, settings: MeasurementSettings, detector: Detector
) -> ClickProbabilitySet:
    """Evaluate the four joint and two marginal click probabilities."""
    return ClickProbabilitySet(
        p_xu=click_probability(joint_intensity(state, settings.sx, settings.pu), detector),
        p_xv=click_probability(joint_intensity(state, settings.sx, settings.pv), detector),
        p_yu=click_probability(joint_intensity(state, settings.sy, settings.pu), detector),
        p_yv=click_probability(joint_intensity(state, settings.sy, settings.pv), detector),
        p_y=click_probability(spatial_marginal_intensity(state, settings.sy), detector),
        p_u=click_probability(polarization_marginal_intensity(state, settings.pu), detector),
        kappa=detector.gain * amplitude_scale_sq(state),
    )


def exponent_set(
    state: FieldState, settings: MeasurementSettings, detector: Detector
) -> dict[str, float]:
    """The six exponents gain*I entering the click probabilities.

    Exact even where 1 - P underflows (large kappa); keys match
    ClickProbabilitySet fields.
    """
    g = detector.gain
    return {
        "p_xu": g * joint_intensity(state, settings.sx, settings.pu),
        "p_xv": g * joint_intensity(state, settings.sx, settings.pv),
        "p_yu": g * joint_intensity(state, settings.sy, settings.pu),
        "p_yv": g * joint_intensity(state, settings.sy, settings.pv),
        "p_y": g * spatial_marginal_intensity(state, settings.sy),
        "p_u": g * polarization_marginal_intensity(state, settings.pu),
    }
