"""Kappa sweeps behind the figure curves, violation-onset root finding, and
derivative-free search over measurement settings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import (
    Detector,
    EntangledState,
    FieldState,
    MeasurementSettings,
    amplitude_scale_sq,
)
from .inequalities import (
    DEFAULT_TOLERANCE,
    ch_report,
    nonlinear_exponent,
)

ROOT_TOLERANCE = 1e-10
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0

OBJECTIVE_KINDS = ("max-c", "min-nl-margin")


@dataclass(frozen=True)
class SweepSpec:
    kappa_min: float
    kappa_max: float
    points: int
    scale: str = "linear"

    def __post_init__(self):
        if self.kappa_min < 0 or self.kappa_max < self.kappa_min:
            raise ValueError(
                f"need 0 <= kappa_min <= kappa_max, got [{self.kappa_min}, {self.kappa_max}]"
            )
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.scale not in ("linear", "logarithmic"):
            raise ValueError(f"scale must be linear or logarithmic, got {self.scale!r}")
        if self.scale == "logarithmic" and self.kappa_min <= 0:
            raise ValueError("logarithmic scale requires kappa_min > 0")

    def grid(self) -> np.ndarray:
        if self.scale == "logarithmic":
            return np.geomspace(self.kappa_min, self.kappa_max, self.points)
        return np.linspace(self.kappa_min, self.kappa_max, self.points)


@dataclass(frozen=True)
class SweepRow:
    kappa: float
    c_value: float
    cnl_value: float
    cnl_lower: float
    violated_ch: bool
    violated_nl: bool


@dataclass(frozen=True)
class SearchResult:
    settings: MeasurementSettings
    objective: float
    objective_kind: str
    evaluations: int


def _detector_for_kappa(state: FieldState, kappa: float) -> Detector:
    eps2 = amplitude_scale_sq(state)
    if eps2 == 0.0:
        if kappa != 0.0:
            raise ValueError("cannot reach kappa > 0 with a zero-amplitude state")
        return Detector(0.0)
    return Detector(kappa / eps2)


def evaluate_point(
    state: FieldState,
    settings: MeasurementSettings,
    kappa: float,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SweepRow:
    """Single-point evaluation at a given kappa (gain = kappa / eps^2)."""
    det = _detector_for_kappa(state, kappa)
    ch = ch_report(state, settings, det, tolerance)
    exponent = nonlinear_exponent(state, settings, det)
    cnl = math.exp(exponent)
    violated_nl = cnl > 1.0 + tolerance or exponent < -kappa + math.log1p(-tolerance)
    return SweepRow(
        kappa=kappa,
        c_value=ch.c_value,
        cnl_value=cnl,
        cnl_lower=math.exp(-kappa),
        violated_ch=ch.violated_upper or ch.violated_lower,
        violated_nl=violated_nl,
    )


def kappa_sweep(
    state: FieldState,
    settings: MeasurementSettings,
    spec: SweepSpec,
    tolerance: float = DEFAULT_TOLERANCE,
) -> list[SweepRow]:
    return [evaluate_point(state, settings, float(k), tolerance) for k in spec.grid()]


def find_sign_change(
    state: FieldState,
    settings: MeasurementSettings,
    kappa_lo: float,
    kappa_hi: float,
) -> float:
    """Bisect C(kappa) to the zero crossing inside the bracket."""
    if not kappa_lo < kappa_hi:
        raise ValueError(f"degenerate bracket [{kappa_lo}, {kappa_hi}]")

    def c_at(k: float) -> float:
        return evaluate_point(state, settings, k).c_value

    f_lo, f_hi = c_at(kappa_lo), c_at(kappa_hi)
    if f_lo == 0.0:
        return kappa_lo
    if f_hi == 0.0:
        return kappa_hi
    if math.copysign(1.0, f_lo) == math.copysign(1.0, f_hi):
        raise ValueError(
            f"no sign change of C in [{kappa_lo}, {kappa_hi}]: C = {f_lo}, {f_hi}"
        )
    lo, hi = kappa_lo, kappa_hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        f_mid = c_at(mid)
        if abs(f_mid) < ROOT_TOLERANCE and hi - lo < ROOT_TOLERANCE:
            return mid
        if math.copysign(1.0, f_mid) == math.copysign(1.0, f_lo):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _six_exponents(state, gain, x, y, u, v):
    # broadcastable exponents gain*I for the six channels
    if isinstance(state, EntangledState):
        def joint(s, p):
            amp = np.cos(s) * np.cos(p) * state.a1 + np.sin(s) * np.sin(p) * state.am1
            return gain * amp * amp

        e_y = gain * ((np.cos(y) * state.a1) ** 2 + (np.sin(y) * state.am1) ** 2)
        e_u = gain * ((np.cos(u) * state.a1) ** 2 + (np.sin(u) * state.am1) ** 2)
    else:
        a0, b0, eps2 = state.alpha0, state.beta0, state.amp ** 2

        def joint(s, p):
            return gain * eps2 * np.cos(s - a0) ** 2 * np.cos(p - b0) ** 2

        e_y = gain * eps2 * np.cos(y - a0) ** 2
        e_u = gain * eps2 * np.cos(u - b0) ** 2
    return joint(x, u), joint(x, v), joint(y, u), joint(y, v), e_y, e_u


def _objective_array(state, gain, kappa, kind, x, y, u, v):
    e_xu, e_xv, e_yu, e_yv, e_y, e_u = _six_exponents(state, gain, x, y, u, v)
    if kind == "max-c":
        # C, to be maximized
        return (
            -np.expm1(-e_xu) + np.expm1(-e_xv) - np.expm1(-e_yu)
            - np.expm1(-e_yv) + np.expm1(-e_y) + np.expm1(-e_u)
        )
    if kind == "min-nl-margin":
        # -(C_nl - exp(-kappa)), to be maximized
        exponent = e_xu + e_yu + e_yv - e_xv - e_y - e_u
        return -(np.exp(exponent) - math.exp(-kappa))
    raise ValueError(f"unknown objective kind {kind!r}")


def search_settings(
    state: FieldState,
    kappa: float,
    objective_kind: str = "max-c",
    grid_points: int = 24,
    refine_tol: float = 1e-9,
    fix_u: float | None = None,
) -> SearchResult:
    """Coarse grid over (x,y,u,v) in [0,pi)^4 then coordinate-wise
    golden-section refinement. Deterministic; ties on the grid go to the
    lowest lexicographic angle tuple. fix_u pins the u axis to a single value
    (useful with the global-rotation symmetry of symmetric entangled states)."""
    if kappa <= 0:
        raise ValueError(f"kappa must be > 0, got {kappa}")
    if objective_kind not in OBJECTIVE_KINDS:
        raise ValueError(f"objective_kind must be one of {OBJECTIVE_KINDS}")
    gain = _detector_for_kappa(state, kappa).gain

    axis = np.linspace(0.0, math.pi, grid_points, endpoint=False)
    u_axis = axis if fix_u is None else np.array([fix_u])
    grid = _objective_array(
        state, gain, kappa, objective_kind,
        axis[:, None, None, None], axis[None, :, None, None],
        u_axis[None, None, :, None], axis[None, None, None, :],
    )
    evaluations = grid.size
    flat_best = int(np.argmax(grid))  # first occurrence = lexicographic winner
    ix, iy, iu, iv = np.unravel_index(flat_best, grid.shape)
    angles = [float(axis[ix]), float(axis[iy]), float(u_axis[iu]), float(axis[iv])]
    grid_best = float(grid[ix, iy, iu, iv])

    def f(a: list[float]) -> float:
        return float(_objective_array(state, gain, kappa, objective_kind, *a))

    # coordinate-wise golden-section ascent
    step = float(axis[1] - axis[0])
    free = [0, 1, 3] if fix_u is not None else [0, 1, 2, 3]
    for _ in range(200):
        moved = 0.0
        for ci in free:
            lo = angles[ci] - step
            hi = angles[ci] + step
            a, b = lo, hi
            c = b - GOLDEN * (b - a)
            d = a + GOLDEN * (b - a)
            trial = list(angles)

            def fc(val: float) -> float:
                trial[ci] = val
                return f(trial)

            fcv, fdv = fc(c), fc(d)
            evaluations += 2
            while b - a > refine_tol:
                if fcv > fdv:
                    b, d, fdv = d, c, fcv
                    c = b - GOLDEN * (b - a)
                    fcv = fc(c)
                else:
                    a, c, fcv = c, d, fdv
                    d = a + GOLDEN * (b - a)
                    fdv = fc(d)
                evaluations += 1
            new = 0.5 * (a + b)
            if f([*angles[:ci], new, *angles[ci + 1:]]) > f(angles):
                moved = max(moved, abs(new - angles[ci]))
                angles[ci] = new
            evaluations += 2
        if moved < refine_tol:
            break
    best = f(angles)  # >= grid_best: moves are only accepted on improvement
    assert best >= grid_best - 1e-15

    objective = best if objective_kind == "max-c" else -best
    return SearchResult(
        settings=MeasurementSettings.from_angles(*angles),
        objective=objective,
        objective_kind=objective_kind,
        evaluations=evaluations,
    )
