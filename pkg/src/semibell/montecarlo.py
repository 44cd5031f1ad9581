"""Stochastic validation of the click law: sample Poisson photocounts and
threshold at >= 1 count, reproducing P = 1 - exp(-mu) for nonfluctuating fields.

Randomness is split into per-(channel, batch) sub-streams seeded from the
master seed, so estimates are bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .fields import (
    Detector,
    FieldState,
    MeasurementSettings,
    joint_intensity,
    polarization_marginal_intensity,
    spatial_marginal_intensity,
)

CHANNELS = ("p_xu", "p_xv", "p_yu", "p_yv", "p_y", "p_u")


@dataclass(frozen=True)
class McConfig:
    trials: int
    master_seed: int
    batch: int = 65536

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if not 1 <= self.batch <= self.trials:
            raise ValueError(f"batch must be in [1, trials], got {self.batch}")


@dataclass(frozen=True)
class McEstimate:
    p_hat: float
    stderr: float
    trials: int

    def z_score(self, p_true: float) -> float:
        """Standardized deviation from a reference probability.

        Falls back to the analytic binomial standard error when the empirical
        one is zero (all-zero or all-one samples)."""
        denom = self.stderr
        if denom == 0.0:
            denom = math.sqrt(p_true * (1.0 - p_true) / self.trials)
        if denom == 0.0:
            return 0.0 if self.p_hat == p_true else math.inf
        return (self.p_hat - p_true) / denom


def _batch_sizes(cfg: McConfig) -> list[int]:
    full, rest = divmod(cfg.trials, cfg.batch)
    return [cfg.batch] * full + ([rest] if rest else [])


def _batch_rng(master_seed: int, channel_id: int, batch_index: int) -> np.random.Generator:
    # fixed deterministic mixing of (seed, channel, batch) into a sub-stream
    return np.random.default_rng(
        np.random.SeedSequence([master_seed, channel_id, batch_index])
    )


def _count_clicks(
    mu: float,
    cfg: McConfig,
    channel_id: int,
    threads: int,
    sampler: str,
) -> int:
    sizes = _batch_sizes(cfg)

    def run_batch(item: tuple[int, int]) -> int:
        index, size = item
        rng = _batch_rng(cfg.master_seed, channel_id, index)
        if sampler == "poisson":
            return int(np.count_nonzero(rng.poisson(mu, size)))
        if sampler == "bernoulli":
            return int(np.count_nonzero(rng.random(size) < -math.expm1(-mu)))
        raise ValueError(f"unknown sampler {sampler!r}")

    items = list(enumerate(sizes))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            counts = list(pool.map(run_batch, items))
    else:
        counts = [run_batch(item) for item in items]
    return sum(counts)


def simulate_click_probability(
    intensity: float,
    detector: Detector,
    cfg: McConfig,
    channel_id: int = 0,
    threads: int = 1,
    sampler: str = "poisson",
) -> McEstimate:
    """Estimate P(click) by sampling photocounts with mean gain*intensity.

    sampler="poisson" thresholds Poisson counts at >= 1; sampler="bernoulli"
    draws the click event directly from the analytic probability, so the two
    can be compared to test the click law itself.
    """
    if intensity < 0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    mu = detector.gain * intensity
    clicks = _count_clicks(mu, cfg, channel_id, threads, sampler)
    p_hat = clicks / cfg.trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / cfg.trials)
    return McEstimate(p_hat=p_hat, stderr=stderr, trials=cfg.trials)


def simulate_probability_set(
    state: FieldState,
    settings: MeasurementSettings,
    detector: Detector,
    cfg: McConfig,
    threads: int = 1,
    sampler: str = "poisson",
) -> dict[str, McEstimate]:
    """Monte Carlo estimates of the six probabilities, one independent
    sub-stream family per channel."""
    intensities = {
        "p_xu": joint_intensity(state, settings.sx, settings.pu),
        "p_xv": joint_intensity(state, settings.sx, settings.pv),
        "p_yu": joint_intensity(state, settings.sy, settings.pu),
        "p_yv": joint_intensity(state, settings.sy, settings.pv),
        "p_y": spatial_marginal_intensity(state, settings.sy),
        "p_u": polarization_marginal_intensity(state, settings.pu),
    }
    return {
        name: simulate_click_probability(
            intensities[name], detector, cfg,
            channel_id=CHANNELS.index(name), threads=threads, sampler=sampler,
        )
        for name in CHANNELS
    }
