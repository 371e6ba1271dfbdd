"""End-to-end orchestration: frame volume -> salience -> distribution -> plan."""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .kernels import ConvKernelBank, random_bank
from .motion import (
    FrameVolume,
    MotionDistribution,
    SalienceVector,
    feature_diff_salience,
    image_diff_salience,
    normalize_salience,
    smooth_distribution,
)
from .sampling import (
    CumulativeCurve,
    SamplePlan,
    SamplerConfig,
    build_curve,
    mg_sample,
    sample_from_distribution,
)

REPRESENTATIONS = ("image", "feature")


def compute_salience(
    volume: FrameVolume,
    representation: str = "image",
    bank: ConvKernelBank | None = None,
) -> SalienceVector:
    """Image- or feature-level salience; a seed-0 Gaussian bank is the feature default."""
    if representation == "image":
        return image_diff_salience(volume)
    if representation != "feature":
        raise ConfigError(
            f"unknown representation {representation!r}, expected one of {REPRESENTATIONS}"
        )
    if bank is None:
        bank = random_bank(volume.channels)
    return feature_diff_salience(volume, bank)


def sample_video(
    volume: FrameVolume,
    cfg: SamplerConfig,
    representation: str = "image",
    bank: ConvKernelBank | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[SamplePlan, CumulativeCurve, MotionDistribution]:
    """Run the full sampling pipeline on one video.

    Returns the plan together with the smoothed distribution and its curve so
    callers can export or inspect them without recomputation.
    """
    salience = compute_salience(volume, representation, bank)
    m = smooth_distribution(normalize_salience(salience), cfg.mu)
    curve = build_curve(m)
    if cfg.strategy == "mg":
        plan = mg_sample(curve, cfg, rng)
    else:
        plan = sample_from_distribution(m, cfg, rng)
    return plan, curve, m
