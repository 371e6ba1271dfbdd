"""Per-frame motion salience from temporal differences.

A video is a T x H x W x C tensor. The motion signal of frame t is the
summed absolute difference against frame t-1 (image level), or the summed
per-pixel euclidean norm of the difference between shallow convolution
features (feature level). Salience is then l1-normalized into a probability
distribution over frames and optionally power-smoothed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, StructuralError
from .kernels import ConvKernelBank, conv2d_apply

DISTRIBUTION_SUM_TOL = 1e-9


def _frozen_array(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FrameVolume:
    """Decoded video frames, shape (T, H, W, C), dtype uint8 or float32.

    The array is adopted without copying and marked read-only; videos can be
    large and the type guarantees immutability instead.
    """

    frames: np.ndarray

    def __post_init__(self):
        f = self.frames
        if not isinstance(f, np.ndarray) or f.ndim != 4:
            raise StructuralError(
                f"frame volume must be a 4-d (T, H, W, C) array, got "
                f"{getattr(f, 'shape', None)}"
            )
        if f.dtype not in (np.uint8, np.float32):
            raise StructuralError(f"frame dtype must be uint8 or float32, got {f.dtype}")
        t, h, w, c = f.shape
        if t < 1 or h < 1 or w < 1:
            raise StructuralError(f"frame volume dimensions must be >= 1, got {f.shape}")
        if c not in (1, 3):
            raise StructuralError(f"channel count must be 1 or 3, got {c}")
        object.__setattr__(self, "frames", _frozen_array(np.ascontiguousarray(f)))

    @property
    def t_count(self) -> int:
        return self.frames.shape[0]

    @property
    def height(self) -> int:
        return self.frames.shape[1]

    @property
    def width(self) -> int:
        return self.frames.shape[2]

    @property
    def channels(self) -> int:
        return self.frames.shape[3]

    @classmethod
    def from_array(cls, a: np.ndarray) -> "FrameVolume":
        """Wrap an array, promoting (T, H, W) grayscale to (T, H, W, 1)."""
        a = np.asarray(a)
        if a.ndim == 3:
            a = a[..., np.newaxis]
        return cls(a)


@dataclass(frozen=True)
class SalienceVector:
    """Raw per-frame motion magnitude; values[0] is 0 by definition."""

    values: np.ndarray
    representation: str  # "image" or "feature"

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64)  # own copy, frozen below
        if v.ndim != 1 or v.size < 1:
            raise StructuralError("salience must be a non-empty 1-d vector")
        if v[0] != 0.0:
            raise StructuralError(f"salience[0] must be 0, got {v[0]}")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise StructuralError("salience entries must be finite and >= 0")
        if self.representation not in ("image", "feature"):
            raise StructuralError(f"unknown representation tag {self.representation!r}")
        object.__setattr__(self, "values", _frozen_array(v))

    @property
    def t_count(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class MotionDistribution:
    """l1-normalized per-frame motion probabilities.

    ``mu`` is the smoothing exponent relative to the raw normalized
    distribution (1.0 means unsmoothed).  ``degenerate_uniform`` marks that
    the all-zero-salience fallback produced a uniform distribution.
    """

    probs: np.ndarray
    mu: float = 1.0
    degenerate_uniform: bool = False

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.ndim != 1 or p.size < 1:
            raise StructuralError("distribution must be a non-empty 1-d vector")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise StructuralError("probabilities must be finite and >= 0")
        total = float(p.sum())
        if abs(total - 1.0) > DISTRIBUTION_SUM_TOL:
            raise StructuralError(f"probabilities must sum to 1 within 1e-9, got {total!r}")
        object.__setattr__(self, "probs", _frozen_array(p))

    @property
    def t_count(self) -> int:
        return self.probs.size


def image_diff_salience(video: FrameVolume) -> SalienceVector:
    """Summed absolute pixel difference between consecutive frames.

    Channels count as extra spatial extent: for C=3 the absolute differences
    of all three channels are summed.  Differences are taken in a widened
    signed type (uint8 cannot wrap) and accumulated in float64.  Frames are
    processed pairwise, so scratch memory stays at one frame regardless of T.
    """
    frames = video.frames
    widened = np.int16 if frames.dtype == np.uint8 else np.float64
    out = np.zeros(video.t_count, dtype=np.float64)
    prev = frames[0].astype(widened)
    for t in range(1, video.t_count):
        cur = frames[t].astype(widened)
        diff = cur - prev
        np.abs(diff, out=diff)
        out[t] = diff.sum(dtype=np.float64)
        prev = cur
    return SalienceVector(out, representation="image")


def feature_diff_salience(video: FrameVolume, bank: ConvKernelBank) -> SalienceVector:
    """Motion magnitude from shallow convolution features.

    Each frame is mapped to 8 feature maps; consecutive maps are subtracted,
    the 8 channels collapse per pixel to sqrt(sum of squares), and the result
    is summed over the spatial domain.  values[0] is 0.
    """
    if bank.channels != video.channels:
        raise ConfigError(
            f"kernel bank expects {bank.channels} channel(s), video has {video.channels}"
        )
    out = np.zeros(video.t_count, dtype=np.float64)
    prev = conv2d_apply(video.frames[0], bank)
    for t in range(1, video.t_count):
        cur = conv2d_apply(video.frames[t], bank)
        diff = cur - prev
        out[t] = np.sqrt(np.square(diff).sum(axis=0)).sum()
        prev = cur
    return SalienceVector(out, representation="feature")


def normalize_salience(s: SalienceVector) -> MotionDistribution:
    """l1-normalize salience into per-frame probabilities.

    A video with zero total salience (static content) has no defined
    normalization; it falls back to the uniform distribution and sets
    ``degenerate_uniform``.
    """
    total = float(s.values.sum())
    if total > 0.0:
        return MotionDistribution(s.values / total, mu=1.0)
    t = s.t_count
    return MotionDistribution(np.full(t, 1.0 / t), mu=1.0, degenerate_uniform=True)


def smooth_distribution(m: MotionDistribution, mu: float) -> MotionDistribution:
    """Power-smooth a distribution: probs^mu, renormalized.

    mu < 1 flattens toward uniform, mu > 1 sharpens, mu = 1 is the identity.
    mu = 0 short-circuits to the exact uniform distribution (0**0 is never
    evaluated).  Zero entries stay zero for mu > 0.
    """
    if not np.isfinite(mu) or mu < 0:
        raise ConfigError(f"smoothing exponent must be >= 0, got {mu!r}")
    t = m.t_count
    if mu == 0.0:
        return MotionDistribution(
            np.full(t, 1.0 / t), mu=0.0, degenerate_uniform=m.degenerate_uniform
        )
    if mu == 1.0:
        return MotionDistribution(m.probs, mu=m.mu, degenerate_uniform=m.degenerate_uniform)
    powered = np.power(m.probs, mu)
    total = float(powered.sum())
    if total <= 0.0:
        # Unreachable for exact arithmetic on a valid distribution, but tiny
        # probabilities can underflow for large mu.
        return MotionDistribution(np.full(t, 1.0 / t), mu=m.mu * mu, degenerate_uniform=True)
    return MotionDistribution(
        powered / total, mu=m.mu * mu, degenerate_uniform=m.degenerate_uniform
    )


def downsample_volume(video: FrameVolume, factor: int) -> FrameVolume:
    """Nearest-neighbor spatial decimation by an integer factor (>= 1)."""
    if int(factor) != factor or factor < 1:
        raise ConfigError(f"downsample factor must be an integer >= 1, got {factor!r}")
    factor = int(factor)
    if factor == 1:
        return video
    return FrameVolume(np.ascontiguousarray(video.frames[:, ::factor, ::factor, :]))
