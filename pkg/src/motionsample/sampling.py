"""Frame-index selection from a cumulative motion curve.

The curve is the prefix sum of the per-frame motion distribution, treated as
piecewise-linear between integer anchors.  Motion-guided sampling splits the
y-axis into N even intervals, draws one value per interval, and inverts the
curve; dense motion regions therefore receive proportionally more picks.
Baselines: segment (one pick per equal temporal segment), fixed stride,
top-magnitude, and a windowed clip variant of motion-guided sampling.

All indices in sample plans are zero-based.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ConfigError, StructuralError
from .motion import MotionDistribution

CURVE_END_TOL = 1e-9

STRATEGIES = ("mg", "segment", "stride", "topk", "mg-clip")


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide generator (PCG64) for reproducible draws."""
    return np.random.default_rng(seed)


def video_seed(seed: int, ordinal: int) -> int:
    """Per-video stream in batch runs: base seed XOR video ordinal."""
    return (int(seed) ^ int(ordinal)) & 0xFFFFFFFFFFFFFFFF


@dataclass(frozen=True)
class CumulativeCurve:
    """Anchors (k, F_k) for k in 0..T; F_0 = 0, F_T = 1, non-decreasing."""

    values: np.ndarray

    def __post_init__(self):
        f = np.asarray(self.values, dtype=np.float64)
        if f.ndim != 1 or f.size < 2:
            raise StructuralError("curve needs at least anchors (0, F_0) and (1, F_1)")
        if not np.all(np.isfinite(f)):
            raise StructuralError("curve values must be finite")
        if f[0] != 0.0:
            raise StructuralError(f"F_0 must be 0, got {f[0]!r}")
        if abs(f[-1] - 1.0) > CURVE_END_TOL:
            raise StructuralError(f"F_T must be 1 within 1e-9, got {f[-1]!r}")
        if np.any(np.diff(f) < 0):
            raise StructuralError("curve must be non-decreasing")
        f = f.copy()
        f.flags.writeable = False
        object.__setattr__(self, "values", f)

    @property
    def t_count(self) -> int:
        return self.values.size - 1


@dataclass(frozen=True)
class SamplerConfig:
    """Parameters for one sampling run.

    ``deterministic`` replaces every random draw with its interval midpoint
    (or segment center / zero start), making runs reproducible without an RNG.
    Strategy-specific fields are validated only for the strategy they apply to.
    """

    n_frames: int = 8
    mu: float = 0.5
    strategy: str = "mg"
    stride: int = 4
    window_len: int = 32
    seed: int = 0
    deterministic: bool = False

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown strategy {self.strategy!r}, expected one of {STRATEGIES}")
        if int(self.n_frames) != self.n_frames or self.n_frames < 1:
            raise ConfigError(f"n_frames must be an integer >= 1, got {self.n_frames!r}")
        if not math.isfinite(self.mu) or self.mu < 0:
            raise ConfigError(f"mu must be >= 0, got {self.mu!r}")
        if not (0 <= int(self.seed) < 2**64):
            raise ConfigError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")
        if self.strategy == "stride" and (int(self.stride) != self.stride or self.stride < 1):
            raise ConfigError(f"stride must be an integer >= 1, got {self.stride!r}")
        if self.strategy == "mg-clip" and (int(self.window_len) != self.window_len or self.window_len < 1):
            raise ConfigError(f"window_len must be an integer >= 1, got {self.window_len!r}")


@dataclass(frozen=True)
class SamplePlan:
    """Selected frame indices plus provenance.

    ``draws`` holds the per-pick y values for the motion-guided strategies;
    ``window_start`` is the clip offset for mg-clip.
    """

    indices: tuple[int, ...]
    strategy: str
    config: SamplerConfig
    draws: tuple[float, ...] | None = None
    window_start: int | None = None

    def __post_init__(self):
        idx = tuple(int(i) for i in self.indices)
        if len(idx) != self.config.n_frames:
            raise StructuralError(
                f"plan has {len(idx)} indices, config wants {self.config.n_frames}"
            )
        if any(i < 0 for i in idx):
            raise StructuralError("frame indices must be >= 0")
        if any(a > b for a, b in zip(idx, idx[1:])):
            raise StructuralError(f"indices must be non-decreasing, got {idx}")
        object.__setattr__(self, "indices", idx)
        if self.draws is not None:
            object.__setattr__(self, "draws", tuple(float(y) for y in self.draws))


def build_curve(m: MotionDistribution) -> CumulativeCurve:
    """Prefix-sum the distribution into curve anchors, pinning F_T to exactly 1."""
    f = np.empty(m.t_count + 1, dtype=np.float64)
    f[0] = 0.0
    np.cumsum(m.probs, out=f[1:])
    if abs(f[-1] - 1.0) > CURVE_END_TOL:
        raise StructuralError(f"distribution sums to {f[-1]!r}, cannot build curve")
    f[-1] = 1.0
    np.minimum(f, 1.0, out=f)  # keep rounding noise from poking above 1
    return CumulativeCurve(f)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def invert_curve(curve: CumulativeCurve, y: float) -> int:
    """Map a cumulative value y in [0, 1] to a zero-based frame index.

    The leftmost segment with F_{k-1} <= y <= F_k and positive slope is
    interpolated to a real x; plateaus therefore resolve to their leftmost
    preimage.  x rounds half-up to a 1-based frame number, clamped to [1, T].
    """
    if not (0.0 <= y <= 1.0):
        raise ConfigError(f"y must lie in [0, 1], got {y!r}")
    f = curve.values
    if y <= 0.0:
        k = int(np.argmax(f > 0.0))  # first rising anchor; exists since F_T = 1
    else:
        k = int(np.searchsorted(f, y, side="left"))
    x = (k - 1) + (y - f[k - 1]) / (f[k] - f[k - 1])
    return min(max(_round_half_up(x), 1), curve.t_count) - 1


def _resolve_rng(cfg: SamplerConfig, rng: np.random.Generator | None) -> np.random.Generator | None:
    if cfg.deterministic:
        return None
    return rng if rng is not None else make_rng(cfg.seed)


def _require_strategy(cfg: SamplerConfig, expected: str) -> None:
    if cfg.strategy != expected:
        raise ConfigError(f"config strategy is {cfg.strategy!r}, operation needs {expected!r}")


def _interval_draws(n: int, rng: np.random.Generator | None) -> list[float]:
    """One y per interval ((i-1)/N, i/N), endpoints excluded; midpoints when rng is None."""
    if rng is None:
        return [(2 * i - 1) / (2 * n) for i in range(1, n + 1)]
    ys = []
    for i in range(n):
        lo, hi = i / n, (i + 1) / n
        y = float(rng.uniform(lo, hi))
        while not (lo < y < hi):  # uniform() may return its left endpoint
            y = float(rng.uniform(lo, hi))
        ys.append(y)
    return ys


def mg_sample(curve: CumulativeCurve, cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SamplePlan:
    """Motion-guided sampling: invert one draw per even y-interval."""
    _require_strategy(cfg, "mg")
    ys = _interval_draws(cfg.n_frames, _resolve_rng(cfg, rng))
    indices = [invert_curve(curve, y) for y in ys]
    return SamplePlan(tuple(indices), "mg", cfg, draws=tuple(ys))


def segment_sample(t_count: int, cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SamplePlan:
    """One frame per equal temporal segment [(i-1)T/N, iT/N)."""
    _require_strategy(cfg, "segment")
    if t_count < 1:
        raise StructuralError(f"t_count must be >= 1, got {t_count}")
    rng = _resolve_rng(cfg, rng)
    n = cfg.n_frames
    indices = []
    for i in range(n):
        lo = i * t_count / n
        hi = (i + 1) * t_count / n
        pos = lo + t_count / (2 * n) if rng is None else float(rng.uniform(lo, hi))
        indices.append(min(math.floor(pos), t_count - 1))
    return SamplePlan(tuple(indices), "segment", cfg)


def stride_sample(t_count: int, cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SamplePlan:
    """Arithmetic progression from a random start; overruns clamp to the last frame."""
    _require_strategy(cfg, "stride")
    if t_count < 1:
        raise StructuralError(f"t_count must be >= 1, got {t_count}")
    rng = _resolve_rng(cfg, rng)
    n, s = cfg.n_frames, cfg.stride
    hi = max(0, t_count - 1 - s * (n - 1))
    start = 0 if rng is None else int(rng.integers(0, hi + 1))
    indices = [min(start + s * i, t_count - 1) for i in range(n)]
    return SamplePlan(tuple(indices), "stride", cfg)


def topk_sample(m: MotionDistribution, cfg: SamplerConfig) -> SamplePlan:
    """The N frames with the largest probability, ties to the smaller index."""
    _require_strategy(cfg, "topk")
    if cfg.n_frames > m.t_count:
        raise ConfigError(
            f"topk needs n_frames <= t_count, got {cfg.n_frames} > {m.t_count}"
        )
    top = np.argsort(-m.probs, kind="stable")[: cfg.n_frames]
    return SamplePlan(tuple(sorted(int(i) for i in top)), "topk", cfg)


def windowed_clip_sample(m: MotionDistribution, cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SamplePlan:
    """Motion-guided sampling restricted to a contiguous window of frames.

    The window start is drawn first, then the interval draws, so one RNG
    stream replays identically.  Draws are recorded in window-curve
    coordinates.
    """
    _require_strategy(cfg, "mg-clip")
    t = m.t_count
    rng = _resolve_rng(cfg, rng)
    start = 0 if rng is None else int(rng.integers(0, max(0, t - cfg.window_len) + 1))
    sub = m.probs[start : start + cfg.window_len]
    total = float(sub.sum())
    if total > 0.0:
        window_m = MotionDistribution(sub / total, mu=m.mu, degenerate_uniform=m.degenerate_uniform)
    else:
        window_m = MotionDistribution(np.full(sub.size, 1.0 / sub.size), mu=m.mu, degenerate_uniform=True)
    curve = build_curve(window_m)
    ys = _interval_draws(cfg.n_frames, rng)
    indices = [invert_curve(curve, y) + start for y in ys]
    return SamplePlan(tuple(indices), "mg-clip", cfg, draws=tuple(ys), window_start=start)


def sample_from_distribution(m: MotionDistribution, cfg: SamplerConfig, rng: np.random.Generator | None = None) -> SamplePlan:
    """Dispatch on cfg.strategy over a ready (already smoothed) distribution."""
    if cfg.strategy == "mg":
        return mg_sample(build_curve(m), cfg, rng)
    if cfg.strategy == "segment":
        return segment_sample(m.t_count, cfg, rng)
    if cfg.strategy == "stride":
        return stride_sample(m.t_count, cfg, rng)
    if cfg.strategy == "topk":
        return topk_sample(m, cfg)
    return windowed_clip_sample(m, cfg, rng)


def with_strategy(cfg: SamplerConfig, strategy: str) -> SamplerConfig:
    """Copy of cfg targeting another strategy (shared N, mu, seed, mode)."""
    return replace(cfg, strategy=strategy)


def _format_float(v: float) -> str:
    s = repr(float(v))
    return s[:-2] if s.endswith(".0") else s


def plan_to_json(plan: SamplePlan) -> str:
    """Byte-stable JSON: {strategy, seed, mu, n_frames, indices[], draws[]}."""
    obj = {
        "strategy": plan.strategy,
        "seed": plan.config.seed,
        "mu": plan.config.mu,
        "n_frames": plan.config.n_frames,
        "indices": list(plan.indices),
        "draws": list(plan.draws) if plan.draws is not None else [],
    }
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def curve_to_csv(curve: CumulativeCurve) -> str:
    """CSV with header "frame,cumulative" and T+1 anchor rows."""
    lines = ["frame,cumulative"]
    lines += [f"{k},{_format_float(v)}" for k, v in enumerate(curve.values)]
    return "\n".join(lines) + "\n"
