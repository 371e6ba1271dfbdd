"""Synthetic burst videos, strategy comparison, and the latency benchmark.

The generator plants motion bursts with analytically exact salience: every
frame inside a burst toggles one block in a cycling grid of disjoint slots,
so each in-burst transition changes exactly block_area pixels by exactly the
burst amplitude.  Outside bursts (and with zero noise) consecutive frames
are identical.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, StructuralError
from .kernels import ConvKernelBank
from .motion import FrameVolume, MotionDistribution
from .pipeline import sample_video
from .sampling import SamplePlan, SamplerConfig, make_rng, with_strategy

COMPARED_STRATEGIES = ("mg", "segment", "stride", "topk")


@dataclass(frozen=True)
class SyntheticSpec:
    """A synthetic video: constant background plus planted motion bursts.

    Bursts are zero-based inclusive (start, end, amplitude) frame ranges and
    may not overlap.  Amplitude and background should be exactly
    representable in float32 (integers are) so the generated salience is
    exact.  ``noise`` adds per-frame uniform noise in [-noise, noise].
    """

    t_count: int
    height: int = 32
    width: int = 32
    channels: int = 1
    bursts: tuple[tuple[int, int, float], ...] = ()
    background: float = 128.0
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.t_count < 1 or self.height < 1 or self.width < 1:
            raise ConfigError("t_count, height, and width must all be >= 1")
        if self.channels not in (1, 3):
            raise ConfigError(f"channels must be 1 or 3, got {self.channels}")
        if self.noise < 0:
            raise ConfigError(f"noise amplitude must be >= 0, got {self.noise!r}")
        bursts = tuple((int(s), int(e), float(a)) for s, e, a in self.bursts)
        for s, e, a in bursts:
            if not (0 <= s <= e <= self.t_count - 1):
                raise ConfigError(f"burst ({s}, {e}) outside frames [0, {self.t_count - 1}]")
            if a <= 0:
                raise ConfigError(f"burst amplitude must be > 0, got {a!r}")
        for (s1, e1, _), (s2, e2, _) in zip(sorted(bursts), sorted(bursts)[1:]):
            if s2 <= e1:
                raise ConfigError(f"bursts ({s1},{e1}) and ({s2},{e2}) overlap")
        object.__setattr__(self, "bursts", bursts)

    def burst_amplitude(self, frame: int) -> float | None:
        for s, e, a in self.bursts:
            if s <= frame <= e:
                return a
        return None

    def contains(self, frame: int) -> bool:
        return self.burst_amplitude(frame) is not None


@dataclass(frozen=True)
class CoverageReport:
    """Per-strategy burst coverage plus optional latency statistics."""

    coverage: dict[str, float]
    salience_mass_in_bursts: float | None = None
    latency_mean_us: float | None = None
    latency_p95_us: float | None = None

    def __post_init__(self):
        for name, frac in self.coverage.items():
            if not (0.0 <= frac <= 1.0):
                raise StructuralError(f"coverage[{name!r}] = {frac!r} outside [0, 1]")

    def to_json(self) -> str:
        obj = {
            "coverage": dict(sorted(self.coverage.items())),
            "salience_mass_in_bursts": self.salience_mass_in_bursts,
            "latency_mean_us": self.latency_mean_us,
            "latency_p95_us": self.latency_p95_us,
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _block_shape(spec: SyntheticSpec) -> tuple[int, int]:
    return max(1, spec.height // 8), max(1, spec.width // 8)


def block_area(spec: SyntheticSpec) -> int:
    """Pixels per toggled block; one in-burst transition moves amplitude * this."""
    bh, bw = _block_shape(spec)
    return bh * bw


def generate_synthetic_video(spec: SyntheticSpec) -> FrameVolume:
    """Render the spec to a float32 frame volume.

    Every frame in a burst toggles one block, so the summed absolute
    difference of transition t is exactly amplitude * block_area for
    zero-based t in [max(start, 1), end] and 0 elsewhere (noise aside).
    """
    bh, bw = _block_shape(spec)
    rows, cols = spec.height // bh, spec.width // bw
    slots = [(r * bh, c * bw) for r in range(rows) for c in range(cols)]
    on_amp = np.zeros(len(slots))
    cursor = 0
    canvas = np.full((spec.height, spec.width, spec.channels), spec.background, dtype=np.float32)
    frames = np.empty((spec.t_count, spec.height, spec.width, spec.channels), dtype=np.float32)
    for f in range(spec.t_count):
        amp = spec.burst_amplitude(f)
        if amp is not None:
            slot = cursor % len(slots)
            cursor += 1
            y, x = slots[slot]
            if on_amp[slot] == 0.0:
                on_amp[slot] = amp
                canvas[y : y + bh, x : x + bw, 0] = np.float32(spec.background + amp)
            else:
                on_amp[slot] = 0.0
                canvas[y : y + bh, x : x + bw, 0] = np.float32(spec.background)
        frames[f] = canvas
    if spec.noise > 0:
        rng = make_rng(spec.seed)
        frames += rng.uniform(-spec.noise, spec.noise, frames.shape).astype(np.float32)
    return FrameVolume(frames)


def burst_coverage(plan: SamplePlan, spec: SyntheticSpec) -> float:
    """Fraction of the plan's indices that land inside a burst range."""
    if max(plan.indices) >= spec.t_count:
        raise StructuralError(
            f"plan index {max(plan.indices)} outside the spec's {spec.t_count} frames"
        )
    if not spec.bursts:
        return 0.0
    inside = sum(1 for i in plan.indices if spec.contains(i))
    return inside / len(plan.indices)


def salience_mass_in_bursts(m: MotionDistribution, spec: SyntheticSpec) -> float:
    if m.t_count != spec.t_count:
        raise StructuralError(
            f"distribution covers {m.t_count} frames, spec has {spec.t_count}"
        )
    total = sum(float(m.probs[s : e + 1].sum()) for s, e, _ in spec.bursts)
    return min(1.0, total)  # a subset of probs can exceed 1 by rounding noise


def compare_strategies(
    volume: FrameVolume,
    spec: SyntheticSpec,
    cfg: SamplerConfig,
    representation: str = "image",
    bank: ConvKernelBank | None = None,
) -> CoverageReport:
    """Run mg, segment, stride, and topk on identical salience; report coverage.

    Each strategy gets a fresh generator seeded from cfg.seed, so results do
    not depend on strategy order.
    """
    coverage = {}
    mass = None
    for strategy in COMPARED_STRATEGIES:
        strat_cfg = with_strategy(cfg, strategy)
        plan, _, m = sample_video(volume, strat_cfg, representation, bank, make_rng(cfg.seed))
        coverage[strategy] = burst_coverage(plan, spec)
        if mass is None:
            mass = salience_mass_in_bursts(m, spec)
    return CoverageReport(coverage=coverage, salience_mass_in_bursts=mass)


def _timed_runs(
    volume: FrameVolume,
    cfg: SamplerConfig,
    repetitions: int,
    warmup: int,
    representation: str,
    bank: ConvKernelBank | None,
) -> list[float]:
    times_us = []
    for rep in range(warmup + repetitions):
        rng = make_rng(cfg.seed)
        start = time.perf_counter()
        sample_video(volume, cfg, representation, bank, rng)
        elapsed = time.perf_counter() - start
        if rep >= warmup:
            times_us.append(elapsed * 1e6)
    return times_us


def latency_benchmark(
    volumes: list[FrameVolume],
    cfg: SamplerConfig,
    repetitions: int,
    warmup: int = 1,
    representation: str = "image",
    bank: ConvKernelBank | None = None,
    parallel: bool = False,
) -> CoverageReport:
    """Wall-clock time of the in-memory pipeline (no disk I/O) per video.

    Warm-up runs are discarded; mean and p95 are taken over all remaining
    (video, repetition) timings, in microseconds.  ``parallel`` fans videos
    out to a thread pool, which speeds up batches but loosens the numbers.
    """
    if repetitions < 1:
        raise ConfigError(f"repetitions must be >= 1, got {repetitions}")
    if warmup < 0:
        raise ConfigError(f"warmup must be >= 0, got {warmup}")
    if not volumes:
        raise StructuralError("no volumes to benchmark")

    def runs(volume: FrameVolume) -> list[float]:
        return _timed_runs(volume, cfg, repetitions, warmup, representation, bank)

    if parallel and len(volumes) > 1:
        with ThreadPoolExecutor(max_workers=min(8, len(volumes))) as pool:
            per_video = list(pool.map(runs, volumes))
    else:
        per_video = [runs(v) for v in volumes]
    times = np.concatenate(per_video)
    return CoverageReport(
        coverage={},
        latency_mean_us=float(times.mean()),
        latency_p95_us=float(np.percentile(times, 95)),
    )
