"""Command-line front-end.

Subcommands: ``sample`` (pick frames from a video on disk), ``eval``
(synthetic strategy comparison), ``bench`` (latency benchmark), ``gen``
(write a synthetic video as an MGVT raw tensor).

Exit codes: 0 success, 1 usage error, 2 input/format error.  Runs are
byte-reproducible given --seed (or --deterministic) and identical inputs.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from pathlib import Path

from .errors import ConfigError, MotionSampleError
from .evalbench import (
    SyntheticSpec,
    compare_strategies,
    generate_synthetic_video,
    latency_benchmark,
)
from .ingest import export_outputs, load_frame_directory, load_raw_tensor, natural_key, save_raw_tensor
from .kernels import load_kernel_bank
from .motion import downsample_volume
from .pipeline import sample_video
from .sampling import (
    STRATEGIES,
    SamplerConfig,
    curve_to_csv,
    make_rng,
    plan_to_json,
    video_seed,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 by default; we want 1
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _add_sampler_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--strategy", choices=STRATEGIES, default="mg")
    p.add_argument("--num-frames", type=int, default=8, metavar="N")
    p.add_argument("--mu", type=float, default=0.5)
    p.add_argument("--stride", type=int, default=4, metavar="K")
    p.add_argument("--window", type=int, default=32, metavar="L")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deterministic", action="store_true")


def _add_synth_flags(p: argparse.ArgumentParser, t_default: int) -> None:
    p.add_argument("--t-count", type=int, default=t_default, metavar="T")
    p.add_argument("--height", type=int, default=32)
    p.add_argument("--width", type=int, default=32)
    p.add_argument("--channels", type=int, default=1, choices=(1, 3))
    p.add_argument(
        "--burst",
        action="append",
        default=None,
        metavar="S:E:AMP",
        help="planted burst, zero-based inclusive frames S..E with amplitude AMP (repeatable)",
    )
    p.add_argument("--background", type=float, default=128.0)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--gen-seed", type=int, default=0)


def _build_parser() -> _Parser:
    parser = _Parser(prog="motionsample", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sample = sub.add_parser("sample", help="select frame indices from a video on disk")
    src = sample.add_mutually_exclusive_group(required=True)
    src.add_argument("--frames-dir", metavar="DIR", help="directory of PGM/PPM frames")
    src.add_argument("--raw-tensor", metavar="FILE", help="MGVT raw tensor file")
    sample.add_argument("--batch", action="store_true", help="input path holds many videos")
    sample.add_argument("--representation", choices=("image", "feature"), default="image")
    sample.add_argument("--weights", metavar="FILE", help="MGKB kernel weight file")
    sample.add_argument("--downsample", type=int, default=1, metavar="K")
    _add_sampler_flags(sample)
    sample.add_argument("--out", metavar="FILE", help="plan JSON path (default: stdout)")
    sample.add_argument("--emit-curve", metavar="FILE", help="also write the curve CSV")

    ev = sub.add_parser("eval", help="compare strategies on a synthetic burst video")
    _add_synth_flags(ev, t_default=100)
    ev.add_argument("--representation", choices=("image", "feature"), default="image")
    _add_sampler_flags(ev)
    ev.add_argument("--out", metavar="FILE", help="report JSON path (default: stdout)")

    bench = sub.add_parser("bench", help="latency benchmark on synthetic videos")
    _add_synth_flags(bench, t_default=160)
    bench.add_argument("--videos", type=int, default=4)
    bench.add_argument("--reps", type=int, default=10)
    bench.add_argument("--warmup", type=int, default=2)
    bench.add_argument("--representation", choices=("image", "feature"), default="image")
    bench.add_argument("--parallel", action="store_true")
    _add_sampler_flags(bench)
    bench.add_argument("--out", metavar="FILE", help="report JSON path")

    gen = sub.add_parser("gen", help="write a synthetic video as an MGVT raw tensor")
    _add_synth_flags(gen, t_default=100)
    gen.add_argument("--out", metavar="FILE", required=True)
    return parser


def _sampler_config(args: argparse.Namespace) -> SamplerConfig:
    try:
        return SamplerConfig(
            n_frames=args.num_frames,
            mu=args.mu,
            strategy=getattr(args, "strategy", "mg"),
            stride=args.stride,
            window_len=args.window,
            seed=args.seed,
            deterministic=args.deterministic,
        )
    except ConfigError as e:
        raise _UsageError(f"motionsample {args.command}: error: {e}") from e


def _parse_bursts(args: argparse.Namespace) -> tuple[tuple[int, int, float], ...]:
    if args.burst is None:
        return ()
    bursts = []
    for text in args.burst:
        parts = text.split(":")
        if len(parts) != 3:
            raise _UsageError(f"motionsample {args.command}: error: --burst wants S:E:AMP, got {text!r}")
        try:
            bursts.append((int(parts[0]), int(parts[1]), float(parts[2])))
        except ValueError as e:
            raise _UsageError(f"motionsample {args.command}: error: bad --burst {text!r}: {e}") from e
    return tuple(bursts)


def _synthetic_spec(args: argparse.Namespace, default_burst: bool = False) -> SyntheticSpec:
    bursts = _parse_bursts(args)
    if not bursts and default_burst:
        # One burst over the middle fifth keeps benchmark salience non-trivial.
        start = args.t_count // 3
        end = min(args.t_count - 1, start + max(0, args.t_count // 5 - 1))
        bursts = ((start, end, 8.0),)
    try:
        return SyntheticSpec(
            t_count=args.t_count,
            height=args.height,
            width=args.width,
            channels=args.channels,
            bursts=bursts,
            background=args.background,
            noise=args.noise,
            seed=args.gen_seed,
        )
    except ConfigError as e:
        raise _UsageError(f"motionsample {args.command}: error: {e}") from e


def _load_single_volume(args: argparse.Namespace, path: Path):
    if args.frames_dir is not None:
        volume, _ = load_frame_directory(path)
    else:
        volume = load_raw_tensor(path)
    return downsample_volume(volume, args.downsample)


def _sample_one(args: argparse.Namespace, cfg: SamplerConfig, path: Path, out_path, curve_path) -> str | None:
    volume = _load_single_volume(args, path)
    bank = load_kernel_bank(args.weights) if args.weights else None
    plan, curve, _ = sample_video(volume, cfg, args.representation, bank, make_rng(cfg.seed))
    if out_path is not None:
        export_outputs(plan, out_path, curve, curve_path)
        return None
    if curve_path is not None:
        Path(curve_path).write_text(curve_to_csv(curve), encoding="ascii")
    return plan_to_json(plan)


def _scan_batch_dir(root: Path) -> list[Path]:
    if not root.is_dir():
        raise MotionSampleError(f"{root}: not a directory")
    videos = [p for p in root.iterdir() if p.is_dir() or p.suffix.lower() == ".mgvt"]
    return sorted(videos, key=lambda p: natural_key(p.name))


def _run_sample(args: argparse.Namespace) -> int:
    if args.weights and args.representation == "image":
        raise _UsageError("motionsample sample: error: --weights needs --representation feature")
    if args.downsample < 1:
        raise _UsageError("motionsample sample: error: --downsample must be >= 1")
    cfg = _sampler_config(args)
    if not args.batch:
        text = _sample_one(
            args,
            cfg,
            Path(args.frames_dir or args.raw_tensor),
            args.out,
            args.emit_curve,
        )
        if text is not None:
            sys.stdout.write(text)
        return EXIT_OK

    if args.emit_curve:
        raise _UsageError("motionsample sample: error: --emit-curve is not available with --batch")
    if not args.out:
        raise _UsageError("motionsample sample: error: --batch requires --out DIRECTORY")
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    videos = _scan_batch_dir(Path(args.frames_dir or args.raw_tensor))
    if not videos:
        raise MotionSampleError(f"{args.frames_dir or args.raw_tensor}: no videos found")

    def work(item: tuple[int, Path]) -> str:
        ordinal, path = item
        per_video = replace(cfg, seed=video_seed(cfg.seed, ordinal))
        # batch inputs may mix frame dirs and .mgvt files
        if path.is_dir():
            volume, _ = load_frame_directory(path)
        else:
            volume = load_raw_tensor(path)
        volume = downsample_volume(volume, args.downsample)
        bank = load_kernel_bank(args.weights) if args.weights else None
        plan, _, _ = sample_video(volume, per_video, args.representation, bank, make_rng(per_video.seed))
        out_path = out_dir / f"{path.stem if path.is_file() else path.name}.plan.json"
        out_path.write_text(plan_to_json(plan), encoding="ascii")
        return str(out_path)

    with ThreadPoolExecutor(max_workers=min(8, len(videos))) as pool:
        written = list(pool.map(work, enumerate(videos)))
    for line in written:
        print(line)
    return EXIT_OK


def _run_eval(args: argparse.Namespace) -> int:
    cfg = _sampler_config(args)
    spec = _synthetic_spec(args)
    volume = generate_synthetic_video(spec)
    report = compare_strategies(volume, spec, cfg, args.representation)
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="ascii")
    else:
        sys.stdout.write(report.to_json())
    return EXIT_OK


def _run_bench(args: argparse.Namespace) -> int:
    if args.videos < 1 or args.reps < 1 or args.warmup < 0:
        raise _UsageError("motionsample bench: error: --videos/--reps must be >= 1, --warmup >= 0")
    cfg = _sampler_config(args)
    base = _synthetic_spec(args, default_burst=True)
    volumes = [
        generate_synthetic_video(replace(base, seed=video_seed(base.seed, i)))
        for i in range(args.videos)
    ]
    report = latency_benchmark(
        volumes, cfg, args.reps, args.warmup, args.representation, parallel=args.parallel
    )
    print(f"{'videos':>8} {'reps':>6} {'warmup':>7} {'strategy':>9} {'repr':>8} {'mean_us':>12} {'p95_us':>12}")
    print(
        f"{args.videos:>8} {args.reps:>6} {args.warmup:>7} {cfg.strategy:>9} "
        f"{args.representation:>8} {report.latency_mean_us:>12.1f} {report.latency_p95_us:>12.1f}"
    )
    if args.out:
        Path(args.out).write_text(report.to_json(), encoding="ascii")
    return EXIT_OK


def _run_gen(args: argparse.Namespace) -> int:
    spec = _synthetic_spec(args)
    volume = generate_synthetic_video(spec)
    save_raw_tensor(volume, args.out)
    print(
        f"wrote {args.out}: {volume.t_count}x{volume.height}x{volume.width}x{volume.channels} float32"
    )
    return EXIT_OK


_HANDLERS = {
    "sample": _run_sample,
    "eval": _run_eval,
    "bench": _run_bench,
    "gen": _run_gen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    try:
        return _HANDLERS[args.command](args)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (MotionSampleError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
