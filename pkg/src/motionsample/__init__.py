"""Motion-guided video frame sampling.

Rank frames by temporal-difference motion salience, turn the salience into a
smoothed cumulative distribution over frame index, and pick N frames by
inverse-transform sampling so high-motion segments are covered evenly.
Includes segment/stride/top-magnitude baselines, codec-free frame ingestion,
a synthetic evaluation harness, and a CLI.
"""

from .errors import ConfigError, FormatError, MotionSampleError, StructuralError
from .evalbench import (
    CoverageReport,
    SyntheticSpec,
    block_area,
    burst_coverage,
    compare_strategies,
    generate_synthetic_video,
    latency_benchmark,
    salience_mass_in_bursts,
)
from .ingest import (
    VideoManifest,
    export_outputs,
    load_frame_directory,
    load_raw_tensor,
    natural_key,
    save_raw_tensor,
)
from .kernels import (
    ConvKernelBank,
    conv2d_apply,
    identity_bank,
    load_kernel_bank,
    random_bank,
    save_kernel_bank,
    zero_bank,
)
from .motion import (
    FrameVolume,
    MotionDistribution,
    SalienceVector,
    downsample_volume,
    feature_diff_salience,
    image_diff_salience,
    normalize_salience,
    smooth_distribution,
)
from .pipeline import compute_salience, sample_video
from .sampling import (
    STRATEGIES,
    CumulativeCurve,
    SamplePlan,
    SamplerConfig,
    build_curve,
    curve_to_csv,
    invert_curve,
    make_rng,
    mg_sample,
    plan_to_json,
    sample_from_distribution,
    segment_sample,
    stride_sample,
    topk_sample,
    video_seed,
    windowed_clip_sample,
    with_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvKernelBank",
    "CoverageReport",
    "CumulativeCurve",
    "FormatError",
    "FrameVolume",
    "MotionDistribution",
    "MotionSampleError",
    "STRATEGIES",
    "SalienceVector",
    "SamplePlan",
    "SamplerConfig",
    "StructuralError",
    "SyntheticSpec",
    "VideoManifest",
    "block_area",
    "build_curve",
    "burst_coverage",
    "compare_strategies",
    "compute_salience",
    "conv2d_apply",
    "curve_to_csv",
    "downsample_volume",
    "export_outputs",
    "feature_diff_salience",
    "generate_synthetic_video",
    "identity_bank",
    "image_diff_salience",
    "invert_curve",
    "latency_benchmark",
    "load_frame_directory",
    "load_kernel_bank",
    "load_raw_tensor",
    "make_rng",
    "mg_sample",
    "natural_key",
    "normalize_salience",
    "plan_to_json",
    "random_bank",
    "salience_mass_in_bursts",
    "sample_from_distribution",
    "sample_video",
    "save_kernel_bank",
    "save_raw_tensor",
    "segment_sample",
    "smooth_distribution",
    "stride_sample",
    "topk_sample",
    "video_seed",
    "windowed_clip_sample",
    "with_strategy",
    "zero_bank",
]
