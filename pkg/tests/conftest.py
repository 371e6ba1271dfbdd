import numpy as np
import pytest

from motionsample import FrameVolume, MotionDistribution, SalienceVector, normalize_salience


def write_pgm(path, pixels) -> None:
    """Binary P5, maxval 255; pixels is (H, W) uint8."""
    pixels = np.asarray(pixels, dtype=np.uint8)
    h, w = pixels.shape
    path.write_bytes(b"P5\n%d %d\n255\n" % (w, h) + pixels.tobytes())


def write_ppm(path, pixels) -> None:
    """Binary P6, maxval 255; pixels is (H, W, 3) uint8."""
    pixels = np.asarray(pixels, dtype=np.uint8)
    h, w, _ = pixels.shape
    path.write_bytes(b"P6\n%d %d\n255\n" % (w, h) + pixels.tobytes())


def random_volume(rng, t, h=4, w=5, c=1, dtype=np.uint8) -> FrameVolume:
    if dtype == np.uint8:
        data = rng.integers(0, 256, size=(t, h, w, c), dtype=np.uint8)
    else:
        data = rng.uniform(0, 255, size=(t, h, w, c)).astype(np.float32)
    return FrameVolume(data)


def random_distribution(rng, t, zero_runs=True) -> MotionDistribution:
    """A salience-shaped distribution: entry 0 is zero, optional zero plateaus."""
    values = rng.uniform(0.0, 1.0, size=t)
    values[0] = 0.0
    if zero_runs and t > 2:
        n_zero = int(rng.integers(0, t // 2 + 1))
        if n_zero:
            values[rng.choice(np.arange(1, t), size=min(n_zero, t - 1), replace=False)] = 0.0
    if values.sum() == 0.0 and t > 1:
        values[-1] = 1.0
    return normalize_salience(SalienceVector(values, "image"))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
