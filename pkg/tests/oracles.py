"""Independent brute-force references the fast implementations are checked against.

Nothing here may call into the code paths under test.
"""

import math

import numpy as np


# One unit segment sampled at 1e-6; buffers are reused so a thousand oracle
# calls do not thrash the allocator.
_GRID = np.linspace(0.0, 1.0, 1_000_001)
_GRID_EVAL = np.empty_like(_GRID)


def brute_force_invert(curve_values, y: float) -> int:
    """Invert a piecewise-linear cumulative curve by scanning at 1e-6 resolution.

    Returns the zero-based frame index of the leftmost x with F(x) >= y:
    nearest integer (half up), clamped to [1, T], minus 1.  Only the segment
    that can contain the leftmost crossing is evaluated; earlier segments sit
    entirely below y because F is non-decreasing.  The evaluated grid is
    monotone, so searchsorted finds the same point a left-to-right scan would.
    """
    f = np.asarray(curve_values, dtype=np.float64)
    t = f.size - 1
    for k in range(1, t + 1):
        if f[k] >= y:
            np.multiply(_GRID, f[k] - f[k - 1], out=_GRID_EVAL)
            np.add(_GRID_EVAL, f[k - 1], out=_GRID_EVAL)
            # rounding can leave the last grid value an ulp below f[k]
            idx = min(int(np.searchsorted(_GRID_EVAL, y, side="left")), _GRID.size - 1)
            x_star = (k - 1) + float(_GRID[idx])
            return min(max(math.floor(x_star + 0.5), 1), t) - 1
    return t - 1


def loop_conv2d(frame, kernels) -> np.ndarray:
    """Cross-correlation with stride 1 / zero-padding 3 via explicit loops."""
    frame = np.asarray(frame, dtype=np.float64)
    kernels = np.asarray(kernels, dtype=np.float64)
    h, w, c = frame.shape
    n_out, _, kh, kw = kernels.shape
    pad = 3
    padded = np.zeros((h + 2 * pad, w + 2 * pad, c))
    padded[pad : pad + h, pad : pad + w, :] = frame
    out = np.zeros((n_out, h, w))
    for o in range(n_out):
        for y in range(h):
            for x in range(w):
                acc = 0.0
                for ch in range(c):
                    for dy in range(kh):
                        for dx in range(kw):
                            acc += padded[y + dy, x + dx, ch] * kernels[o, ch, dy, dx]
                out[o, y, x] = acc
    return out


def loop_image_salience(frames) -> np.ndarray:
    """Image-level salience computed frame pair by frame pair."""
    frames = np.asarray(frames, dtype=np.float64)
    t = frames.shape[0]
    out = np.zeros(t)
    for i in range(1, t):
        out[i] = float(np.sum(np.abs(frames[i] - frames[i - 1])))
    return out


def shannon_entropy(probs) -> float:
    p = np.asarray(probs, dtype=np.float64)
    nz = p[p > 0]
    return float(-(nz * np.log(nz)).sum())
