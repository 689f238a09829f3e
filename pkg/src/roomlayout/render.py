"""Rendering of parameterized layouts into edge heat maps and label maps.

Edge maps are float arrays in [0, 1]; segmentation maps are uint8 arrays
with values in {1..5} (see :class:`roomlayout.core.SurfaceLabel`).  Both are
square w-by-w grids indexed [row v - 1, col u - 1] for pixel (u, v).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import cv2
import numpy as np
from scipy.ndimage import correlate1d

from . import _geometry as geo
from .core import Layout, boundary_segments, check_positions, faces_of
from .errors import InvalidTopology


@dataclass(frozen=True)
class RenderConfig:
    """Stroke and blur settings for the homogeneous edge renderer."""

    line_width_px: int = 6
    blur_sigma: float = 6.0
    frame_w: int = 224

    def __post_init__(self):
        if self.line_width_px < 1:
            raise ValueError("line_width_px must be >= 1")
        if self.blur_sigma <= 0:
            raise ValueError("blur_sigma must be positive")


DEFAULT_RENDER = RenderConfig()


@lru_cache(maxsize=8)
def _cached_kernel(sigma: float):
    radius = int(np.ceil(3.0 * sigma))
    x = np.arange(-radius, radius + 1, dtype=float)
    k = np.exp(-(x * x) / (2.0 * sigma * sigma))
    k /= k.sum()
    k.flags.writeable = False
    return k


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Discrete Gaussian truncated at radius ceil(3*sigma), normalized to sum 1."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return _cached_kernel(float(sigma))


def gaussian_blur(values: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian convolution with zero padding at the borders."""
    arr = np.asarray(values)
    if arr.dtype != np.float32:
        arr = arr.astype(float, copy=False)
    k = gaussian_kernel(sigma).astype(arr.dtype, copy=False)
    if min(arr.shape) > k.size:
        # symmetric kernel, so correlation equals convolution
        return cv2.sepFilter2D(arr, -1, k, k, borderType=cv2.BORDER_CONSTANT)
    out = correlate1d(arr, k, axis=0, mode="constant", cval=0.0)
    return correlate1d(out, k, axis=1, mode="constant", cval=0.0)


def _require_square(layout: Layout):
    w, h = layout.frame
    if w != h:
        raise InvalidTopology("rendering requires a square frame")
    return w


def _edges_unchecked(layout: Layout, cfg: RenderConfig) -> np.ndarray:
    w = layout.frame[0]
    segments = boundary_segments(layout)
    if not segments:
        return np.zeros((w, w), dtype=np.float32)
    base = geo.segment_distance_mask(segments, w, w, cfg.line_width_px / 2.0)
    return np.clip(gaussian_blur(base, cfg.blur_sigma), 0.0, 1.0)


def _seg_from_faces(faces, w: int) -> np.ndarray:
    seg = np.zeros((w, w), dtype=np.uint8)
    for label, poly in sorted(faces, key=lambda f: -int(f[0])):
        seg[geo.polygon_pixel_mask(poly, w, w)] = int(label)
    if seg.min() == 0:
        raise InvalidTopology("face polygons leave uncovered pixels")
    return seg


def render_edges(layout: Layout, cfg: RenderConfig = DEFAULT_RENDER) -> np.ndarray:
    """Homogeneous edge map of a layout.

    Interior face boundaries are drawn as strokes of width ``line_width_px``
    (all pixels within half that distance of a segment, round caps), blurred
    with ``blur_sigma`` and clamped to [0, 1].  Frame-border lines are not
    drawn, so a single-face layout renders to an all-zero map.
    """
    check_positions(layout)
    w = _require_square(layout)
    faces_of(layout)  # geometry gate: raises InvalidTopology on bad corners
    return _edges_unchecked(layout, cfg)


def render_seg(layout: Layout, frame_w: int | None = None) -> np.ndarray:
    """Per-pixel surface labels of a layout.

    Each pixel takes the label of the face polygon containing its center;
    centers exactly on a shared boundary get the smallest label among the
    touching faces (ceiling before floor before front/left/right walls).
    """
    check_positions(layout)
    w = _require_square(layout)
    if frame_w is not None and frame_w != w:
        raise InvalidTopology(f"layout frame {w} does not match requested {frame_w}")
    return _seg_from_faces(faces_of(layout), w)


def check_heatmap(values: np.ndarray) -> np.ndarray:
    """Validate an edge heat map: square, finite, values in [0, 1]."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("heat map must be a square 2D array")
    if not np.isfinite(arr).all():
        raise ValueError("heat map contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("heat map values must lie in [0, 1]")
    return arr


def check_segmap(labels: np.ndarray) -> np.ndarray:
    """Validate a segmentation map: 2D, labels in {1..5}."""
    arr = np.asarray(labels)
    if arr.ndim != 2:
        raise ValueError("segmentation map must be 2D")
    if arr.min() < 1 or arr.max() > 5:
        raise ValueError("segmentation labels must lie in 1..5")
    return arr.astype(np.uint8)
