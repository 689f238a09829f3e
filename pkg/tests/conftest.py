"""Shared fixtures and independent oracle implementations.

The oracles here deliberately recompute results through different routes
than the library (per-pixel loops, dense convolution, full-map relabeling)
so that tests cross-check two independent paths.
"""

from __future__ import annotations

import numpy as np
import pytest

from roomlayout.core import Layout, faces_of, validate
from roomlayout.render import RenderConfig, gaussian_kernel, render_edges, render_seg
from roomlayout.synth import SynthConfig, sample_scene


# ---------------------------------------------------------------------------
# point-in-polygon oracle (closed semantics)


def point_on_segment(px, py, ax, ay, bx, by, tol=1e-9):
    ux, uy = bx - ax, by - ay
    L2 = ux * ux + uy * uy
    if L2 < 1e-24:
        return abs(px - ax) <= tol and abs(py - ay) <= tol
    t = ((px - ax) * ux + (py - ay) * uy) / L2
    t = min(max(t, 0.0), 1.0)
    qx, qy = ax + t * ux, ay + t * uy
    return (px - qx) ** 2 + (py - qy) ** 2 <= tol * tol


def point_in_closed_polygon(px, py, poly, tol=1e-9):
    n = len(poly)
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if point_on_segment(px, py, ax, ay, bx, by, tol):
            return True
    crossings = 0
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        if (ay <= py) != (by <= py):
            x_at = ax + (py - ay) * (bx - ax) / (by - ay)
            if x_at > px:
                crossings += 1
    return crossings % 2 == 1


def seg_oracle(layout: Layout) -> np.ndarray:
    """Per-pixel loop: first face in ascending-label order containing the center."""
    w = layout.frame[0]
    faces = faces_of(layout)  # already sorted by label
    out = np.zeros((w, w), dtype=np.uint8)
    for v in range(1, w + 1):
        for u in range(1, w + 1):
            for label, poly in faces:
                if point_in_closed_polygon(float(u), float(v), poly):
                    out[v - 1, u - 1] = int(label)
                    break
    return out


def edges_oracle(layout: Layout, cfg: RenderConfig) -> np.ndarray:
    """Brute-force stroke raster plus dense 2D convolution."""
    from scipy.signal import convolve2d

    from roomlayout.core import boundary_segments

    w = layout.frame[0]
    segs = boundary_segments(layout)
    base = np.zeros((w, w))
    half = cfg.line_width_px / 2.0
    uu, vv = np.meshgrid(np.arange(1, w + 1, dtype=float), np.arange(1, w + 1, dtype=float))
    for (a, b) in segs:
        ex, ey = b[0] - a[0], b[1] - a[1]
        L2 = ex * ex + ey * ey
        if L2 < 1e-12:
            d2 = (uu - a[0]) ** 2 + (vv - a[1]) ** 2
        else:
            t = np.clip(((uu - a[0]) * ex + (vv - a[1]) * ey) / L2, 0.0, 1.0)
            d2 = (uu - (a[0] + t * ex)) ** 2 + (vv - (a[1] + t * ey)) ** 2
        base[d2 <= half * half + 1e-9] = 1.0
    k = gaussian_kernel(cfg.blur_sigma)
    blurred = convolve2d(base, np.outer(k, k), mode="same", boundary="fill")
    return np.clip(blurred, 0.0, 1.0)


def matching_oracle(a: np.ndarray, b: np.ndarray, wall_only=True) -> float:
    """Relabel b under every admissible permutation; keep the best agreement."""
    from itertools import permutations

    best = 0.0
    labels = (3, 4, 5) if wall_only else (1, 2, 3, 4, 5)
    for perm in permutations(labels):
        relabeled = b.copy()
        for new, old in zip(perm, labels):
            relabeled[b == old] = new
        best = max(best, float(np.mean(a == relabeled)))
    return best


def select_oracle(strengths, threshold):
    d = list(strengths)
    padded = [0.0] + d + [0.0]
    out = set()
    for i in range(len(d)):
        local_max = padded[i + 1] > padded[i + 2] and padded[i + 1] > padded[i]
        rises = (padded[i + 1] - padded[i + 2] > threshold) or (
            padded[i + 1] - padded[i] > threshold
        )
        if local_max and rises:
            out.add(i)
    return out


# ---------------------------------------------------------------------------
# scene helpers


def one_type_config(tid: int, seed: int, **kwargs) -> SynthConfig:
    weights = tuple(1.0 if i == tid - 1 else 0.0 for i in range(11))
    return SynthConfig(seed=seed, type_weights=weights, **kwargs)


def snapped_scene(tid: int, seed: int, frame_w=224):
    """Scene whose ground truth has integer corners (by re-snapping).

    Useful when a test needs pixel-exact recovery after refinement.
    """
    from roomlayout.refine import _rounded

    for s in range(seed, seed + 50):
        layout, vps = sample_scene(one_type_config(tid, s, frame_w=frame_w))
        snapped = _rounded(layout)
        if validate(snapped):
            return snapped, vps
    raise AssertionError("no snappable scene found")


@pytest.fixture(scope="session")
def full_box_scene():
    cfg = one_type_config(1, seed=424)
    layout, vps = sample_scene(cfg)
    return layout, vps


def two_wall_layout(w=224, x=None) -> Layout:
    """Vertical junction at column x (defaults to w/2)."""
    from roomlayout.core import make_layout

    x = w // 2 if x is None else x
    return make_layout(10, ((float(x), 1.0), (float(x), float(w))), w)


def single_face_layout(w=224) -> Layout:
    from roomlayout.core import make_layout

    return make_layout(11, ((1.0, 1.0), (float(w), float(w))), w)
