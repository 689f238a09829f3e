"""Synthetic scenes with exact ground truth.

Scenes are built the same way the hypothesis generator composes layouts:
boundary lines are drawn through sampled vanishing points, so every wall
boundary of a generated layout passes exactly through its vanishing point
and the scene is recoverable from its own geometry.  Clean edge/label maps
come from the renderer; a corruption step emulates network-output failure
modes (missing edge chunks, noise, inconsistent wall labels).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import _geometry as geo
from .core import Layout, VanishingTriple, validate, TOPOLOGY, INTERIOR
from .errors import GenerationFailure
from .hypgen import build_layout, make_pool, LayoutPool
from .render import RenderConfig, DEFAULT_RENDER, render_edges, render_seg

# Roughly 70% of scenes take the two dominant types, mirroring indoor-photo
# viewpoint statistics.
DEFAULT_TYPE_WEIGHTS = (0.03, 0.03, 0.03, 0.35, 0.35, 0.04, 0.03, 0.03, 0.04, 0.03, 0.04)


@dataclass(frozen=True)
class SynthConfig:
    seed: int = 0
    frame_w: int = 224
    type_weights: tuple = DEFAULT_TYPE_WEIGHTS
    noise_sigma: float = 0.05
    occluder_count: int = 3
    occluder_max_frac: float = 0.2
    edge_dropout_frac: float = 0.1

    def __post_init__(self):
        if len(self.type_weights) != 11:
            raise ValueError("type_weights must have 11 entries")
        if abs(sum(self.type_weights) - 1.0) > 1e-6:
            raise ValueError("type_weights must sum to 1")
        for frac in (self.occluder_max_frac, self.edge_dropout_frac):
            if not 0.0 <= frac <= 1.0:
                raise ValueError("fractions must lie in [0, 1]")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")


DEFAULT_SYNTH = SynthConfig()


def _far_coord(rng, w):
    return float(rng.uniform(5 * w, 40 * w)) * (1.0 if rng.random() < 0.5 else -1.0)


def _positions(rng, w, k, min_gap=0.22):
    for _ in range(50):
        xs = np.sort(rng.uniform(0.18 * w, 0.82 * w, size=k))
        if k < 2 or xs[1] - xs[0] >= min_gap * w:
            return [float(x) for x in xs]
    return None


def _line(vp, target):
    return (vp, (target[0] - vp[0], target[1] - vp[1]))


def _cross(l1, l2):
    return geo.intersect_lines(l1[0], l1[1], l2[0], l2[1])


def _margins_ok(layout, w):
    t = TOPOLOGY[layout.type_id]
    pad = 0.04 * w
    for role, (x, y) in zip(t.corner_roles, layout.points):
        if role == INTERIOR and not (
            1 + pad <= x <= w - pad and 1 + pad <= y <= w - pad
        ):
            return False
    return True


def _try_scene(rng, tid, w):
    mid = (w + 1) / 2.0
    vp1 = (float(rng.uniform(0.3 * w, 0.7 * w)), _far_coord(rng, w))
    vp2 = (_far_coord(rng, w), float(rng.uniform(0.3 * w, 0.7 * w)))

    n_v = {1: 2, 2: 2, 3: 2}.get(tid, 1 if tid in (4, 5, 6, 8, 10) else 0)
    n_h = {1: 2, 6: 2, 7: 2}.get(tid, 1 if tid in (2, 3, 4, 5, 8, 9) else 0)
    v_lines = []
    h_lines = []
    if n_v:
        xs = _positions(rng, w, n_v)
        if xs is None:
            return None
        v_lines = [_line(vp1, (x, mid)) for x in xs]
    if n_h:
        ys = _positions(rng, w, n_h)
        if ys is None:
            return None
        h_lines = [_line(vp2, (mid, y)) for y in ys]

    vp3 = _place_vp3(rng, tid, v_lines, h_lines, w, mid)
    if vp3 is None:
        return None
    try:
        vps = VanishingTriple(vp1, vp2, vp3)
    except ValueError:
        return None
    layout = build_layout(tid, v_lines, h_lines, vp3, w)
    if layout is None or not validate(layout) or not _margins_ok(layout, w):
        return None
    return layout, vps


def _place_vp3(rng, tid, v_lines, h_lines, w, mid):
    jitter = lambda lo, hi: float(rng.uniform(lo, hi))
    if tid == 1:
        tl = _cross(v_lines[0], h_lines[0])
        tr = _cross(v_lines[1], h_lines[0])
        br = _cross(v_lines[1], h_lines[1])
        bl = _cross(v_lines[0], h_lines[1])
        if any(p is None for p in (tl, tr, br, bl)):
            return None
        x_lo, x_hi = max(tl[0], bl[0]), min(tr[0], br[0])
        y_lo, y_hi = max(tl[1], tr[1]), min(bl[1], br[1])
        mx, my = 0.15 * (x_hi - x_lo), 0.15 * (y_hi - y_lo)
        if x_hi - x_lo < 4 or y_hi - y_lo < 4:
            return None
        return (jitter(x_lo + mx, x_hi - mx), jitter(y_lo + my, y_hi - my))
    if tid in (2, 3):
        pl = _cross(v_lines[0], h_lines[0])
        pr = _cross(v_lines[1], h_lines[0])
        if pl is None or pr is None:
            return None
        if pl[0] > pr[0]:
            pl, pr = pr, pl
        m = 0.1 * (pr[0] - pl[0])
        x = jitter(pl[0] + m, pr[0] - m)
        if tid == 2:
            top = min(pl[1], pr[1])
            if top < 6:
                return None
            return (x, jitter(0.25 * top, 0.8 * top))
        bottom = max(pl[1], pr[1])
        if w - bottom < 6:
            return None
        return (x, jitter(bottom + 0.2 * (w - bottom), bottom + 0.8 * (w - bottom)))
    if tid in (4, 5, 8):
        c = _cross(v_lines[0], h_lines[0])
        if c is None:
            return None
        side = 1.0 if rng.random() < 0.5 else -1.0
        dx = side * jitter(0.08 * w, 0.3 * w)
        dy = jitter(0.08 * w, 0.3 * w)
        return (c[0] + dx, c[1] - dy) if tid in (4, 8) else (c[0] + dx, c[1] + dy)
    if tid == 6:
        ct = _cross(v_lines[0], h_lines[0])
        cb = _cross(v_lines[0], h_lines[1])
        if ct is None or cb is None:
            return None
        if ct[1] > cb[1]:
            ct, cb = cb, ct
        gap = cb[1] - ct[1]
        if gap < 6:
            return None
        side = 1.0 if rng.random() < 0.5 else -1.0
        return (
            ct[0] + side * jitter(0.08 * w, 0.3 * w),
            jitter(ct[1] + 0.15 * gap, cb[1] - 0.15 * gap),
        )
    if tid == 7:
        return (mid + jitter(-0.1 * w, 0.1 * w), mid + jitter(-0.1 * w, 0.1 * w))
    # single-line and single-face types: anywhere near the frame center works
    return (mid + jitter(0.05 * w, 0.2 * w), mid + jitter(0.05 * w, 0.2 * w))


def sample_scene(cfg: SynthConfig = DEFAULT_SYNTH):
    """Draw a ground-truth (layout, vanishing points) pair, deterministically."""
    rng = np.random.default_rng(cfg.seed)
    tid = int(rng.choice(11, p=np.asarray(cfg.type_weights, dtype=float))) + 1
    for _ in range(100):
        scene = _try_scene(rng, tid, cfg.frame_w)
        if scene is not None:
            return scene
    raise GenerationFailure(f"could not sample a valid type-{tid} scene")


def render_scene(layout: Layout, render_cfg: RenderConfig = DEFAULT_RENDER):
    """Clean (edge map, label map) pair for a ground-truth layout."""
    return render_edges(layout, render_cfg), render_seg(layout)


def _rect_slice(rng, w, max_frac):
    hi = max(0.09, min(0.45, float(np.sqrt(max_frac))))
    for _ in range(50):
        rw = max(int(round(w * rng.uniform(0.08, hi))), 1)
        rh = max(int(round(w * rng.uniform(0.08, hi))), 1)
        if rw * rh <= max_frac * w * w:
            x0 = int(rng.integers(0, w - rw + 1))
            y0 = int(rng.integers(0, w - rh + 1))
            return np.s_[y0 : y0 + rh, x0 : x0 + rw]
    return np.s_[0:1, 0:1]


def corrupt_maps(edges: np.ndarray, seg: np.ndarray, cfg: SynthConfig = DEFAULT_SYNTH):
    """Emulate noisy network outputs.

    Edge map: a fraction of stroke pixels is dropped, occluder rectangles are
    zeroed (whole frame per occluder when occluder_max_frac >= 1), then
    clamped Gaussian noise is added.  Label map: small rectangular patches
    are overwritten with a random wall label (the "disjoint wall labels"
    failure mode, so patches stay well below occluder size).  Deterministic
    given the seed.
    """
    rng = np.random.default_rng([cfg.seed, 7919])
    E = np.asarray(edges, dtype=float).copy()
    M = np.asarray(seg).copy()
    w = E.shape[0]

    if cfg.edge_dropout_frac > 0:
        stroke = np.flatnonzero(E > 0.01)
        k = int(round(cfg.edge_dropout_frac * stroke.size))
        if k > 0:
            E.flat[rng.choice(stroke, size=k, replace=False)] = 0.0
    for _ in range(cfg.occluder_count):
        if cfg.occluder_max_frac >= 1.0:
            E[:, :] = 0.0
        else:
            E[_rect_slice(rng, w, cfg.occluder_max_frac)] = 0.0
    if cfg.noise_sigma > 0:
        E = np.clip(E + rng.normal(0.0, cfg.noise_sigma, size=E.shape), 0.0, 1.0)

    patch_frac = min(0.05, cfg.occluder_max_frac)
    for _ in range(cfg.occluder_count):
        label = int(rng.choice((3, 4, 5)))
        M[_rect_slice(rng, w, patch_frac)] = label
    return E, M


def build_pool(n: int, cfg: SynthConfig = DEFAULT_SYNTH) -> LayoutPool:
    """Pool of n sampled ground-truth layouts in the working frame."""
    if n < 1:
        raise ValueError("pool size must be >= 1")
    entries = []
    for k in range(n):
        layout, _ = sample_scene(replace(cfg, seed=cfg.seed + k))
        entries.append(layout)
    return make_pool(entries)
