"""Layout hypothesis generation.

Two sources feed the optimizer: layouts composed from rays sampled around
vanishing points (adaptive sector selection on the edge map), and layouts
retrieved from a predefined pool.  Both are ranked with the combined score
and the best few of distinct types are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _geometry as geo
from .core import Layout, VanishingTriple, make_layout, validate
from .errors import DegenerateVP, EmptyHypotheses, EmptyPool
from .render import RenderConfig, DEFAULT_RENDER
from .score import ScoreConfig, DEFAULT_SCORE, ScoredLayout, score_layout

_EPS = 1e-9


@dataclass(frozen=True)
class SamplingConfig:
    """Ray-sampling parameters (CLI flags --H --D --N --K1 --K2)."""

    sectors: int = 30
    min_contrast: float = 0.03
    rays_per_sector: int = 3
    max_from_sampling: int = 2
    max_from_pool: int = 2

    def __post_init__(self):
        if self.sectors < 3:
            raise ValueError("need at least 3 sectors")
        if self.min_contrast < 0:
            raise ValueError("contrast threshold must be >= 0")
        if self.rays_per_sector < 1:
            raise ValueError("need at least 1 ray per sector")
        if self.max_from_sampling < 1 or self.max_from_pool < 1:
            raise ValueError("hypothesis budgets must be >= 1")


DEFAULT_SAMPLING = SamplingConfig()


@dataclass(frozen=True)
class Ray:
    """Half-infinite line anchored at a vanishing point."""

    origin: tuple
    angle: float

    @property
    def direction(self):
        return (float(np.cos(self.angle)), float(np.sin(self.angle)))

    def line(self):
        return (self.origin, self.direction)


@dataclass(frozen=True)
class SectorProfile:
    """Per-sector mean edge strength as seen from one vanishing point."""

    vp: tuple
    count: int
    angles: np.ndarray  # count + 1 sector boundaries, increasing
    strengths: np.ndarray  # count values >= 0


@dataclass(frozen=True)
class LayoutPool:
    entries: tuple

    def __len__(self):
        return len(self.entries)


def make_pool(layouts) -> LayoutPool:
    """Build a pool, checking entry validity and equal frames."""
    entries = tuple(layouts)
    if entries:
        frame = entries[0].frame
        for i, entry in enumerate(entries):
            if entry.frame != frame:
                raise ValueError(f"pool entry {i} frame {entry.frame} != {frame}")
            if not validate(entry):
                raise ValueError(f"pool entry {i} is not a valid layout")
    return LayoutPool(entries)


def sector_profile(edges: np.ndarray, vp, n_sectors: int) -> SectorProfile:
    """Divide the view of the frame from ``vp`` into equal angular sectors.

    The angular interval is the one subtended by the four frame corners (the
    full circle when the vanishing point lies inside the frame); the strength
    of a sector is the mean edge value over pixels whose direction from the
    vanishing point falls inside it, zero for empty sectors.
    """
    E = np.asarray(edges, dtype=float)
    if E.ndim != 2 or E.shape[0] != E.shape[1]:
        raise ValueError("edge map must be square")
    w = E.shape[0]
    vx, vy = float(vp[0]), float(vp[1])
    cx = cy = (w + 1.0) / 2.0
    if np.hypot(vx - cx, vy - cy) < 1.0:
        raise DegenerateVP("vanishing point within 1 px of the frame center")

    corners = np.array(
        [[0.5, 0.5], [w + 0.5, 0.5], [w + 0.5, w + 0.5], [0.5, w + 0.5]], dtype=float
    )
    corner_angles = np.arctan2(corners[:, 1] - vy, corners[:, 0] - vx)
    inside = 0.5 <= vx <= w + 0.5 and 0.5 <= vy <= w + 0.5
    if inside:
        start = float(corner_angles.min())
        span = 2.0 * np.pi
    else:
        asort = np.sort(corner_angles)
        gaps = np.diff(np.concatenate([asort, [asort[0] + 2.0 * np.pi]]))
        widest = int(np.argmax(gaps))
        start = float(asort[(widest + 1) % 4])
        span = float(2.0 * np.pi - gaps[widest])

    us, vs = np.meshgrid(np.arange(1, w + 1, dtype=float), np.arange(1, w + 1, dtype=float))
    ang = np.arctan2(vs - vy, us - vx)
    rel = np.mod(ang - start, 2.0 * np.pi)
    idx = np.clip((rel / (span / n_sectors)).astype(int), 0, n_sectors - 1)

    sums = np.bincount(idx.ravel(), weights=E.ravel(), minlength=n_sectors)
    counts = np.bincount(idx.ravel(), minlength=n_sectors)
    strengths = np.divide(sums, counts, out=np.zeros(n_sectors), where=counts > 0)
    boundaries = start + span * np.arange(n_sectors + 1) / n_sectors
    return SectorProfile((vx, vy), n_sectors, boundaries, strengths)


def select_sectors(strengths, threshold: float):
    """Indices (0-based) of sectors passing the local-maximum conditions.

    With virtual zero strengths beyond both ends, sector i is selected iff
    it is a strict local maximum and it rises above at least one neighbor by
    more than ``threshold``.
    """
    d = np.asarray(strengths, dtype=float)
    padded = np.concatenate([[0.0], d, [0.0]])
    out = []
    for i in range(d.size):
        here, left, right = padded[i + 1], padded[i], padded[i + 2]
        if here > right and here > left and (here - right > threshold or here - left > threshold):
            out.append(i)
    return out


def sample_rays(profile: SectorProfile, selected, n_rays: int):
    """Uniformly place rays strictly inside each selected sector."""
    out = []
    for i in sorted(selected):
        a = float(profile.angles[i])
        b = float(profile.angles[i + 1])
        step = (b - a) / (n_rays + 1)
        out.append([Ray(profile.vp, a + k * step) for k in range(1, n_rays + 1)])
    return out


# ---------------------------------------------------------------------------
# composing layouts from lines


def _cross(l1, l2):
    return geo.intersect_lines(l1[0], l1[1], l2[0], l2[1])


def _inside(p, w):
    return p is not None and 1.0 <= p[0] <= w and 1.0 <= p[1] <= w


def _row_x(line, y, w):
    """x where the line crosses pixel row y, if within [1, w]."""
    p = _cross(line, ((1.0, float(y)), (1.0, 0.0)))
    if p is None or not (1.0 <= p[0] <= w):
        return None
    return p[0]


def _exit(p, d, w):
    if abs(d[0]) < _EPS and abs(d[1]) < _EPS:
        return None
    return geo.ray_rect_exit(p, d, 1.0, 1.0, float(w), float(w))


def _line_frame_crossings(line, w):
    """The two crossings of an infinite line with the [1, w] frame border."""
    (ox, oy), (dx, dy) = line
    pts = []
    if abs(dx) > _EPS:
        for xb in (1.0, float(w)):
            t = (xb - ox) / dx
            y = oy + t * dy
            if 1.0 - 1e-9 <= y <= w + 1e-9:
                pts.append((xb, min(max(y, 1.0), float(w))))
    if abs(dy) > _EPS:
        for yb in (1.0, float(w)):
            t = (yb - oy) / dy
            x = ox + t * dx
            if 1.0 - 1e-9 <= x <= w + 1e-9:
                pts.append((min(max(x, 1.0), float(w)), yb))
    dedup = []
    for p in pts:
        if all(np.hypot(p[0] - q[0], p[1] - q[1]) > 1e-6 for q in dedup):
            dedup.append(p)
    if len(dedup) != 2:
        return None
    return dedup


def _diag(corner, vp3):
    return (corner[0] - vp3[0], corner[1] - vp3[1])


def _build_full_box(vl, vr, ht, hb, vp3, w):
    tl = _cross(vl, ht)
    tr = _cross(vr, ht)
    br = _cross(vr, hb)
    bl = _cross(vl, hb)
    if not all(_inside(p, w) for p in (tl, tr, br, bl)):
        return None
    if not (tl[0] < tr[0] - _EPS and bl[0] < br[0] - _EPS):
        return None
    if not (tl[1] < bl[1] - _EPS and tr[1] < br[1] - _EPS):
        return None
    quad = (tl, tr, br, bl)
    for i in range(4):
        a, b, c = quad[i], quad[(i + 1) % 4], quad[(i + 2) % 4]
        if (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) <= _EPS:
            return None
    signs = ((-1, -1), (1, -1), (1, 1), (-1, 1))
    exits = []
    for corner, (sx, sy) in zip(quad, signs):
        d = _diag(corner, vp3)
        if sx * d[0] <= _EPS or sy * d[1] <= _EPS:
            return None
        e = _exit(corner, d, w)
        if e is None:
            return None
        exits.append(e)
    return make_layout(1, quad + tuple(exits), w)


def _build_open_vertical(vl, vr, h, vp3, w, missing_ceiling):
    """Types 2 (no ceiling) and 3 (no floor)."""
    pl = _cross(vl, h)
    pr = _cross(vr, h)
    if not (_inside(pl, w) and _inside(pr, w)) or not pl[0] < pr[0] - _EPS:
        return None
    border_row = 1 if missing_ceiling else w
    xl = _row_x(vl, border_row, w)
    xr = _row_x(vr, border_row, w)
    if xl is None or xr is None or not xl < xr - _EPS:
        return None
    sy = 1 if missing_ceiling else -1
    dl = _diag(pl, vp3)
    dr = _diag(pr, vp3)
    if dl[0] >= -_EPS or sy * dl[1] <= _EPS or dr[0] <= _EPS or sy * dr[1] <= _EPS:
        return None
    el = _exit(pl, dl, w)
    er = _exit(pr, dr, w)
    if el is None or er is None:
        return None
    tid = 2 if missing_ceiling else 3
    pts = (pl, pr, (xl, float(border_row)), (xr, float(border_row)), el, er)
    return make_layout(tid, pts, w)


def _build_corner(v, h, vp3, w, with_floor):
    """Types 4 (floor) and 5 (ceiling): one wall junction, one front edge."""
    c = _cross(v, h)
    if not _inside(c, w):
        return None
    dd = _diag(c, vp3)
    sy = 1 if with_floor else -1
    if abs(dd[0]) <= _EPS or sy * dd[1] <= _EPS:
        return None
    border_row = 1 if with_floor else w
    x2 = _row_x(v, border_row, w)
    if x2 is None:
        return None
    hd = h[1]
    if abs(hd[0]) <= _EPS:
        return None
    fd = hd if hd[0] * dd[0] < 0 else (-hd[0], -hd[1])
    p3 = _exit(c, fd, w)
    p4 = _exit(c, dd, w)
    if p3 is None or p4 is None:
        return None
    tid = 4 if with_floor else 5
    return make_layout(tid, (c, (x2, float(border_row)), p3, p4), w)


def _build_side_box(v, ht, hb, vp3, w):
    """Type 6: one wall junction crossed by both front edges."""
    ct = _cross(v, ht)
    cb = _cross(v, hb)
    if not (_inside(ct, w) and _inside(cb, w)) or not ct[1] < cb[1] - _EPS:
        return None
    dt = _diag(ct, vp3)
    db = _diag(cb, vp3)
    if dt[1] >= -_EPS or db[1] <= _EPS:
        return None
    if abs(dt[0]) <= _EPS or abs(db[0]) <= _EPS or dt[0] * db[0] <= 0:
        return None
    side_sign = 1.0 if dt[0] > 0 else -1.0
    pts_out = []
    for corner, hline in ((ct, ht), (cb, hb)):
        hd = hline[1]
        if abs(hd[0]) <= _EPS:
            return None
        fd = hd if hd[0] * side_sign < 0 else (-hd[0], -hd[1])
        e = _exit(corner, fd, w)
        if e is None:
            return None
        pts_out.append(e)
    e5 = _exit(ct, dt, w)
    e6 = _exit(cb, db, w)
    if e5 is None or e6 is None:
        return None
    return make_layout(6, (ct, cb, pts_out[0], pts_out[1], e5, e6), w)


def _build_bands(ht, hb, w):
    """Type 7: ceiling and floor lines spanning the frame."""
    top = _line_frame_crossings(ht, w)
    bot = _line_frame_crossings(hb, w)
    if top is None or bot is None:
        return None
    x = _cross(ht, hb)
    if x is not None and 0.0 <= x[0] <= w + 1 and 0.0 <= x[1] <= w + 1:
        return None
    top = sorted(top, key=lambda p: p[0])
    bot = sorted(bot, key=lambda p: p[0])
    if (top[0][1] + top[1][1]) / 2.0 >= (bot[0][1] + bot[1][1]) / 2.0 - _EPS:
        return None
    return make_layout(7, (top[0], top[1], bot[0], bot[1]), w)


def _build_corner_walls(v, h, vp3, w):
    """Type 8: type-4 geometry read as a wall-wall junction over the floor."""
    base = _build_corner(v, h, vp3, w, with_floor=True)
    if base is None:
        return None
    c, p2, p3, p4 = base.points
    if p4[0] < c[0]:
        left_end, right_end = p4, p3
    else:
        left_end, right_end = p3, p4
    return make_layout(8, (c, p2, left_end, right_end), w)


def _build_floor_line(h, w):
    pts = _line_frame_crossings(h, w)
    if pts is None:
        return None
    pts = sorted(pts, key=lambda p: p[0])
    return make_layout(9, (pts[0], pts[1]), w)


def _build_wall_line(v, w):
    pts = _line_frame_crossings(v, w)
    if pts is None:
        return None
    pts = sorted(pts, key=lambda p: p[1])
    return make_layout(10, (pts[0], pts[1]), w)


def _build_front_only(w):
    return make_layout(11, ((1.0, 1.0), (float(w), float(w))), w)


def _sorted_vertical(pair, w):
    xs = [_row_x(line, (w + 1) / 2.0, w) for line in pair]
    if xs[0] is None or xs[1] is None:
        mids = [_cross(line, ((1.0, (w + 1) / 2.0), (1.0, 0.0))) for line in pair]
        xs = [m[0] if m is not None else None for m in mids]
        if xs[0] is None or xs[1] is None:
            return None
    return pair if xs[0] < xs[1] else (pair[1], pair[0])


def _sorted_horizontal(pair, w):
    mid = (w + 1) / 2.0
    ys = []
    for line in pair:
        p = _cross(line, ((mid, 1.0), (0.0, 1.0)))
        if p is None:
            return None
        ys.append(p[1])
    return pair if ys[0] < ys[1] else (pair[1], pair[0])


def build_layout(type_id, vertical_lines, horizontal_lines, vp3, frame_w):
    """Compose one layout of the given type from boundary lines.

    Lines are (origin, direction) pairs; returns None when the configuration
    is degenerate for the requested type.
    """
    w = frame_w
    v = list(vertical_lines)
    h = list(horizontal_lines)
    if type_id == 1:
        vs = _sorted_vertical((v[0], v[1]), w)
        hs = _sorted_horizontal((h[0], h[1]), w)
        if vs is None or hs is None:
            return None
        return _build_full_box(vs[0], vs[1], hs[0], hs[1], vp3, w)
    if type_id in (2, 3):
        vs = _sorted_vertical((v[0], v[1]), w)
        if vs is None:
            return None
        return _build_open_vertical(vs[0], vs[1], h[0], vp3, w, missing_ceiling=(type_id == 2))
    if type_id in (4, 5):
        return _build_corner(v[0], h[0], vp3, w, with_floor=(type_id == 4))
    if type_id == 6:
        hs = _sorted_horizontal((h[0], h[1]), w)
        if hs is None:
            return None
        return _build_side_box(v[0], hs[0], hs[1], vp3, w)
    if type_id == 7:
        hs = _sorted_horizontal((h[0], h[1]), w)
        if hs is None:
            return None
        return _build_bands(hs[0], hs[1], w)
    if type_id == 8:
        return _build_corner_walls(v[0], h[0], vp3, w)
    if type_id == 9:
        return _build_floor_line(h[0], w)
    if type_id == 10:
        return _build_wall_line(v[0], w)
    if type_id == 11:
        return _build_front_only(w)
    raise ValueError(f"unknown type id {type_id}")


def compose_layouts(rays_vertical, rays_horizontal, vps: VanishingTriple, frame_w: int):
    """Enumerate candidate layouts from sampled rays.

    ``rays_vertical`` / ``rays_horizontal`` group rays by selected sector.
    Singles use any one ray; pairs take one ray from each of two distinct
    sectors (a box never has two boundaries inside one sector).  Degenerate
    combinations are silently dropped; the zero-ray combination always
    contributes the whole-frame layout.
    """
    w = frame_w
    vp3 = vps.vp3

    v_singles = [r.line() for sec in rays_vertical for r in sec]
    h_singles = [r.line() for sec in rays_horizontal for r in sec]
    v_pairs = [
        (a.line(), b.line())
        for i, j in combinations(range(len(rays_vertical)), 2)
        for a in rays_vertical[i]
        for b in rays_vertical[j]
    ]
    h_pairs = [
        (a.line(), b.line())
        for i, j in combinations(range(len(rays_horizontal)), 2)
        for a in rays_horizontal[i]
        for b in rays_horizontal[j]
    ]

    candidates = [_build_front_only(w)]
    for h in h_singles:
        candidates.append(build_layout(9, [], [h], vp3, w))
    for v in v_singles:
        candidates.append(build_layout(10, [v], [], vp3, w))
    for hp in h_pairs:
        candidates.append(build_layout(7, [], list(hp), vp3, w))
    for v in v_singles:
        for h in h_singles:
            candidates.append(build_layout(4, [v], [h], vp3, w))
            candidates.append(build_layout(5, [v], [h], vp3, w))
    for v in v_singles:
        for hp in h_pairs:
            candidates.append(build_layout(6, [v], list(hp), vp3, w))
    for vp_pair in v_pairs:
        for h in h_singles:
            candidates.append(build_layout(2, list(vp_pair), [h], vp3, w))
            candidates.append(build_layout(3, list(vp_pair), [h], vp3, w))
    for vp_pair in v_pairs:
        for hp in h_pairs:
            candidates.append(build_layout(1, list(vp_pair), list(hp), vp3, w))

    return [c for c in candidates if c is not None and validate(c)]


# ---------------------------------------------------------------------------
# hypothesis ranking


def _top_per_type(scored, limit):
    best = {}
    order = {}
    for i, s in enumerate(scored):
        tid = s.layout.type_id
        if tid not in best or s.score > best[tid].score:
            best[tid] = s
            order[tid] = i
    ranked = sorted(best.values(), key=lambda s: (-s.score, order[s.layout.type_id]))
    return ranked[:limit]


def hypotheses_from_sampling(
    edges: np.ndarray,
    seg: np.ndarray,
    vps: VanishingTriple,
    sampling: SamplingConfig = DEFAULT_SAMPLING,
    score_cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
):
    """Rank ray-sampled layouts; keep the best of each type, then the top K1."""
    w = np.asarray(edges).shape[0]
    prof_v = sector_profile(edges, vps.vp1, sampling.sectors)
    prof_h = sector_profile(edges, vps.vp2, sampling.sectors)
    rays_v = sample_rays(prof_v, select_sectors(prof_v.strengths, sampling.min_contrast),
                         sampling.rays_per_sector)
    rays_h = sample_rays(prof_h, select_sectors(prof_h.strengths, sampling.min_contrast),
                         sampling.rays_per_sector)
    candidates = compose_layouts(rays_v, rays_h, vps, w)
    if not candidates:
        raise EmptyHypotheses("ray sampling produced no valid layout")
    scored = [score_layout(c, seg, edges, score_cfg, render_cfg) for c in candidates]
    return _top_per_type(scored, sampling.max_from_sampling)


def hypotheses_from_pool(
    pool: LayoutPool,
    seg: np.ndarray,
    edges: np.ndarray,
    max_kept: int = 2,
    score_cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
):
    """Score every pool entry; keep the best of each type, then the top K2."""
    if len(pool) == 0:
        raise EmptyPool("layout pool is empty")
    scored = [
        score_layout(entry, seg, edges, score_cfg, render_cfg, cached=True)
        for entry in pool.entries
    ]
    return _top_per_type(scored, max_kept)


def _layout_key(layout: Layout):
    pts = tuple((int(round(x * 1e6)), int(round(y * 1e6))) for x, y in layout.points)
    return (layout.type_id, layout.frame, pts)


def merge_hypotheses(from_sampling, from_pool):
    """Union of the two hypothesis lists with exact duplicates removed."""
    out = []
    seen = set()
    for s in list(from_sampling) + list(from_pool):
        key = _layout_key(s.layout)
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out
