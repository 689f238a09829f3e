"""Low-level planar geometry helpers.

Coordinates are pixel units with the origin at the top-left, x growing
rightward and y growing downward.  Pixel (u, v) has its center at the
continuous point (u, v); a w-by-h frame therefore spans the rectangle
[0.5, w + 0.5] x [0.5, h + 0.5].
"""

from __future__ import annotations

import numpy as np

ON_BOUNDARY_TOL = 1e-9
LOCATE_TOL = 1e-6


class GeometrySplitError(Exception):
    """Polygon could not be split by the requested chain."""


def intersect_lines(o1, d1, o2, d2):
    """Intersection of two infinite lines given as origin + direction.

    Returns None when the lines are (near-)parallel.
    """
    o1 = np.asarray(o1, dtype=float)
    d1 = np.asarray(d1, dtype=float)
    o2 = np.asarray(o2, dtype=float)
    d2 = np.asarray(d2, dtype=float)
    det = d1[0] * d2[1] - d1[1] * d2[0]
    scale = max(np.hypot(*d1) * np.hypot(*d2), 1e-300)
    if abs(det) < 1e-12 * scale:
        return None
    diff = o2 - o1
    t = (diff[0] * d2[1] - diff[1] * d2[0]) / det
    return (float(o1[0] + t * d1[0]), float(o1[1] + t * d1[1]))


def ray_rect_exit(origin, direction, x0, y0, x1, y1):
    """First crossing of the ray origin + t*direction (t > 0) with a rectangle.

    Assumes the origin lies inside the rectangle; returns None when the ray
    never reaches the border (zero direction).
    """
    ox, oy = float(origin[0]), float(origin[1])
    dx, dy = float(direction[0]), float(direction[1])
    best = None
    if dx != 0.0:
        for xb in (x0, x1):
            t = (xb - ox) / dx
            if t > 1e-12:
                y = oy + t * dy
                if y0 - 1e-9 <= y <= y1 + 1e-9 and (best is None or t < best[0]):
                    best = (t, (xb, min(max(y, y0), y1)))
    if dy != 0.0:
        for yb in (y0, y1):
            t = (yb - oy) / dy
            if t > 1e-12:
                x = ox + t * dx
                if x0 - 1e-9 <= x <= x1 + 1e-9 and (best is None or t < best[0]):
                    best = (t, (min(max(x, x0), x1), yb))
    return None if best is None else best[1]


def polygon_area(poly) -> float:
    """Absolute shoelace area."""
    p = np.asarray(poly, dtype=float)
    x = p[:, 0]
    y = p[:, 1]
    return float(abs(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1))) / 2.0)


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _segments_cross(p1, p2, q1, q2, tol=1e-12):
    """True when segments p1p2 and q1q2 properly intersect or overlap."""
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    if ((d1 > tol and d2 < -tol) or (d1 < -tol and d2 > tol)) and (
        (d3 > tol and d4 < -tol) or (d3 < -tol and d4 > tol)
    ):
        return True
    # collinear overlap
    if abs(d1) <= tol and abs(d2) <= tol and abs(d3) <= tol and abs(d4) <= tol:
        for (a, b), (c, d) in (((p1, p2), (q1, q2)),):
            lo0, hi0 = sorted((a[0], b[0]))
            lo1, hi1 = sorted((c[0], d[0]))
            lo2, hi2 = sorted((a[1], b[1]))
            lo3, hi3 = sorted((c[1], d[1]))
            if min(hi0, hi1) - max(lo0, lo1) > 1e-9 or min(hi2, hi3) - max(lo2, lo3) > 1e-9:
                return True
    return False


def is_simple_polygon(poly) -> bool:
    """Check that no pair of non-adjacent edges intersects."""
    p = [tuple(map(float, q)) for q in poly]
    n = len(p)
    if n < 3:
        return False
    for i in range(n):
        a1 = p[i]
        a2 = p[(i + 1) % n]
        if np.hypot(a2[0] - a1[0], a2[1] - a1[1]) < 1e-12:
            continue
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue
            b1 = p[j]
            b2 = p[(j + 1) % n]
            if _segments_cross(a1, a2, b1, b2):
                return False
    return True


def point_in_polygon(pt, poly) -> bool:
    """Strict interior test via crossing number (boundary points unreliable)."""
    x, y = float(pt[0]), float(pt[1])
    p = np.asarray(poly, dtype=float)
    x1 = p[:, 0]
    y1 = p[:, 1]
    x2 = np.roll(x1, -1)
    y2 = np.roll(y1, -1)
    straddle = (y1 <= y) != (y2 <= y)
    if not straddle.any():
        return False
    xs = x1[straddle] + (y - y1[straddle]) * (x2[straddle] - x1[straddle]) / (
        y2[straddle] - y1[straddle]
    )
    return bool(np.count_nonzero(xs > x) % 2 == 1)


def _dedupe_ring(pts, tol=1e-9):
    out = []
    for q in pts:
        if not out or np.hypot(q[0] - out[-1][0], q[1] - out[-1][1]) > tol:
            out.append((float(q[0]), float(q[1])))
    while len(out) > 1 and np.hypot(out[0][0] - out[-1][0], out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return out


def _locate_on_boundary(poly, pt, tol):
    """Position of pt on the polygon boundary as (edge index, param) or None."""
    n = len(poly)
    px, py = float(pt[0]), float(pt[1])
    best = None
    for i in range(n):
        ax, ay = poly[i]
        bx, by = poly[(i + 1) % n]
        ux, uy = bx - ax, by - ay
        L2 = ux * ux + uy * uy
        if L2 < 1e-24:
            continue
        t = ((px - ax) * ux + (py - ay) * uy) / L2
        t = min(max(t, 0.0), 1.0)
        qx, qy = ax + t * ux, ay + t * uy
        d = np.hypot(px - qx, py - qy)
        if d <= tol and (best is None or d < best[0]):
            best = (d, i, t)
    if best is None:
        return None
    return best[1], best[2]


def split_polygon(poly, chain, tol=LOCATE_TOL):
    """Split a simple polygon by a chain whose endpoints lie on its boundary.

    Returns the two pieces as vertex lists.  The chain's interior must stay
    inside the polygon; violations surface later as non-simple pieces.
    """
    ring = _dedupe_ring(poly)
    n = len(ring)
    if n < 3:
        raise GeometrySplitError("degenerate polygon")
    chain = [(float(p[0]), float(p[1])) for p in chain]
    loc_a = _locate_on_boundary(ring, chain[0], tol)
    loc_b = _locate_on_boundary(ring, chain[-1], tol)
    if loc_a is None or loc_b is None:
        raise GeometrySplitError("chain endpoint not on polygon boundary")

    def walk(frm, to):
        (ia, ta), (ib, tb) = frm, to
        if ia == ib and ta <= tb + 1e-12:
            return []
        out = []
        i = ia
        for _ in range(n + 1):
            i = (i + 1) % n
            out.append(ring[i])
            if i == ib:
                return out
        raise GeometrySplitError("boundary walk failed")

    piece_a = _dedupe_ring(chain + walk(loc_b, loc_a))
    piece_b = _dedupe_ring(chain[::-1] + walk(loc_a, loc_b))
    if len(piece_a) < 3 or len(piece_b) < 3:
        raise GeometrySplitError("split produced a degenerate piece")
    return piece_a, piece_b


def polygon_pixel_mask(poly, width, height):
    """Pixels whose center lies inside or on the (closed) polygon.

    Interior coverage uses an even-odd scanline; centers lying exactly on an
    edge (within ON_BOUNDARY_TOL) are marked in a separate pass so that closed
    semantics hold regardless of fill parity.
    """
    tol = ON_BOUNDARY_TOL
    p = np.asarray(poly, dtype=float)
    x1 = p[:, 0]
    y1 = p[:, 1]
    x2 = np.roll(x1, -1)
    y2 = np.roll(y1, -1)

    rows_all = []
    xs_all = []
    for i in range(len(p)):
        if y1[i] == y2[i]:
            continue
        ylo = min(y1[i], y2[i])
        yhi = max(y1[i], y2[i])
        vs = np.arange(int(np.ceil(ylo)), int(np.ceil(yhi)))
        vs = vs[(vs >= 1) & (vs <= height)]
        if vs.size == 0:
            continue
        xc = x1[i] + (vs - y1[i]) * (x2[i] - x1[i]) / (y2[i] - y1[i])
        rows_all.append(vs)
        xs_all.append(xc)

    interior = np.zeros((height, width), dtype=bool)
    if rows_all:
        rows = np.concatenate(rows_all)
        xs = np.concatenate(xs_all)
        order = np.lexsort((xs, rows))
        rows = rows[order]
        xs = xs[order]
        # index of each crossing within its row
        row_start = np.r_[True, rows[1:] != rows[:-1]]
        start_pos = np.flatnonzero(row_start)
        within = np.arange(rows.size) - np.repeat(start_pos, np.diff(np.r_[start_pos, rows.size]))
        opens = within % 2 == 0
        if opens.sum() == (~opens).sum():
            a = xs[opens]
            b = xs[~opens]
            rv = rows[opens]
            lo = np.floor(a).astype(int) + 1
            hi = np.ceil(b).astype(int) - 1
            lo = np.maximum(lo, 1)
            hi = np.minimum(hi, width)
            keep = hi >= lo
            if keep.any():
                rv = rv[keep]
                lo = lo[keep]
                hi = hi[keep]
                rmin = int(rv.min())
                rmax = int(rv.max())
                cmin = int(lo.min())
                cmax = int(hi.max())
                delta = np.zeros((rmax - rmin + 1, cmax - cmin + 2), dtype=np.int32)
                np.add.at(delta, (rv - rmin, lo - cmin), 1)
                np.add.at(delta, (rv - rmin, hi - cmin + 1), -1)
                interior[rmin - 1 : rmax, cmin - 1 : cmax] = (
                    np.cumsum(delta, axis=1)[:, :-1] > 0
                )

    boundary = np.zeros((height, width), dtype=bool)
    for i in range(len(p)):
        dx = x2[i] - x1[i]
        dy = y2[i] - y1[i]
        if abs(dy) <= tol:
            v = np.rint(y1[i])
            if abs(y1[i] - v) <= tol and 1 <= v <= height:
                ulo = int(np.ceil(min(x1[i], x2[i]) - tol))
                uhi = int(np.floor(max(x1[i], x2[i]) + tol))
                ulo = max(ulo, 1)
                uhi = min(uhi, width)
                if uhi >= ulo:
                    boundary[int(v) - 1, ulo - 1 : uhi] = True
            continue
        ylo = min(y1[i], y2[i]) - tol
        yhi = max(y1[i], y2[i]) + tol
        vs = np.arange(max(int(np.ceil(ylo)), 1), min(int(np.floor(yhi)), height) + 1)
        if vs.size == 0:
            continue
        xc = x1[i] + (vs - y1[i]) * dx / dy
        us = np.rint(xc)
        on = (np.abs(xc - us) <= tol) & (us >= 1) & (us <= width)
        if on.any():
            boundary[vs[on] - 1, us[on].astype(int) - 1] = True

    return interior | boundary


def segment_distance_mask(segments, width, height, radius):
    """Binary map of pixel centers within `radius` of any segment (round caps)."""
    out = np.zeros((height, width), dtype=np.float32)
    r2 = float(radius) * float(radius)
    for (a, b) in segments:
        ax, ay = float(a[0]), float(a[1])
        bx, by = float(b[0]), float(b[1])
        ulo = max(int(np.floor(min(ax, bx) - radius)) , 1)
        uhi = min(int(np.ceil(max(ax, bx) + radius)), width)
        vlo = max(int(np.floor(min(ay, by) - radius)), 1)
        vhi = min(int(np.ceil(max(ay, by) + radius)), height)
        if uhi < ulo or vhi < vlo:
            continue
        uu = np.arange(ulo, uhi + 1, dtype=float)
        vv = np.arange(vlo, vhi + 1, dtype=float)
        gx, gy = np.meshgrid(uu, vv)
        ex, ey = bx - ax, by - ay
        L2 = ex * ex + ey * ey
        if L2 < 1e-24:
            d2 = (gx - ax) ** 2 + (gy - ay) ** 2
        else:
            t = np.clip(((gx - ax) * ex + (gy - ay) * ey) / L2, 0.0, 1.0)
            d2 = (gx - (ax + t * ex)) ** 2 + (gy - (ay + t * ey)) ** 2
        hit = d2 <= r2 + 1e-9
        if hit.any():
            sub = out[vlo - 1 : vhi, ulo - 1 : uhi]
            sub[hit] = 1.0
    return out
