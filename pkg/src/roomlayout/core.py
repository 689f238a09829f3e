"""Layout parameterization: the 11 box types, face partitions, validation.

A layout is a type id plus an ordered tuple of corner points inside a frame.
Corner coordinates are pixel units in [1, w] (origin top-left, y downward);
the continuous frame covered by the pixel grid is [0.5, w + 0.5] squared, and
the face polygons returned by :func:`faces_of` tile exactly that rectangle.

The per-type corner ordering and face structure follow the topology table
below (see docs/topology.md for diagrams).  The ordering is a repo
convention; pixel-level scoring is insensitive to it because wall labels are
matched by permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from . import _geometry as geo
from ._geometry import GeometrySplitError
from .errors import DegenerateTarget, InvalidTopology


class SurfaceLabel(IntEnum):
    CEILING = 1
    FLOOR = 2
    FRONT_WALL = 3
    LEFT_WALL = 4
    RIGHT_WALL = 5


WALL_LABELS = (SurfaceLabel.FRONT_WALL, SurfaceLabel.LEFT_WALL, SurfaceLabel.RIGHT_WALL)

INTERIOR = "interior"
BORDER = "border"


@dataclass(frozen=True)
class LayoutType:
    """Static topology of one of the 11 layout types.

    ``possible_faces`` is the superset of labels a valid instance may show;
    types whose single side wall can sit on either side of the frame list
    both LEFT_WALL and RIGHT_WALL here.
    """

    type_id: int
    corner_count: int
    possible_faces: frozenset
    corner_roles: tuple
    description: str


def _lt(tid, roles, faces, desc):
    return LayoutType(
        type_id=tid,
        corner_count=len(roles),
        possible_faces=frozenset(faces),
        corner_roles=tuple(roles),
        description=desc,
    )


_C = SurfaceLabel.CEILING
_F = SurfaceLabel.FLOOR
_FR = SurfaceLabel.FRONT_WALL
_L = SurfaceLabel.LEFT_WALL
_R = SurfaceLabel.RIGHT_WALL

TOPOLOGY = {
    1: _lt(
        1,
        (INTERIOR,) * 4 + (BORDER,) * 4,
        (_C, _F, _FR, _L, _R),
        "full box: frontal quad p1..p4 (TL,TR,BR,BL) with border diagonal "
        "ends p5..p8 from each quad corner",
    ),
    2: _lt(
        2,
        (INTERIOR, INTERIOR, BORDER, BORDER, BORDER, BORDER),
        (_F, _FR, _L, _R),
        "no ceiling: interior floor corners p1,p2 (L,R); p3,p4 top-border "
        "ends of the wall verticals; p5,p6 floor diagonal ends",
    ),
    3: _lt(
        3,
        (INTERIOR, INTERIOR, BORDER, BORDER, BORDER, BORDER),
        (_C, _FR, _L, _R),
        "no floor: interior ceiling corners p1,p2 (L,R); p3,p4 bottom-border "
        "ends of the wall verticals; p5,p6 ceiling diagonal ends",
    ),
    4: _lt(
        4,
        (INTERIOR, BORDER, BORDER, BORDER),
        (_F, _FR, _L, _R),
        "side wall + frontal wall + floor: interior corner p1; p2 top-border "
        "end of the wall vertical; p3 floor-front edge end; p4 floor-side "
        "diagonal end",
    ),
    5: _lt(
        5,
        (INTERIOR, BORDER, BORDER, BORDER),
        (_C, _FR, _L, _R),
        "side wall + frontal wall + ceiling: mirror of type 4 about the "
        "horizontal axis (p2 on the bottom border)",
    ),
    6: _lt(
        6,
        (INTERIOR, INTERIOR, BORDER, BORDER, BORDER, BORDER),
        (_C, _F, _FR, _L, _R),
        "side wall + frontal wall + ceiling + floor: interior corners p1 "
        "(top), p2 (bottom); p3,p4 front edge ends; p5,p6 diagonal ends",
    ),
    7: _lt(
        7,
        (BORDER,) * 4,
        (_C, _F, _FR),
        "ceiling + frontal wall + floor: ceiling line p1,p2 and floor line "
        "p3,p4, each spanning the frame",
    ),
    8: _lt(
        8,
        (INTERIOR, BORDER, BORDER, BORDER),
        (_F, _L, _R),
        "two walls + floor (corner view): interior corner p1; p2 top-border "
        "end of the wall junction; p3,p4 left/right floor edge ends",
    ),
    9: _lt(
        9,
        (BORDER, BORDER),
        (_F, _FR),
        "frontal wall over floor: single floor line p1,p2 spanning the frame",
    ),
    10: _lt(
        10,
        (BORDER, BORDER),
        (_L, _R),
        "two walls: single vertical junction line p1 (top), p2 (bottom)",
    ),
    11: _lt(
        11,
        (BORDER, BORDER),
        (_FR,),
        "frontal wall fills the frame; p1,p2 are fixed reference corners at "
        "(1,1) and (w,h)",
    ),
}


@dataclass(frozen=True)
class Layout:
    """A parameterized layout: type id, ordered corners, frame size."""

    type_id: int
    points: tuple
    frame: tuple

    @property
    def layout_type(self) -> LayoutType:
        return TOPOLOGY[self.type_id]

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float)

    def with_point(self, index: int, point) -> "Layout":
        pts = list(self.points)
        pts[index] = (float(point[0]), float(point[1]))
        return Layout(self.type_id, tuple(pts), self.frame)


def make_layout(type_id, points, frame) -> Layout:
    """Normalize raw point/frame data into a Layout value."""
    if isinstance(frame, (int, np.integer)):
        frame = (int(frame), int(frame))
    pts = tuple((float(p[0]), float(p[1])) for p in points)
    return Layout(int(type_id), pts, (int(frame[0]), int(frame[1])))


@dataclass(frozen=True)
class VanishingTriple:
    """Ordered vanishing points: vertical, farther horizontal, closer horizontal."""

    vp1: tuple
    vp2: tuple
    vp3: tuple

    def __post_init__(self):
        pts = [self.vp1, self.vp2, self.vp3]
        for i in range(3):
            for j in range(i + 1, 3):
                if np.hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]) < 1e-9:
                    raise ValueError("vanishing points must be pairwise distinct")


# ---------------------------------------------------------------------------
# face construction


def _rect(frame):
    w, h = frame
    return [(0.5, 0.5), (w + 0.5, 0.5), (w + 0.5, h + 0.5), (0.5, h + 0.5)]


def _ext(p_from, p_through, frame):
    """Exit point of the ray p_from -> p_through on the outer frame rectangle."""
    w, h = frame
    d = (p_through[0] - p_from[0], p_through[1] - p_from[1])
    if abs(d[0]) < 1e-12 and abs(d[1]) < 1e-12:
        raise InvalidTopology("coincident points define no direction")
    out = geo.ray_rect_exit(p_from, d, 0.5, 0.5, w + 0.5, h + 0.5)
    if out is None:
        raise InvalidTopology("ray does not reach the frame border")
    return out


def _split(poly, chain):
    try:
        return geo.split_polygon(poly, chain)
    except GeometrySplitError as exc:
        raise InvalidTopology(str(exc)) from exc


def _pick(pieces, inside_pt):
    """Return (piece containing inside_pt, the other piece)."""
    a, b = pieces
    ina = geo.point_in_polygon(inside_pt, a)
    inb = geo.point_in_polygon(inside_pt, b)
    if ina == inb:
        raise InvalidTopology("ambiguous face assignment")
    return (a, b) if ina else (b, a)


def _unit(v):
    n = np.hypot(v[0], v[1])
    if n < 1e-12:
        raise InvalidTopology("zero-length direction")
    return (v[0] / n, v[1] / n)


def _wedge_witness(corner, toward_a, toward_b, eps=0.25):
    ua = _unit((toward_a[0] - corner[0], toward_a[1] - corner[1]))
    ub = _unit((toward_b[0] - corner[0], toward_b[1] - corner[1]))
    s = (ua[0] + ub[0], ua[1] + ub[1])
    n = np.hypot(s[0], s[1])
    if n < 1e-9:
        raise InvalidTopology("degenerate corner wedge")
    return (corner[0] + eps * s[0] / n, corner[1] + eps * s[1] / n)


def _offset_witness(p, q, upward, eps=0.25):
    """Point eps off the midpoint of pq, on the upward (or downward) side."""
    d = _unit((q[0] - p[0], q[1] - p[1]))
    n = (d[1], -d[0])  # points up for a left-to-right direction
    if (n[1] > 0) == upward:
        n = (-n[0], -n[1])
    mx, my = (p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0
    return (mx + eps * n[0], my + eps * n[1])


def _side_witness(p, q, leftward, eps=0.25):
    d = _unit((q[0] - p[0], q[1] - p[1]))
    n = (-d[1], d[0])  # points left for a downward direction
    if (n[0] > 0) == leftward:
        n = (-n[0], -n[1])
    mx, my = (p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0
    return (mx + eps * n[0], my + eps * n[1])


def _faces_type1(pts, frame):
    p1, p2, p3, p4, p5, p6, p7, p8 = pts
    quad = [p1, p2, p3, p4]
    c = tuple(np.mean(np.asarray(quad), axis=0))
    rest, ceiling = _pick(_split(_rect(frame), [_ext(p1, p5, frame), p1, p2, _ext(p2, p6, frame)]), c)
    rest, floor = _pick(_split(rest, [_ext(p4, p8, frame), p4, p3, _ext(p3, p7, frame)]), c)
    rest, left = _pick(_split(rest, [p1, p4]), c)
    front, right = _pick(_split(rest, [p2, p3]), c)
    return [
        (SurfaceLabel.CEILING, ceiling),
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.FRONT_WALL, front),
        (SurfaceLabel.LEFT_WALL, left),
        (SurfaceLabel.RIGHT_WALL, right),
    ]


def _faces_type2(pts, frame):
    p1, p2, p3, p4, p5, p6 = pts
    c = tuple(np.mean(np.asarray([p3, p4, p2, p1]), axis=0))
    rest, floor = _pick(_split(_rect(frame), [_ext(p1, p5, frame), p1, p2, _ext(p2, p6, frame)]), c)
    rest, left = _pick(_split(rest, [_ext(p1, p3, frame), p1]), c)
    front, right = _pick(_split(rest, [_ext(p2, p4, frame), p2]), c)
    return [
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.FRONT_WALL, front),
        (SurfaceLabel.LEFT_WALL, left),
        (SurfaceLabel.RIGHT_WALL, right),
    ]


def _faces_type3(pts, frame):
    p1, p2, p3, p4, p5, p6 = pts
    c = tuple(np.mean(np.asarray([p1, p2, p4, p3]), axis=0))
    rest, ceiling = _pick(_split(_rect(frame), [_ext(p1, p5, frame), p1, p2, _ext(p2, p6, frame)]), c)
    rest, left = _pick(_split(rest, [_ext(p1, p3, frame), p1]), c)
    front, right = _pick(_split(rest, [_ext(p2, p4, frame), p2]), c)
    return [
        (SurfaceLabel.CEILING, ceiling),
        (SurfaceLabel.FRONT_WALL, front),
        (SurfaceLabel.LEFT_WALL, left),
        (SurfaceLabel.RIGHT_WALL, right),
    ]


def _faces_type4(pts, frame):
    p1, p2, p3, p4 = pts
    up = _unit((p2[0] - p1[0], p2[1] - p1[1]))
    wall_witness = (p1[0] + 0.25 * up[0], p1[1] + 0.25 * up[1])
    walls, floor = _pick(
        _split(_rect(frame), [_ext(p1, p4, frame), p1, _ext(p1, p3, frame)]), wall_witness
    )
    front, side = _pick(_split(walls, [_ext(p1, p2, frame), p1]), _wedge_witness(p1, p2, p3))
    side_label = SurfaceLabel.LEFT_WALL if p4[0] < p1[0] else SurfaceLabel.RIGHT_WALL
    return [
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.FRONT_WALL, front),
        (side_label, side),
    ]


def _faces_type5(pts, frame):
    p1, p2, p3, p4 = pts
    down = _unit((p2[0] - p1[0], p2[1] - p1[1]))
    wall_witness = (p1[0] + 0.25 * down[0], p1[1] + 0.25 * down[1])
    walls, ceiling = _pick(
        _split(_rect(frame), [_ext(p1, p4, frame), p1, _ext(p1, p3, frame)]), wall_witness
    )
    front, side = _pick(_split(walls, [_ext(p1, p2, frame), p1]), _wedge_witness(p1, p2, p3))
    side_label = SurfaceLabel.LEFT_WALL if p4[0] < p1[0] else SurfaceLabel.RIGHT_WALL
    return [
        (SurfaceLabel.CEILING, ceiling),
        (SurfaceLabel.FRONT_WALL, front),
        (side_label, side),
    ]


def _faces_type6(pts, frame):
    p1, p2, p3, p4, p5, p6 = pts
    m = ((p1[0] + p2[0]) / 2.0, (p1[1] + p2[1]) / 2.0)
    rest, ceiling = _pick(
        _split(_rect(frame), [_ext(p1, p5, frame), p1, _ext(p1, p3, frame)]), m
    )
    rest, floor = _pick(_split(rest, [_ext(p2, p6, frame), p2, _ext(p2, p4, frame)]), m)
    front, side = _pick(_split(rest, [p1, p2]), _wedge_witness(p1, p3, p2))
    side_label = SurfaceLabel.LEFT_WALL if p5[0] < p1[0] else SurfaceLabel.RIGHT_WALL
    return [
        (SurfaceLabel.CEILING, ceiling),
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.FRONT_WALL, front),
        (side_label, side),
    ]


def _faces_type7(pts, frame):
    p1, p2, p3, p4 = pts
    top_chain = [_ext(p2, p1, frame), _ext(p1, p2, frame)]
    ceiling, rest = _pick(_split(_rect(frame), top_chain), _offset_witness(p1, p2, upward=True))
    bot_chain = [_ext(p4, p3, frame), _ext(p3, p4, frame)]
    front, floor = _pick(_split(rest, bot_chain), _offset_witness(p3, p4, upward=True))
    return [
        (SurfaceLabel.CEILING, ceiling),
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.FRONT_WALL, front),
    ]


def _faces_type8(pts, frame):
    p1, p2, p3, p4 = pts
    up = _unit((p2[0] - p1[0], p2[1] - p1[1]))
    wall_witness = (p1[0] + 0.25 * up[0], p1[1] + 0.25 * up[1])
    walls, floor = _pick(
        _split(_rect(frame), [_ext(p1, p3, frame), p1, _ext(p1, p4, frame)]), wall_witness
    )
    left, right = _pick(_split(walls, [_ext(p1, p2, frame), p1]), _wedge_witness(p1, p2, p3))
    return [
        (SurfaceLabel.FLOOR, floor),
        (SurfaceLabel.LEFT_WALL, left),
        (SurfaceLabel.RIGHT_WALL, right),
    ]


def _faces_type9(pts, frame):
    p1, p2 = pts
    chain = [_ext(p2, p1, frame), _ext(p1, p2, frame)]
    front, floor = _pick(_split(_rect(frame), chain), _offset_witness(p1, p2, upward=True))
    return [(SurfaceLabel.FLOOR, floor), (SurfaceLabel.FRONT_WALL, front)]


def _faces_type10(pts, frame):
    p1, p2 = pts
    chain = [_ext(p2, p1, frame), _ext(p1, p2, frame)]
    left, right = _pick(_split(_rect(frame), chain), _side_witness(p1, p2, leftward=True))
    return [(SurfaceLabel.LEFT_WALL, left), (SurfaceLabel.RIGHT_WALL, right)]


def _faces_type11(pts, frame):
    return [(SurfaceLabel.FRONT_WALL, _rect(frame))]


_FACE_BUILDERS = {
    1: _faces_type1,
    2: _faces_type2,
    3: _faces_type3,
    4: _faces_type4,
    5: _faces_type5,
    6: _faces_type6,
    7: _faces_type7,
    8: _faces_type8,
    9: _faces_type9,
    10: _faces_type10,
    11: _faces_type11,
}

# Interior boundary polylines drawn by the edge renderer, as point-index pairs.
_SEGMENT_INDICES = {
    1: ((0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 5), (2, 6), (3, 7)),
    2: ((0, 1), (2, 0), (3, 1), (0, 4), (1, 5)),
    3: ((0, 1), (2, 0), (3, 1), (0, 4), (1, 5)),
    4: ((1, 0), (0, 2), (0, 3)),
    5: ((1, 0), (0, 2), (0, 3)),
    6: ((0, 1), (0, 2), (0, 4), (1, 3), (1, 5)),
    7: ((0, 1), (2, 3)),
    8: ((1, 0), (0, 2), (0, 3)),
    9: ((0, 1),),
    10: ((0, 1),),
    11: (),
}


def faces_of(layout: Layout):
    """Face polygons of a layout, one per visible face.

    Returns a list of (SurfaceLabel, polygon) pairs sorted by label; the
    polygons tile the frame rectangle.  Raises InvalidTopology when the
    corner configuration does not produce a valid partition (self-
    intersecting, degenerate, or non-tiling faces).
    """
    t = TOPOLOGY.get(layout.type_id)
    if t is None:
        raise InvalidTopology(f"unknown layout type {layout.type_id}")
    if len(layout.points) != t.corner_count:
        raise InvalidTopology(
            f"type {layout.type_id} takes {t.corner_count} corners, got {len(layout.points)}"
        )
    pts = [(float(p[0]), float(p[1])) for p in layout.points]
    for x, y in pts:
        if not (np.isfinite(x) and np.isfinite(y)):
            raise InvalidTopology("non-finite corner coordinate")
    faces = _FACE_BUILDERS[layout.type_id](pts, layout.frame)
    out = []
    total = 0.0
    seen = set()
    for label, poly in sorted(faces, key=lambda f: int(f[0])):
        arr = np.asarray(poly, dtype=float)
        if not geo.is_simple_polygon(arr):
            raise InvalidTopology(f"face {label.name} is self-intersecting")
        area = geo.polygon_area(arr)
        if area <= 1e-9:
            raise InvalidTopology(f"face {label.name} has zero area")
        if label in seen:
            raise InvalidTopology(f"face {label.name} appears twice")
        seen.add(label)
        total += area
        out.append((label, arr))
    if not seen <= t.possible_faces:
        raise InvalidTopology("face label outside the type's visible set")
    w, h = layout.frame
    frame_area = float(w) * float(h)
    if abs(total - frame_area) > 1e-6 * frame_area:
        raise InvalidTopology("faces do not partition the frame")
    return out


def boundary_segments(layout: Layout):
    """Interior face-boundary segments (frame-border lines excluded)."""
    if layout.type_id not in _SEGMENT_INDICES:
        raise InvalidTopology(f"unknown layout type {layout.type_id}")
    pts = layout.points
    return [
        ((pts[i][0], pts[i][1]), (pts[j][0], pts[j][1]))
        for i, j in _SEGMENT_INDICES[layout.type_id]
    ]


# Corner-position tolerances are defined at the reference working scale of
# 224 px and grow linearly with the frame so that layouts rescaled between
# frames (which moves a border coordinate of 1 to W/w) stay valid.
_REFERENCE_SCALE = 224.0


def _axis_tol(extent: float) -> float:
    return 0.5 + 1.5 * extent / _REFERENCE_SCALE


def check_positions(layout: Layout):
    """Raise InvalidTopology unless corner counts, roles, and ranges hold."""
    t = TOPOLOGY.get(layout.type_id)
    if t is None:
        raise InvalidTopology(f"unknown layout type {layout.type_id}")
    if len(layout.points) != t.corner_count:
        raise InvalidTopology("corner count mismatch")
    w, h = layout.frame
    if w < 1 or h < 1:
        raise InvalidTopology("empty frame")
    ax = _axis_tol(w)
    ay = _axis_tol(h)
    for role, (x, y) in zip(t.corner_roles, layout.points):
        if not (np.isfinite(x) and np.isfinite(y)):
            raise InvalidTopology("non-finite corner")
        if not (1.0 - ax <= x <= w + ax and 1.0 - ay <= y <= h + ay):
            raise InvalidTopology("corner outside frame")
        if role == BORDER:
            dist = min(abs(x - 1.0), abs(x - w), abs(y - 1.0), abs(y - h))
            if dist > max(ax, ay):
                raise InvalidTopology("border corner not on the frame boundary")


def validate(layout: Layout) -> bool:
    """True iff the layout satisfies all invariants and faces_of succeeds."""
    try:
        check_positions(layout)
        faces_of(layout)
    except InvalidTopology:
        return False
    except GeometrySplitError:
        return False
    return True


def scale_layout(layout: Layout, target_w: int, target_h: int) -> Layout:
    """Rescale corner coordinates into a target frame.

    x is scaled by target_w / frame_w and y by target_h / frame_h; the type
    is unchanged.
    """
    if target_w < 1 or target_h < 1:
        raise DegenerateTarget(f"target frame {target_w}x{target_h}")
    sw, sh = layout.frame
    fx = float(target_w) / float(sw)
    fy = float(target_h) / float(sh)
    pts = tuple((x * fx, y * fy) for x, y in layout.points)
    return Layout(layout.type_id, pts, (int(target_w), int(target_h)))
