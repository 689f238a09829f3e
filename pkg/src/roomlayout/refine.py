"""Greedy per-corner layout refinement.

Corner coordinates are rounded to integers and each corner in turn is moved
to whichever neighboring pixel strictly improves the combined score; sweeps
repeat until one full pass yields no improvement.  Corners on the frame
boundary only slide along it; interior corners move in the 4-neighborhood.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Layout, validate
from .errors import EmptyHypotheses, InvalidTopology
from .render import RenderConfig, DEFAULT_RENDER
from .score import ScoreConfig, DEFAULT_SCORE, ScoredLayout, score_layout

_BORDER_SNAP = 0.5 + 1e-9


@dataclass(frozen=True)
class NeighborSet:
    center: tuple
    candidates: tuple


def _on_border(coord: float, limit: int) -> bool:
    return abs(coord - 1.0) <= _BORDER_SNAP or abs(coord - limit) <= _BORDER_SNAP


def neighbor_set(point, frame_w: int) -> NeighborSet:
    """Candidate positions for one corner (the corner itself included).

    A corner within half a pixel of the frame boundary moves along that
    boundary (along x on the top/bottom edges, along y on the side edges,
    along x at a frame corner); interior corners move up/down/left/right.
    Candidates leaving the frame are clipped out.
    """
    x, y = float(point[0]), float(point[1])
    if abs(x - round(x)) > 1e-9 or abs(y - round(y)) > 1e-9:
        raise ValueError("neighbor sets are defined for integer corner coordinates")
    x, y = round(x), round(y)
    if _on_border(y, frame_w):
        moves = [(0, 0), (-1, 0), (1, 0)]
    elif _on_border(x, frame_w):
        moves = [(0, 0), (0, -1), (0, 1)]
    else:
        moves = [(0, 0), (0, -1), (0, 1), (-1, 0), (1, 0)]
    cands = []
    for dx, dy in moves:
        nx, ny = x + dx, y + dy
        if 1 <= nx <= frame_w and 1 <= ny <= frame_w:
            cands.append((float(nx), float(ny)))
    return NeighborSet((float(x), float(y)), tuple(cands))


def _rounded(layout: Layout) -> Layout:
    pts = tuple(
        (float(np.floor(x + 0.5)), float(np.floor(y + 0.5))) for x, y in layout.points
    )
    return Layout(layout.type_id, pts, layout.frame)


def refine_layout(
    layout: Layout,
    seg: np.ndarray,
    edges: np.ndarray,
    score_cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
    trace: list | None = None,
) -> ScoredLayout:
    """Greedy neighborhood ascent on the combined score.

    The search runs on integer corner coordinates (the input is rounded
    first) and accepts a move only on strict improvement, so the sequence of
    accepted scores increases strictly and the search terminates.  The input
    layout itself stays in the running: when rounding plus greedy search
    cannot beat the original score, the original is returned unchanged.
    When ``trace`` is given, accepted scores of the greedy phase (including
    the starting one) are appended to it.
    """
    original = score_layout(layout, seg, edges, score_cfg, render_cfg)
    base = _rounded(layout)
    if base.points == layout.points:
        current = original
    elif validate(base):
        current = score_layout(base, seg, edges, score_cfg, render_cfg)
    else:
        return original  # integer start is degenerate; keep the input
    if trace is not None:
        trace.append(current.score)
    w = layout.frame[0]
    n = len(base.points)
    while True:
        improved = False
        for i in range(n):
            for cand in neighbor_set(current.layout.points[i], w).candidates:
                if cand == current.layout.points[i]:
                    continue
                moved = current.layout.with_point(i, cand)
                try:
                    trial = score_layout(moved, seg, edges, score_cfg, render_cfg)
                except InvalidTopology:
                    continue
                if trial.score > current.score:
                    current = trial
                    improved = True
                    if trace is not None:
                        trace.append(current.score)
        if not improved:
            break
    return current if current.score > original.score else original


def optimize_layouts(
    hypotheses,
    seg: np.ndarray,
    edges: np.ndarray,
    score_cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
) -> ScoredLayout:
    """Refine every hypothesis independently and return the best result.

    Ties go to the earliest hypothesis.
    """
    hyps = list(hypotheses)
    if not hyps:
        raise EmptyHypotheses("no hypotheses to optimize")
    best = None
    for h in hyps:
        layout = h.layout if isinstance(h, ScoredLayout) else h
        refined = refine_layout(layout, seg, edges, score_cfg, render_cfg)
        if best is None or refined.score > best.score:
            best = refined
    return best
