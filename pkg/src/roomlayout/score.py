"""Consistency scoring of layouts against estimated edge and label maps.

The combined score of a layout is

    score = matched pixel accuracy of the label maps
            + edge_weight * (negative normalized edge-map distance)

where the accuracy term absorbs wall-label ambiguity by maximizing over
label permutations.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .core import Layout, check_positions, faces_of
from .errors import DimensionMismatch
from .render import (
    RenderConfig,
    DEFAULT_RENDER,
    _edges_unchecked,
    _require_square,
    _seg_from_faces,
)

_WALL_PERMS = tuple(permutations((3, 4, 5)))
_FULL_PERMS = tuple(permutations((1, 2, 3, 4, 5)))


@dataclass(frozen=True)
class ScoreConfig:
    """Weights and matching mode for the combined score.

    ``normalizer`` divides the raw edge-map Euclidean distance; when None the
    map width is used, which keeps the edge term roughly in [-1, 0] and makes
    ``edge_weight`` comparable across resolutions.
    """

    edge_weight: float = 0.5
    normalizer: float | None = None
    wall_only_matching: bool = True


DEFAULT_SCORE = ScoreConfig()


@dataclass(frozen=True)
class ScoredLayout:
    layout: Layout
    score: float
    seg_term: float
    edge_term: float


def argmax_labels(stack: np.ndarray) -> np.ndarray:
    """Collapse a 5-channel belief stack into a label map.

    Ties go to the smallest label index.
    """
    arr = np.asarray(stack, dtype=float)
    if arr.ndim != 3 or arr.shape[0] != 5:
        raise DimensionMismatch("semantic stack must have shape (5, h, w)")
    if arr.shape[1] != arr.shape[2]:
        raise DimensionMismatch("semantic stack maps must be square")
    return (np.argmax(arr, axis=0) + 1).astype(np.uint8)


def _confusion(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # labels 1..5: (a-1)*5 + (b-1) fits in uint8
    a8 = np.ascontiguousarray(a, dtype=np.uint8)
    b8 = np.ascontiguousarray(b, dtype=np.uint8)
    idx = a8 * np.uint8(5) + b8 - np.uint8(6)
    return np.bincount(idx.ravel(), minlength=25).reshape(5, 5)


def matched_accuracy(a: np.ndarray, b: np.ndarray, cfg: ScoreConfig = DEFAULT_SCORE) -> float:
    """Pixel accuracy under the best label matching.

    With wall-only matching the six permutations of the wall labels {3,4,5}
    applied to ``b`` are searched (ceiling and floor stay fixed); otherwise
    all 120 permutations of the five labels are searched.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"label maps {a.shape} vs {b.shape}")
    conf = _confusion(a, b)
    if cfg.wall_only_matching:
        fixed = conf[0, 0] + conf[1, 1]
        best = max(
            sum(conf[pi - 1, j - 1] for pi, j in zip(perm, (3, 4, 5)))
            for perm in _WALL_PERMS
        )
        agree = fixed + best
    else:
        agree = max(
            sum(conf[pi - 1, j - 1] for pi, j in zip(perm, (1, 2, 3, 4, 5)))
            for perm in _FULL_PERMS
        )
    return float(agree) / float(a.size)


def edge_score(a: np.ndarray, b: np.ndarray, cfg: ScoreConfig = DEFAULT_SCORE) -> float:
    """Negative Euclidean (Frobenius) distance between two edge maps, normalized."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"edge maps {a.shape} vs {b.shape}")
    norm = cfg.normalizer if cfg.normalizer is not None else float(a.shape[1])
    return -float(np.linalg.norm(a - b)) / float(norm)


def _render_pair(layout: Layout, render_cfg: RenderConfig):
    check_positions(layout)
    _require_square(layout)
    rendered_seg = _seg_from_faces(faces_of(layout), layout.frame[0])
    rendered_edges = _edges_unchecked(layout, render_cfg)
    rendered_seg.setflags(write=False)
    rendered_edges.setflags(write=False)
    return rendered_seg, rendered_edges


# Layouts are immutable values, so repeated scoring of a fixed set (the
# layout pool) can reuse renders.
_render_pair_cached = lru_cache(maxsize=1024)(_render_pair)


def score_layout(
    layout: Layout,
    seg: np.ndarray,
    edges: np.ndarray,
    cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
    cached: bool = False,
) -> ScoredLayout:
    """Render a layout and score it against estimated maps.

    ``cached`` reuses renders for previously seen layouts; results are
    identical either way.
    """
    seg = np.asarray(seg)
    edges = np.asarray(edges, dtype=float)
    w = layout.frame[0]
    if seg.shape != (w, w) or edges.shape != (w, w):
        raise DimensionMismatch("maps must match the layout frame")
    render = _render_pair_cached if cached else _render_pair
    rendered_seg, rendered_edges = render(layout, render_cfg)
    s1 = matched_accuracy(rendered_seg, seg, cfg)
    s2 = edge_score(rendered_edges, edges, cfg)
    return ScoredLayout(layout, s1 + cfg.edge_weight * s2, s1, s2)
