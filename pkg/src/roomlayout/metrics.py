"""Evaluation metrics: pixel error, corner error, type accuracy, map errors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Layout
from .errors import DimensionMismatch
from .render import RenderConfig, DEFAULT_RENDER, render_seg
from .score import ScoreConfig, DEFAULT_SCORE, matched_accuracy


@dataclass(frozen=True)
class EvalRecord:
    """Per-image evaluation results."""

    pixel_error_pct: float
    corner_error_pct: float
    type_correct: bool
    edge_error: float
    semantic_error_pct: float


def pixel_error(
    pred,
    gt_seg: np.ndarray,
    cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
) -> float:
    """Misclassified-pixel percentage under the best label matching.

    ``pred`` may be a Layout (rendered first) or a label map.
    """
    if isinstance(pred, Layout):
        pred_seg = render_seg(pred)
    else:
        pred_seg = np.asarray(pred)
    gt_seg = np.asarray(gt_seg)
    if pred_seg.shape != gt_seg.shape:
        raise DimensionMismatch(f"label maps {pred_seg.shape} vs {gt_seg.shape}")
    return 100.0 * (1.0 - matched_accuracy(pred_seg, gt_seg, cfg))


def corner_error(pred: Layout, gt: Layout, width: int, height: int) -> float:
    """Mean corner displacement as a percentage of the image diagonal.

    Same-type layouts are matched corner-by-corner in canonical order.  For
    differing types, corners are matched by minimum-cost assignment on
    pairwise distances and every unmatched corner is charged the full
    diagonal; the mean runs over the larger corner count.
    """
    diag = float(np.hypot(width, height))
    a = pred.points_array()
    b = gt.points_array()
    if pred.type_id == gt.type_id:
        if len(a) != len(b):
            raise DimensionMismatch("same type with different corner counts")
        dists = np.hypot(a[:, 0] - b[:, 0], a[:, 1] - b[:, 1])
        return 100.0 * float(dists.mean()) / diag
    cost = np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])
    rows, cols = linear_sum_assignment(cost)
    matched = cost[rows, cols]
    n = max(len(a), len(b))
    total = float(matched.sum()) + diag * (n - len(matched))
    return 100.0 * (total / n) / diag


def type_accuracy(records) -> float:
    """Percentage of records with the correct layout type."""
    recs = list(records)
    if not recs:
        raise ValueError("no records")
    correct = sum(1 for r in recs if r.type_correct)
    return 100.0 * correct / len(recs)


def edge_error(edges: np.ndarray, gt_edges: np.ndarray) -> float:
    """Unnormalized Euclidean distance between two edge maps."""
    a = np.asarray(edges, dtype=float)
    b = np.asarray(gt_edges, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatch(f"edge maps {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def semantic_error(
    seg: np.ndarray, gt_seg: np.ndarray, cfg: ScoreConfig = DEFAULT_SCORE
) -> float:
    """Misclassification percentage of a label map under the best matching."""
    a = np.asarray(seg)
    b = np.asarray(gt_seg)
    if a.shape != b.shape:
        raise DimensionMismatch(f"label maps {a.shape} vs {b.shape}")
    return 100.0 * (1.0 - matched_accuracy(a, b, cfg))
