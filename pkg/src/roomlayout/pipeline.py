"""End-to-end estimation: inputs -> hypotheses -> refinement -> layout.

Inputs of any size are resized to the square working frame (cubic for heat
maps, nearest-neighbor for label maps so labels stay discrete), hypotheses
are generated from ray sampling and/or a pool, refined, and the winner is
scaled back to the original frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import map_coordinates

from .core import Layout, VanishingTriple, scale_layout
from .errors import DegenerateVP, DimensionMismatch, EmptyHypotheses
from .hypgen import (
    LayoutPool,
    SamplingConfig,
    DEFAULT_SAMPLING,
    hypotheses_from_pool,
    hypotheses_from_sampling,
    merge_hypotheses,
)
from .metrics import EvalRecord, corner_error, edge_error, pixel_error, semantic_error
from .refine import optimize_layouts
from .render import RenderConfig, DEFAULT_RENDER, render_edges, render_seg
from .score import ScoreConfig, DEFAULT_SCORE, ScoredLayout, argmax_labels


@dataclass(frozen=True)
class PipelineConfig:
    render: RenderConfig = DEFAULT_RENDER
    score: ScoreConfig = DEFAULT_SCORE
    sampling: SamplingConfig = DEFAULT_SAMPLING
    use_sampling: bool = True
    use_pool: bool = True

    def __post_init__(self):
        if not (self.use_sampling or self.use_pool):
            raise ValueError("at least one hypothesis source must be enabled")


DEFAULT_PIPELINE = PipelineConfig()


@dataclass(frozen=True)
class EstimateResult:
    layout: Layout  # in the original frame
    working: ScoredLayout  # refined winner in the square working frame
    edges: np.ndarray  # working-frame inputs actually scored against
    seg: np.ndarray
    hypothesis_count: int


def _resize_grid(n_out, n_src):
    return (np.arange(n_out, dtype=float) + 0.5) * (n_src / n_out) - 0.5


def resize_heatmap(values: np.ndarray, out_w: int) -> np.ndarray:
    """Cubic-interpolation resize to a square frame, clamped to [0, 1]."""
    arr = np.asarray(values, dtype=float)
    h, w = arr.shape
    if (h, w) == (out_w, out_w):
        return arr
    ys = _resize_grid(out_w, h)
    xs = _resize_grid(out_w, w)
    gy, gx = np.meshgrid(ys, xs, indexing="ij")
    out = map_coordinates(arr, [gy, gx], order=3, mode="nearest")
    return np.clip(out, 0.0, 1.0)


def resize_segmap(labels: np.ndarray, out_w: int) -> np.ndarray:
    """Nearest-neighbor resize (labels are categorical, cubic would mix them)."""
    arr = np.asarray(labels)
    h, w = arr.shape
    if (h, w) == (out_w, out_w):
        return arr.astype(np.uint8)
    ys = np.clip(np.floor((np.arange(out_w) + 0.5) * (h / out_w)).astype(int), 0, h - 1)
    xs = np.clip(np.floor((np.arange(out_w) + 0.5) * (w / out_w)).astype(int), 0, w - 1)
    return arr[np.ix_(ys, xs)].astype(np.uint8)


def prepare_inputs(edges: np.ndarray, semantic: np.ndarray, frame_w: int):
    """Resize raw inputs to the working frame.

    ``semantic`` is either a (5, h, w) belief stack (collapsed by argmax
    after resizing) or an (h, w) label map.
    """
    E = resize_heatmap(edges, frame_w)
    sem = np.asarray(semantic)
    if sem.ndim == 3:
        stack = np.stack([resize_heatmap(c, frame_w) for c in sem])
        M = argmax_labels(stack)
    elif sem.ndim == 2:
        M = resize_segmap(sem, frame_w)
    else:
        raise DimensionMismatch("semantic input must be a label map or a 5-channel stack")
    return E, M


def estimate_layout(
    edges: np.ndarray,
    semantic: np.ndarray,
    vps: VanishingTriple | None = None,
    pool: LayoutPool | None = None,
    cfg: PipelineConfig = DEFAULT_PIPELINE,
) -> EstimateResult:
    """Run the full estimation pipeline on one image.

    When vanishing points are missing or degenerate the sampling source is
    skipped and the pool carries the hypotheses (and vice versa), matching
    the robustness argument for combining the two sources.
    """
    orig_h, orig_w = np.asarray(edges).shape
    w = cfg.render.frame_w
    E, M = prepare_inputs(edges, semantic, w)

    sampled = []
    if cfg.use_sampling and vps is not None:
        try:
            sampled = hypotheses_from_sampling(E, M, vps, cfg.sampling, cfg.score, cfg.render)
        except (DegenerateVP, EmptyHypotheses):
            sampled = []
    pooled = []
    if cfg.use_pool and pool is not None and len(pool) > 0:
        pooled = hypotheses_from_pool(pool, M, E, cfg.sampling.max_from_pool,
                                      cfg.score, cfg.render)

    merged = merge_hypotheses(sampled, pooled)
    if not merged:
        raise EmptyHypotheses("no hypothesis source produced a layout")
    best = optimize_layouts(merged, M, E, cfg.score, cfg.render)
    final = scale_layout(best.layout, orig_w, orig_h)
    return EstimateResult(final, best, E, M, len(merged))


def evaluate_pair(
    pred: Layout,
    gt: Layout,
    score_cfg: ScoreConfig = DEFAULT_SCORE,
    render_cfg: RenderConfig = DEFAULT_RENDER,
) -> EvalRecord:
    """All metrics for one prediction against its ground truth.

    Corner error is measured in the ground-truth frame; map errors are
    measured on renders in the square working frame.
    """
    W, H = gt.frame
    pred_native = pred if pred.frame == gt.frame else scale_layout(pred, W, H)
    ce = corner_error(pred_native, gt, W, H)

    sq = render_cfg.frame_w
    pred_sq = scale_layout(pred, sq, sq)
    gt_sq = scale_layout(gt, sq, sq)
    pred_seg = render_seg(pred_sq)
    gt_seg = render_seg(gt_sq)
    pe = pixel_error(pred_seg, gt_seg, score_cfg)
    se = semantic_error(pred_seg, gt_seg, score_cfg)
    ee = edge_error(render_edges(pred_sq, render_cfg), render_edges(gt_sq, render_cfg))
    return EvalRecord(
        pixel_error_pct=pe,
        corner_error_pct=ce,
        type_correct=pred.type_id == gt.type_id,
        edge_error=ee,
        semantic_error_pct=se,
    )


def summarize(records) -> dict:
    """Mean of each metric plus type accuracy over a batch of records."""
    recs = list(records)
    if not recs:
        raise ValueError("no records to summarize")
    return {
        "pixel_error_pct": float(np.mean([r.pixel_error_pct for r in recs])),
        "corner_error_pct": float(np.mean([r.corner_error_pct for r in recs])),
        "type_accuracy_pct": 100.0 * sum(r.type_correct for r in recs) / len(recs),
        "edge_error": float(np.mean([r.edge_error for r in recs])),
        "semantic_error_pct": float(np.mean([r.semantic_error_pct for r in recs])),
    }
