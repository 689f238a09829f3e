import numpy as np
import pytest

from roomlayout.core import make_layout, validate
from roomlayout.errors import EmptyHypotheses
from roomlayout.refine import neighbor_set, optimize_layouts, refine_layout
from roomlayout.render import render_edges, render_seg
from roomlayout.score import score_layout
from roomlayout.synth import SynthConfig, render_scene, sample_scene

from conftest import one_type_config, snapped_scene

W = 224


def test_neighbor_set_interior():
    ns = neighbor_set((100.0, 100.0), W)
    assert ns.center == (100.0, 100.0)
    assert set(ns.candidates) == {
        (100.0, 100.0), (100.0, 99.0), (100.0, 101.0), (99.0, 100.0), (101.0, 100.0)
    }


def test_neighbor_set_top_border():
    ns = neighbor_set((50.0, 1.0), W)
    assert set(ns.candidates) == {(50.0, 1.0), (49.0, 1.0), (51.0, 1.0)}


def test_neighbor_set_side_border():
    ns = neighbor_set((224.0, 30.0), W)
    assert set(ns.candidates) == {(224.0, 30.0), (224.0, 29.0), (224.0, 31.0)}


def test_neighbor_set_frame_corner_clipped():
    ns = neighbor_set((1.0, 1.0), W)
    assert set(ns.candidates) == {(1.0, 1.0), (2.0, 1.0)}


def test_neighbor_set_requires_integers():
    with pytest.raises(ValueError):
        neighbor_set((10.5, 3.0), W)


def _perturb(layout, index, dx, dy):
    x, y = layout.points[index]
    return layout.with_point(index, (x + dx, y + dy))


def test_refine_recovers_perturbed_interior_corner_exactly():
    gt, _ = snapped_scene(1, seed=90)
    E, M = render_scene(gt)
    start = _perturb(gt, 0, 2.0, 0.0)
    assert validate(start)

    # oracle: exhaustive scoring over the +-3 px neighborhood of that corner
    gx, gy = gt.points[0]
    best = None
    for dx in range(-3, 4):
        for dy in range(-3, 4):
            cand = gt.with_point(0, (gx + dx, gy + dy))
            if not validate(cand):
                continue
            s = score_layout(cand, M, E).score
            if best is None or s > best[0]:
                best = (s, (gx + dx, gy + dy))
    assert best[1] == (gx, gy), "ground truth must be the unique local max"

    refined = refine_layout(start, M, E)
    assert refined.layout.points[0] == (gx, gy)
    assert refined.layout.points == gt.points


def test_refine_leaves_local_max_unchanged():
    gt, _ = snapped_scene(4, seed=91)
    E, M = render_scene(gt)
    refined = refine_layout(gt, M, E)
    assert refined.layout.points == gt.points
    assert refined.score == 1.0


def test_refine_never_degrades_float_input():
    gt, _ = sample_scene(one_type_config(4, seed=92))
    E, M = render_scene(gt)
    refined = refine_layout(gt, M, E)
    assert refined.layout.points == gt.points  # already optimal, kept as-is
    assert refined.score == 1.0


def test_refine_monotone_trace_and_idempotent():
    gt, _ = snapped_scene(6, seed=93)
    E, M = render_scene(gt)
    start = _perturb(_perturb(gt, 0, -2.0, 1.0), 1, 0.0, 2.0)
    trace = []
    first = refine_layout(start, M, E, trace=trace)
    assert all(b > a for a, b in zip(trace, trace[1:]))
    second = refine_layout(first.layout, M, E)
    assert second.layout.points == first.layout.points
    assert second.score == first.score


def test_refine_type_preserved():
    gt, _ = snapped_scene(2, seed=94)
    E, M = render_scene(gt)
    refined = refine_layout(_perturb(gt, 0, 2.0, -1.0), M, E)
    assert refined.layout.type_id == gt.type_id
    assert validate(refined.layout)


def test_refine_lambda_zero_self_consistent():
    from roomlayout.score import ScoreConfig

    gt, _ = snapped_scene(7, seed=95)
    E, M = render_scene(gt)
    cfg = ScoreConfig(edge_weight=0.0)
    trace = []
    refined = refine_layout(gt, M, E, cfg, trace=trace)
    assert refined.seg_term == 1.0
    assert all(b > a for a, b in zip(trace, trace[1:]))


def test_optimize_single_hypothesis():
    gt, _ = snapped_scene(9, seed=96)
    E, M = render_scene(gt)
    start = _perturb(gt, 0, 0.0, 2.0)
    direct = refine_layout(start, M, E)
    via_optimize = optimize_layouts([start], M, E)
    assert via_optimize.layout.points == direct.layout.points
    assert via_optimize.score == direct.score


def test_optimize_picks_ground_truth():
    gt, _ = sample_scene(one_type_config(1, seed=97))
    bad, _ = sample_scene(one_type_config(2, seed=98))
    E, M = render_scene(gt)
    best = optimize_layouts([bad, gt], M, E)
    assert best.layout.points == gt.points
    assert best.score == 1.0


def test_optimize_perturbed_variants_converge():
    gt, _ = snapped_scene(1, seed=99)
    E, M = render_scene(gt)
    variants = [
        _perturb(gt, 0, 2.0, 0.0),
        _perturb(gt, 1, 0.0, -2.0),
        _perturb(gt, 2, -1.0, 1.0),
        _perturb(gt, 3, 1.0, 1.0),
    ]
    variants = [v for v in variants if validate(v)]
    best = optimize_layouts(variants, M, E)
    got = np.asarray(best.layout.points)
    want = np.asarray(gt.points)
    assert np.abs(got - want).max() <= 1.0


def test_optimize_empty_raises():
    with pytest.raises(EmptyHypotheses):
        optimize_layouts([], np.full((W, W), 3, np.uint8), np.zeros((W, W)))
