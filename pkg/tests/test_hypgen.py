import numpy as np
import pytest

from roomlayout.core import VanishingTriple, validate
from roomlayout.errors import DegenerateVP, EmptyPool
from roomlayout.hypgen import (
    Ray,
    SamplingConfig,
    compose_layouts,
    hypotheses_from_pool,
    hypotheses_from_sampling,
    make_pool,
    merge_hypotheses,
    sample_rays,
    sector_profile,
    select_sectors,
)
from roomlayout.render import render_edges, render_seg
from roomlayout.score import score_layout
from roomlayout.synth import SynthConfig, build_pool, render_scene, sample_scene

from conftest import one_type_config, select_oracle

W = 224


def _vp_angle(vp, p):
    return float(np.arctan2(p[1] - vp[1], p[0] - vp[0]))


# ---------------------------------------------------------------------------
# sector profiles


def test_sector_profile_zero_map():
    prof = sector_profile(np.zeros((W, W)), (-3000.0, 100.0), 30)
    assert prof.count == 30
    assert (prof.strengths == 0).all()
    assert (np.diff(prof.angles) > 0).all()


def test_sector_profile_constant_map():
    prof = sector_profile(np.full((W, W), 0.4), (112.0, -5000.0), 24)
    nonempty = prof.strengths > 0
    assert nonempty.any()
    assert np.allclose(prof.strengths[nonempty], 0.4)


def test_sector_profile_bright_line_lands_in_expected_sector():
    vp = (-4000.0, 112.0)
    E = np.zeros((W, W))
    E[90:96, :] = 1.0  # near-horizontal stripe as seen from a far-left vp
    prof = sector_profile(E, vp, 30)
    # per-pixel assignment oracle using the profile's own boundaries
    sums = np.zeros(30)
    counts = np.zeros(30)
    span = prof.angles[-1] - prof.angles[0]
    for v in range(1, W + 1):
        for u in range(1, W + 1):
            ang = _vp_angle(vp, (u, v))
            rel = (ang - prof.angles[0]) % (2 * np.pi)
            idx = min(int(rel / (span / 30)), 29)
            sums[idx] += E[v - 1, u - 1]
            counts[idx] += 1
    want = np.divide(sums, counts, out=np.zeros(30), where=counts > 0)
    assert np.allclose(prof.strengths, want, atol=1e-12)
    stripe_angle = _vp_angle(vp, (112.0, 92.5))
    rel = (stripe_angle - prof.angles[0]) % (2 * np.pi)
    assert int(np.argmax(prof.strengths)) == min(int(rel / (span / 30)), 29)


def test_sector_profile_rejects_center_vp():
    with pytest.raises(DegenerateVP):
        sector_profile(np.zeros((W, W)), ((W + 1) / 2.0 + 0.3, (W + 1) / 2.0), 30)


def test_sector_profile_inside_frame_vp_covers_all_pixels():
    prof = sector_profile(np.full((W, W), 0.25), (30.0, 40.0), 16)
    # full-circle span: every pixel lands somewhere, so means are 0.25 or 0
    assert prof.angles[-1] - prof.angles[0] == pytest.approx(2 * np.pi)
    assert np.allclose(prof.strengths[prof.strengths > 0], 0.25)


# ---------------------------------------------------------------------------
# sector selection


def test_select_sectors_documented_cases():
    assert select_sectors([0.1, 0.05, 0.2, 0.1], 0.03) == [0, 2]
    assert select_sectors([0.02, 0.01], 0.03) == []
    assert select_sectors([0.3, 0.3, 0.3], 0.03) == []


def test_select_sectors_matches_direct_conditions():
    rng = np.random.default_rng(6)
    for _ in range(300):
        d = rng.random(rng.integers(1, 40)) * 0.3
        thresh = float(rng.choice([0.0, 0.01, 0.03, 0.1]))
        assert set(select_sectors(d, thresh)) == select_oracle(d, thresh)


def test_select_sectors_invariant_to_trailing_zeros():
    rng = np.random.default_rng(7)
    for _ in range(50):
        d = list(rng.random(12) * 0.2)
        base = select_sectors(d, 0.03)
        assert select_sectors(d + [0.0, 0.0, 0.0], 0.03) == base


# ---------------------------------------------------------------------------
# ray sampling


def _profile_for(vp):
    return sector_profile(np.zeros((W, W)), vp, 30)


def test_sample_rays_midline_and_spacing():
    prof = _profile_for((-3000.0, 100.0))
    (rays,) = sample_rays(prof, [4], 1)
    a, b = prof.angles[4], prof.angles[5]
    assert rays[0].angle == pytest.approx((a + b) / 2)
    (rays3,) = sample_rays(prof, [4], 3)
    step = (b - a) / 4
    assert [r.angle for r in rays3] == pytest.approx([a + step, a + 2 * step, a + 3 * step])
    for r in rays3:
        assert a < r.angle < b


def test_sample_rays_counts():
    prof = _profile_for((112.0, -4000.0))
    rays = sample_rays(prof, [2, 9], 3)
    assert len(rays) == 2 and all(len(sec) == 3 for sec in rays)


# ---------------------------------------------------------------------------
# composing layouts


def _gt_rays(layout, vps):
    """One ray per boundary family, aimed exactly through the GT corners."""
    tid = layout.type_id
    pts = layout.points
    verticals, horizontals = [], []
    if tid == 1:
        verticals = [pts[0], pts[2]]
        horizontals = [pts[0], pts[2]]
    elif tid in (4, 5, 8):
        verticals = [pts[0]]
        horizontals = [pts[0]]
    return (
        [[Ray(vps.vp1, _vp_angle(vps.vp1, p))] for p in verticals],
        [[Ray(vps.vp2, _vp_angle(vps.vp2, p))] for p in horizontals],
    )


def test_compose_zero_rays_gives_single_face():
    layout, vps = sample_scene(one_type_config(1, seed=50))
    out = compose_layouts([], [], vps, W)
    assert len(out) == 1
    assert out[0].type_id == 11
    assert validate(out[0])


def test_compose_reconstructs_full_box_from_gt_rays():
    layout, vps = sample_scene(one_type_config(1, seed=51))
    rays_v, rays_h = _gt_rays(layout, vps)
    out = compose_layouts(rays_v, rays_h, vps, W)
    boxes = [c for c in out if c.type_id == 1]
    assert len(boxes) == 1
    got = np.asarray(boxes[0].points)
    want = np.asarray(layout.points)
    assert np.abs(got - want).max() < 0.5


def test_compose_candidate_count_bound():
    layout, vps = sample_scene(one_type_config(1, seed=52))
    prof_v = _profile_for(vps.vp1)
    prof_h = _profile_for(vps.vp2)
    rays_v = sample_rays(prof_v, [5, 12, 20], 1)
    rays_h = sample_rays(prof_h, [5, 12, 20], 1)
    out = compose_layouts(rays_v, rays_h, vps, W)
    assert len(out) <= 49  # (C(3,0)+C(3,1)+C(3,2))^2
    assert all(validate(c) for c in out)


def test_compose_all_outputs_validate():
    for seed in (60, 61, 62):
        layout, vps = sample_scene(SynthConfig(seed=seed))
        E, M = render_scene(layout)
        prof_v = sector_profile(E, vps.vp1, 30)
        prof_h = sector_profile(E, vps.vp2, 30)
        rays_v = sample_rays(prof_v, select_sectors(prof_v.strengths, 0.03), 3)
        rays_h = sample_rays(prof_h, select_sectors(prof_h.strengths, 0.03), 3)
        out = compose_layouts(rays_v, rays_h, vps, W)
        assert out and all(validate(c) for c in out)


# ---------------------------------------------------------------------------
# hypothesis ranking


def test_sampling_hypotheses_contain_gt_type():
    layout, vps = sample_scene(one_type_config(6, seed=70))
    E, M = render_scene(layout)
    hyps = hypotheses_from_sampling(E, M, vps)
    assert layout.type_id in [h.layout.type_id for h in hyps]


def test_sampling_on_blank_edges_leaves_single_face():
    _, vps = sample_scene(one_type_config(1, seed=71))
    E = np.zeros((W, W))
    M = np.full((W, W), 3, dtype=np.uint8)
    hyps = hypotheses_from_sampling(E, M, vps)
    assert len(hyps) == 1
    assert hyps[0].layout.type_id == 11


def test_sampling_returns_k1_distinct_types():
    layout, vps = sample_scene(one_type_config(1, seed=72))
    E, M = render_scene(layout)
    hyps = hypotheses_from_sampling(E, M, vps, SamplingConfig(max_from_sampling=2))
    assert len(hyps) == 2
    assert hyps[0].layout.type_id != hyps[1].layout.type_id
    assert hyps[0].score >= hyps[1].score


def test_pool_ranks_gt_first():
    layout, _ = sample_scene(one_type_config(4, seed=80))
    E, M = render_scene(layout)
    pool = make_pool(list(build_pool(100, SynthConfig(seed=81)).entries) + [layout])
    hyps = hypotheses_from_pool(pool, M, E)
    assert hyps[0].layout.points == layout.points
    assert hyps[0].score == 1.0
    assert len({h.layout.type_id for h in hyps}) == len(hyps)


def test_pool_single_entry():
    layout, _ = sample_scene(one_type_config(9, seed=82))
    E, M = render_scene(layout)
    pool = make_pool([layout])
    hyps = hypotheses_from_pool(pool, M, E)
    assert len(hyps) == 1 and hyps[0].layout.points == layout.points


def test_pool_empty_raises():
    E = np.zeros((W, W))
    M = np.full((W, W), 3, dtype=np.uint8)
    with pytest.raises(EmptyPool):
        hypotheses_from_pool(make_pool([]), M, E)


def test_merge_hypotheses():
    layout, _ = sample_scene(one_type_config(4, seed=83))
    other, _ = sample_scene(one_type_config(7, seed=84))
    E, M = render_scene(layout)
    a = score_layout(layout, M, E)
    b = score_layout(other, M, E)
    assert len(merge_hypotheses([a], [b])) == 2
    assert len(merge_hypotheses([a, b], [a, b])) == 2
    assert merge_hypotheses([], [a, b]) == [a, b]
