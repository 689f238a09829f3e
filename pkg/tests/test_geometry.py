import numpy as np
import pytest

from roomlayout import _geometry as geo

from conftest import point_in_closed_polygon


def test_intersect_lines():
    p = geo.intersect_lines((0, 0), (1, 0), (5, -3), (0, 1))
    assert p == pytest.approx((5.0, 0.0))
    assert geo.intersect_lines((0, 0), (1, 1), (3, 0), (2, 2)) is None


def test_ray_rect_exit():
    assert geo.ray_rect_exit((5, 5), (1, 0), 0, 0, 10, 10) == pytest.approx((10.0, 5.0))
    assert geo.ray_rect_exit((5, 5), (0, -2), 0, 0, 10, 10) == pytest.approx((5.0, 0.0))
    assert geo.ray_rect_exit((5, 5), (1, 1), 0, 0, 10, 10) == pytest.approx((10.0, 10.0))


def test_polygon_area():
    square = [(0, 0), (4, 0), (4, 4), (0, 4)]
    assert geo.polygon_area(square) == 16.0
    assert geo.polygon_area(list(reversed(square))) == 16.0


def test_is_simple_polygon():
    assert geo.is_simple_polygon([(0, 0), (4, 0), (4, 4), (0, 4)])
    assert not geo.is_simple_polygon([(0, 0), (4, 4), (4, 0), (0, 4)])  # bowtie


def test_split_polygon_straight_cut():
    rect = [(0, 0), (10, 0), (10, 6), (0, 6)]
    a, b = geo.split_polygon(rect, [(4.0, 0.0), (4.0, 6.0)])
    areas = sorted((geo.polygon_area(a), geo.polygon_area(b)))
    assert areas == pytest.approx([24.0, 36.0])
    assert geo.polygon_area(a) + geo.polygon_area(b) == pytest.approx(60.0)


def test_split_polygon_chain_cut():
    rect = [(0, 0), (10, 0), (10, 10), (0, 10)]
    chain = [(0.0, 4.0), (5.0, 6.0), (10.0, 4.0)]
    a, b = geo.split_polygon(rect, chain)
    total = geo.polygon_area(a) + geo.polygon_area(b)
    assert total == pytest.approx(100.0)
    for piece in (a, b):
        assert geo.is_simple_polygon(piece)


def test_split_polygon_rejects_detached_chain():
    rect = [(0, 0), (10, 0), (10, 10), (0, 10)]
    with pytest.raises(geo.GeometrySplitError):
        geo.split_polygon(rect, [(3.0, 3.0), (7.0, 7.0)])


@pytest.mark.parametrize("seed", range(6))
def test_pixel_mask_matches_closed_pip_oracle(seed):
    rng = np.random.default_rng(seed)
    w = 24
    # random convex-ish quad inside the frame
    cx, cy = rng.uniform(8, 16, size=2)
    angles = np.sort(rng.uniform(0, 2 * np.pi, size=4))
    r = rng.uniform(4, 7, size=4)
    poly = [(cx + r[i] * np.cos(a), cy + r[i] * np.sin(a)) for i, a in enumerate(angles)]
    mask = geo.polygon_pixel_mask(poly, w, w)
    for v in range(1, w + 1):
        for u in range(1, w + 1):
            want = point_in_closed_polygon(float(u), float(v), poly)
            assert mask[v - 1, u - 1] == want, (u, v)


def test_pixel_mask_boundary_pixels_closed():
    # integer-aligned square: boundary pixel centers belong to the mask
    poly = [(3.0, 3.0), (9.0, 3.0), (9.0, 9.0), (3.0, 9.0)]
    mask = geo.polygon_pixel_mask(poly, 12, 12)
    assert mask[2, 2] and mask[2, 8] and mask[8, 8] and mask[8, 2]
    assert mask[2:9, 2:9].all()
    assert not mask[1, :].any() and not mask[:, 1].any()


def test_segment_distance_mask_round_caps():
    m = geo.segment_distance_mask([((5.0, 5.0), (15.0, 5.0))], 20, 20, 3.0)
    assert m[4, 4] == 1.0  # on the segment
    assert m[4 + 3, 9] == 1.0  # exactly at radius below
    assert m[4, 1] == 1.0  # cap: distance 3 left of the start
    assert m[4, 0] == 0.0  # distance 4 left of the start
    assert m[9, 9] == 0.0  # distance 5 below
