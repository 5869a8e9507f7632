"""Polygon primitives: areas, edges, angles, simplicity, similarity."""

import cmath
import math
import random

import pytest

from capforge import (
    Polygon,
    PolygonError,
    edges,
    internal_angles,
    is_simple,
    signed_area,
    similarity_apply,
    turning_angles,
)
from conftest import star_polygon

SQUARE = (0j, 1 + 0j, 1 + 1j, 1j)
EQUILATERAL = (0j, 1 + 0j, cmath.exp(1j * math.pi / 3))


def test_signed_area_unit_square():
    assert signed_area(SQUARE) == 1.0


def test_signed_area_reversed_square_negates():
    assert signed_area(SQUARE[::-1]) == -1.0


def test_signed_area_equilateral_triangle():
    assert signed_area(EQUILATERAL) == pytest.approx(math.sqrt(3.0) / 4.0, rel=1e-12)


def test_signed_area_needs_three_vertices():
    with pytest.raises(PolygonError):
        signed_area((0j, 1 + 0j))


def test_edges_unit_square():
    assert edges(Polygon(SQUARE)) == [1 + 0j, 1j, -1 + 0j, -1j]


def test_edges_right_triangle():
    assert edges(Polygon((0j, 1 + 0j, 1j))) == [1 + 0j, -1 + 1j, -1j]


def test_edges_sum_telescopes(corpus):
    for p in corpus[:200]:
        assert abs(sum(edges(p))) <= 1e-12 * p.perimeter


def test_internal_angles_square():
    assert internal_angles(Polygon(SQUARE)) == pytest.approx([math.pi / 2] * 4)


def test_internal_angles_square_with_midpoints_alternate():
    oct8 = Polygon((0j, 0.5 + 0j, 1 + 0j, 1 + 0.5j, 1 + 1j, 0.5 + 1j, 1j, 0.5j))
    angles = internal_angles(oct8)
    # corners and straight-angle midpoints alternate
    assert angles[0::2] == pytest.approx([math.pi / 2] * 4, abs=1e-12)
    assert angles[1::2] == pytest.approx([math.pi] * 4, abs=1e-12)


def test_internal_angle_sum(corpus):
    for p in corpus[:200]:
        assert math.fsum(internal_angles(p)) == pytest.approx((p.n - 2) * math.pi, abs=1e-9)


def test_turning_angles_square():
    assert turning_angles(Polygon(SQUARE)) == pytest.approx([math.pi / 2] * 4)


def test_turning_angles_equilateral():
    assert turning_angles(Polygon(EQUILATERAL)) == pytest.approx([2 * math.pi / 3] * 3)


def test_turning_angle_sum(corpus):
    for p in corpus[:200]:
        assert math.fsum(turning_angles(p)) == pytest.approx(2 * math.pi, abs=1e-9)


def test_reflex_vertex_angle_range():
    arrow = Polygon((0j, 2 + 0j, 2 + 2j, 1 + 0.5j, 2j))
    angles = internal_angles(arrow)
    assert any(a > math.pi for a in angles)
    assert all(0.0 < a < 2 * math.pi for a in angles)


def test_is_simple_square():
    assert is_simple(SQUARE).simple


def test_is_simple_bowtie_reports_crossing_pair():
    report = is_simple((0j, 1 + 1j, 1 + 0j, 1j))
    assert not report.simple
    assert report.violations == ((1, 3),)


def test_is_simple_open_polyline():
    assert is_simple((0j, 1 + 0j, 1 + 1j), closed=False).simple


def test_is_simple_straight_angles_allowed():
    assert is_simple((0j, 0.5 + 0j, 1 + 0j, 1 + 1j, 1j)).simple


def test_is_simple_spike_fold_back():
    report = is_simple((0j, 1 + 0j, 0.4 + 0j, 0.4 + 1j))
    assert not report.simple
    assert (1, 2) in report.violations


def test_is_simple_boundary_through_vertex():
    # the closing segment of this chain passes through the third vertex
    report = is_simple((0j, 1 + 0j, 1 + 1j, 1j, 2 + 2j))
    assert not report.simple
    assert (3, 5) in report.violations


def test_is_simple_duplicate_endpoint_dropped():
    assert is_simple((0j, 1 + 0j, 1 + 1j, 1j, 0j), closed=True).simple


def test_polygon_rejects_too_few_vertices():
    with pytest.raises(PolygonError):
        Polygon((0j, 1 + 0j))


def test_polygon_rejects_nonfinite():
    with pytest.raises(PolygonError):
        Polygon((0j, complex(math.inf, 0.0), 1j))


def test_polygon_rejects_repeated_consecutive_vertex():
    with pytest.raises(PolygonError, match="repeated"):
        Polygon((0j, 0j, 1 + 0j, 1j))


def test_polygon_rejects_collinear():
    with pytest.raises(PolygonError, match="collinear"):
        Polygon((0j, 1 + 0j, 2 + 0j))


def test_polygon_rejects_clockwise_by_default():
    with pytest.raises(PolygonError, match="clockwise"):
        Polygon((0j, 1j, 1 + 0j))


def test_polygon_normalize_reverses_clockwise_input():
    p = Polygon((0j, 1j, 1 + 0j), normalize=True)
    assert p.vertices == (0j, 1 + 0j, 1j)
    assert signed_area(p.vertices) > 0


def test_polygon_rejects_self_intersection():
    with pytest.raises(PolygonError, match="simple"):
        Polygon((0j, 1 + 1j, 1 + 0j, 1j))


def test_polygon_unchecked_accepts_raw_chain():
    p = Polygon((0j, 1 + 0j, 1 + 1j, 1j, 2 + 2j), check=False)
    assert p.n == 5


def test_polygon_json_round_trip_is_exact(corpus):
    for p in corpus[:50]:
        assert Polygon.from_json_dict(p.to_json_dict()).vertices == p.vertices


def test_polygon_json_rejects_malformed():
    with pytest.raises(PolygonError):
        Polygon.from_json_dict({"vertices": [[0, 0], [1], [0, 1]]})
    with pytest.raises(PolygonError):
        Polygon.from_json_dict({"points": []})


def test_similarity_identity():
    p = Polygon(SQUARE)
    assert similarity_apply(p, 1).vertices == p.vertices


def test_similarity_scale_and_shift():
    p = similarity_apply(Polygon(SQUARE), 2, 1j)
    assert p.vertices == (1j, 2 + 1j, 2 + 3j, 3j)


def test_similarity_rejects_zero_coefficient():
    with pytest.raises(ValueError):
        similarity_apply(Polygon(SQUARE), 0)


def test_similarity_preserves_angles_and_scales_area():
    rng = random.Random(4)
    for _ in range(25):
        p = star_polygon(rng, rng.randint(3, 12))
        a = cmath.rect(rng.uniform(0.3, 3.0), rng.uniform(0, 2 * math.pi))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        q = similarity_apply(p, a, b)
        assert internal_angles(q) == pytest.approx(internal_angles(p), abs=1e-9)
        assert signed_area(q.vertices) == pytest.approx(
            abs(a) ** 2 * signed_area(p.vertices), rel=1e-9)
        assert is_simple(q.vertices).simple == is_simple(p.vertices).simple
