"""
Tests for the model-plane kernels: H^2, S^2 and comparison triangles
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domcert.core.errors import GeometryError
from domcert.geometry import (
    HIsometry,
    HPoint,
    SPoint,
    TriangleShape,
    comparison_angle,
    corner_angles,
    embed_comparison_triangle,
    h_angle,
    h_distance,
    h_exp,
    h_geodesic_point,
    s_distance,
    s_turn,
    triangle_angles,
    triangle_area,
)
from domcert.geometry.spherical import NORTH

radii = st.floats(min_value=0.0, max_value=5.0)
angles = st.floats(min_value=-math.pi, max_value=math.pi)


def test_distance_from_origin_matches_polar_radius():
    """The polar radius of a point is its distance to the origin"""
    for r in (0.0, 1e-9, 0.3, 2.0, 7.5):
        assert h_distance(HPoint.origin(), HPoint.from_polar(r, 1.2)) == pytest.approx(r, abs=1e-12)


def test_distance_keeps_precision_for_close_points():
    """Nearby points keep relative precision in the distance"""
    p = HPoint.from_polar(1.0, 0.0)
    q = HPoint.from_polar(1.0 + 1e-10, 0.0)
    assert h_distance(p, q) == pytest.approx(1e-10, rel=1e-4)


@settings(max_examples=50, deadline=None)
@given(radii, angles, radii, angles)
def test_distance_symmetric_and_nonnegative(r1, a1, r2, a2):
    """Distance is symmetric and nonnegative"""
    p, q = HPoint.from_polar(r1, a1), HPoint.from_polar(r2, a2)
    assert h_distance(p, q) >= 0.0
    assert h_distance(p, q) == pytest.approx(h_distance(q, p), abs=1e-9)


@settings(max_examples=50, deadline=None)
@given(radii, angles, radii, angles, st.floats(min_value=0.0, max_value=1.0))
def test_geodesic_point_splits_distance(r1, a1, r2, a2, t):
    """The point at parameter t divides the geodesic in ratio t : 1 - t"""
    p, q = HPoint.from_polar(r1, a1), HPoint.from_polar(r2, a2)
    m = h_geodesic_point(p, q, t)
    d = h_distance(p, q)
    assert h_distance(p, m) == pytest.approx(t * d, abs=1e-7)
    assert h_distance(m, q) == pytest.approx((1.0 - t) * d, abs=1e-7)


def test_translation_moves_origin_by_its_length():
    """A translation moves the origin along its axis by its length"""
    g = HIsometry.translation(1.5, direction=0.4)
    assert h_distance(HPoint.origin(), g.apply(HPoint.origin())) == pytest.approx(1.5, abs=1e-12)
    assert g.translation_length() == pytest.approx(1.5, abs=1e-9)
    assert g.is_valid()


def test_real_power_of_a_translation():
    """Half of a translation is the translation by half the length"""
    g = HIsometry.translation(2.0, direction=0.3)
    half = g.power(0.5)
    assert np.allclose(half.matrix, HIsometry.translation(1.0, direction=0.3).matrix, atol=1e-9)
    assert np.allclose(g.power(-1.0).matrix, g.inverse().matrix, atol=1e-9)
    assert half.is_valid()


def test_rotation_fixes_center_and_has_no_translation():
    """A rotation fixes its center and is elliptic"""
    center = HPoint.from_polar(0.8, 2.0)
    g = HIsometry.rotation(center, 1.1)
    assert h_distance(center, g.apply(center)) == pytest.approx(0.0, abs=1e-12)
    assert g.translation_length() == 0.0
    p = HPoint.from_polar(0.5, 0.0)
    assert h_angle(center, p, g.apply(p)) == pytest.approx(1.1, abs=1e-9)


def test_sl2_diagonal_matrix_is_a_translation():
    """diag(e^(l/2), e^(-l/2)) translates by l"""
    g = HIsometry.from_sl2([[math.exp(0.5), 0.0], [0.0, math.exp(-0.5)]])
    assert g.translation_length() == pytest.approx(1.0, abs=1e-12)


def test_sl2_lift_recovers_the_isometry():
    """to_sl2 gives a matrix inducing the same isometry"""
    g = HIsometry.rotation(HPoint.from_polar(0.7, 0.3), 0.9).compose(HIsometry.translation(0.6, 1.0))
    lift = g.to_sl2()
    assert np.linalg.det(lift) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(HIsometry.from_sl2(lift).matrix, g.matrix, atol=1e-10)


def test_sl2_rejects_bad_determinant():
    """Matrices outside SL(2,R) are rejected"""
    with pytest.raises(GeometryError):
        HIsometry.from_sl2([[2.0, 0.0], [0.0, 1.0]])


def test_inverse_and_compose():
    """g^-1 g is the identity"""
    g = HIsometry.translation(2.0, 0.3).compose(HIsometry.rotation(HPoint.origin(), 0.5))
    assert g.inverse().compose(g).deviation_from_identity() < 1e-10


def test_segment_map_sends_segment_to_segment():
    """from_segment_map matches endpoints of equal-length segments"""
    p, q = HPoint.from_polar(0.5, 0.1), HPoint.from_polar(1.2, 2.0)
    p2 = HPoint.from_polar(1.0, -1.0)
    d = h_distance(p, q)
    q2 = h_exp(p2, [d * math.cos(0.7), d * math.sin(0.7)])
    g = HIsometry.from_segment_map(p, q, p2, q2)
    assert h_distance(g.apply(p), p2) == pytest.approx(0.0, abs=1e-10)
    assert h_distance(g.apply(q), q2) == pytest.approx(0.0, abs=1e-9)


def test_angle_at_coincident_apex_is_undefined():
    """An apex coinciding with an endpoint has no direction"""
    with pytest.raises(GeometryError):
        h_angle(HPoint.origin(), HPoint.origin(), HPoint.from_polar(1.0, 0.0))


def test_spherical_distance_between_pole_and_equator():
    """The pole is pi / 2 from every point of the equator"""
    assert s_distance(NORTH, SPoint.from_spherical(math.pi / 2, 1.0)) == pytest.approx(math.pi / 2)


def test_spherical_turn_orientation():
    """The turn is positive for a counter-clockwise triple seen from outside"""
    east = SPoint.from_spherical(math.pi / 2, 0.0)
    north_east = SPoint.from_spherical(math.pi / 2, math.pi / 2)
    assert s_turn(NORTH, east, north_east) == pytest.approx(1.0)
    assert s_turn(NORTH, north_east, east) == pytest.approx(-1.0)
    assert s_turn(NORTH, east, SPoint.from_spherical(math.pi / 4, 0.0)) == pytest.approx(0.0, abs=1e-15)


def test_equilateral_euclidean_angles():
    """Flat equilateral triangles have angles pi / 3"""
    assert triangle_angles(TriangleShape(0, (1.0, 1.0, 1.0))) == pytest.approx((math.pi / 3,) * 3)


def test_right_spherical_triangle():
    """The octant triangle on S^2 has three right angles"""
    side = math.pi / 2
    assert triangle_angles(TriangleShape(1, (side, side, side))) == pytest.approx((math.pi / 2,) * 3)


def test_hyperbolic_angle_sum_below_pi_and_area():
    """Hyperbolic triangles have angle defect equal to their area"""
    shape = TriangleShape(-1, (1.0, 1.3, 1.7))
    total = sum(triangle_angles(shape))
    assert total < math.pi
    assert triangle_area(shape) == pytest.approx(math.pi - total)


def test_tiny_equilateral_triangle_is_nearly_euclidean():
    """Small hyperbolic triangles have angles close to pi / 3"""
    eps = 1e-3
    for angle in triangle_angles(TriangleShape(-1, (eps, eps, eps))):
        assert angle == pytest.approx(math.pi / 3, abs=1e-6)


def test_thin_isosceles_triangle_angles():
    """A thin isosceles triangle has base angles just below pi / 2"""
    eps = 1e-4
    apex, left, right = triangle_angles(TriangleShape(-1, (1.0 + eps, 1.0 + eps, eps)))
    assert 0.0 < right < 1e-3
    assert left == pytest.approx(math.pi / 2, abs=1e-4)
    assert apex == pytest.approx(math.pi / 2, abs=1e-4)
    assert left < math.pi / 2 and apex < math.pi / 2


def test_flat_triangle_has_pi_at_the_long_side():
    """Degenerate triangles take the (pi, 0, 0) pattern"""
    shape = TriangleShape(-1, (1.0, 2.0, 1.0))
    assert shape.is_flat
    assert triangle_angles(shape) == (0.0, math.pi, 0.0)
    assert triangle_area(shape) == 0.0


def test_triangle_inequality_enforced():
    """Sides violating the triangle inequality are rejected"""
    with pytest.raises(GeometryError):
        TriangleShape(-1, (1.0, 1.0, 3.0))


def test_spherical_perimeter_bound():
    """Spherical comparison triangles need perimeter below 2 pi"""
    with pytest.raises(GeometryError):
        TriangleShape(1, (2.0, 2.2, 2.1))
    with pytest.raises(GeometryError):
        comparison_angle(1, 2.0, 2.2, 2.1)


def test_embedded_comparison_triangle_has_the_given_sides():
    """The canonical embedding realizes the side lengths and corner angles"""
    shape = TriangleShape(-1, (0.9, 1.4, 1.1))
    v0, v1, v2 = embed_comparison_triangle(shape)
    assert h_distance(v0, v1) == pytest.approx(0.9, abs=1e-12)
    assert h_distance(v0, v2) == pytest.approx(1.4, abs=1e-12)
    assert h_distance(v1, v2) == pytest.approx(1.1, abs=1e-10)
    assert h_angle(v0, v1, v2) == pytest.approx(corner_angles(shape)[0], abs=1e-10)
    assert h_angle(v1, v0, v2) == pytest.approx(corner_angles(shape)[1], abs=1e-10)
