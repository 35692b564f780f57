"""
Tests for link polygons, the rigidity verdicts and the face-pair residuals
"""

import math

import pytest

from domcert.core.errors import GeometryError
from domcert.core.schema import LinkPolygonData, RepresentationSpec, SamplingSpec
from domcert.fixtures import emit_fixture
from domcert.pipeline import prepare, run_pipeline
from domcert.rigidity import link_polygon, local_geodesic_test, rigidity_detect, rigidity_report
from domcert.solver import constant_map, solve_harmonic
from domcert.surface.lengths import length_function_from_map

TWO_PI = 2.0 * math.pi


def hexagon_link(comparisons=None, degenerate=None) -> LinkPolygonData:
    """Link of a vertex with six equal corners"""
    angles = [math.pi / 3] * 6
    return LinkPolygonData(
        vertex="x0",
        angles=angles,
        comparison_angles=comparisons or list(angles),
        spans=[2 * math.pi / 3] * 6,
        degenerate_corners=degenerate or [],
    )


@pytest.fixture(scope="module")
def octagon_harmonic():
    """Converged harmonic map of the octagon representation"""
    config = emit_fixture("fuchsian_octagon_g2")
    t, rep = prepare(config)
    outcome = solve_harmonic(t, rep, params=config.solver)
    return t, rep, outcome.map


def test_flat_link_is_rigid():
    """Equal angles summing to 2 pi on a local geodesic are rigid"""
    verdict = rigidity_detect(hexagon_link())
    assert verdict.status == "Rigid"
    assert abs(verdict.angle_sum_residual) < 1e-12
    assert max(verdict.local_geodesic_residuals) < 1e-12


def test_excess_angle_is_not_rigid():
    """Comparison angles well above 2 pi mean NotRigid"""
    link = hexagon_link(comparisons=[math.pi / 3 + 1e-3] * 6)
    verdict = rigidity_detect(link)
    assert verdict.status == "NotRigid"
    assert verdict.angle_sum_residual == pytest.approx(6e-3)


def test_deficit_is_inconclusive():
    """Comparison angles below 2 pi are inconclusive"""
    verdict = rigidity_detect(hexagon_link(comparisons=[math.pi / 3 - 1e-3] * 6))
    assert verdict.status == "Inconclusive"
    assert "fall short" in verdict.reason


def test_undecided_band_is_inconclusive():
    """Angle sums between tol and 10 tol are neither rigid nor not rigid"""
    verdict = rigidity_detect(hexagon_link(comparisons=[math.pi / 3 + 5e-7] * 6), tol=1e-6)
    assert verdict.status == "Inconclusive"


def test_degenerate_corner_is_inconclusive():
    """Degenerate corners block a rigid verdict"""
    verdict = rigidity_detect(hexagon_link(degenerate=[2]))
    assert verdict.status == "Inconclusive"
    assert "degenerate" in verdict.reason


def test_local_geodesic_folds_large_turns():
    """A turn above pi is measured the short way around the circle of directions"""
    link = LinkPolygonData(
        vertex="x0",
        angles=[2.0, 1.5, TWO_PI - 3.5],
        comparison_angles=[2.0, 1.5, TWO_PI - 3.5],
        spans=[TWO_PI - 3.5, 1.0, 1.0],
    )
    residuals = local_geodesic_test(link)
    assert residuals[0] == pytest.approx(0.0, abs=1e-12)


def test_octagon_link_matches_comparison_angles(octagon_harmonic):
    """In H^2 itself every link angle equals its comparison angle"""
    t, rep, f = octagon_harmonic
    link = link_polygon(t, rep, f, 0)
    assert len(link.angles) == 18
    assert math.fsum(link.comparison_angles) == pytest.approx(TWO_PI, abs=1e-6)
    for alpha, tilde in zip(link.angles, link.comparison_angles):
        assert alpha == pytest.approx(tilde, abs=1e-6)
    assert not link.degenerate_corners


def test_octagon_is_rigid(octagon_harmonic):
    """The Fuchsian octagon is rigid with vanishing face-pair residuals"""
    t, rep, f = octagon_harmonic
    report = rigidity_report(t, rep, f, length_function_from_map(t, rep, f))
    assert report.overall == "Rigid"
    assert report.verdicts["x0"].status == "Rigid"
    assert len(report.face_pair_residuals) == len(t.edges)
    assert max(report.face_pair_residuals) <= 1e-6


def test_flattened_edge_has_no_link():
    """Zero-length edges leave directions undefined"""
    t, rep = prepare(emit_fixture("tree_overlapping_axes"))
    f = constant_map(t, rep.target.base_point())
    with pytest.raises(GeometryError):
        link_polygon(t, rep, f, 0)


@pytest.fixture(scope="module")
def swapped_handle_report():
    """Pipeline report after replacing the second octagon handle by the first one, swapped.

    The images of a2 and b2 become those of b1 and a1, which keeps the
    relator but leaves the Fuchsian locus.
    """
    config = emit_fixture("fuchsian_octagon_g2")
    images = config.representation.images
    swapped = {"a1": images["a1"], "b1": images["b1"], "a2": images["b1"], "b2": images["a1"]}
    config = config.model_copy(
        update={
            "name": "octagon_swapped_handle",
            "representation": RepresentationSpec(images=swapped),
            "sampling": SamplingSpec(pairs=200),
        }
    )
    return run_pipeline(config)


def test_swapped_handle_is_not_rigid(swapped_handle_report):
    """Leaving the Fuchsian locus turns the octagon's Rigid verdict into NotRigid"""
    report = swapped_handle_report
    assert report.relator_check.passed
    assert report.solver.status == "Converged"
    assert report.curvature.margin > 1e-3
    assert report.rigidity is not None
    assert report.rigidity.overall == "NotRigid"
    assert "rigidity verdict: NotRigid" in report.notes


def test_swapped_handle_link_is_not_a_local_geodesic(swapped_handle_report):
    """Some pair of consecutive link corners folds back on itself"""
    link = swapped_handle_report.rigidity.links[0]
    assert max(local_geodesic_test(link)) > 1e-3
    assert math.fsum(link.comparison_angles) > TWO_PI + 1e-3
