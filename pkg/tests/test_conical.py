"""
Tests for the conical surface, its curvature certificate and the Lipschitz check
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domcert.conical import build_conical, curvature_certificate, domination_map_eval, gauss_bonnet_residual
from domcert.conical.domination import chart_point, lipschitz_sample_check
from domcert.core.errors import GeometryError, LengthFunctionError
from domcert.fixtures import emit_fixture
from domcert.geometry import comparison_angle, h_distance
from domcert.pipeline import conical_stage, prepare
from domcert.solver import constant_map, solve_harmonic
from domcert.surface.lengths import LengthFunction
from domcert.surface.triangulation import riemann_triangulation
from domcert.targets.representation import deform_representation

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="module")
def octagon_solution():
    """Converged harmonic map of the octagon representation"""
    config = emit_fixture("fuchsian_octagon_g2")
    t, rep = prepare(config)
    outcome = solve_harmonic(t, rep, params=config.solver)
    return t, rep, outcome.map


def test_octagon_cone_angle_and_area(octagon_solution):
    """The Fuchsian octagon glues to a smooth surface of area 4 pi"""
    t, rep, f = octagon_solution
    lengths, surface, certificate = conical_stage(t, rep, f, 1e-9)
    assert surface.cone_angles[0] == pytest.approx(TWO_PI, abs=1e-6)
    assert surface.total_area == pytest.approx(4.0 * math.pi, abs=1e-6)
    assert gauss_bonnet_residual(surface) < 1e-8
    assert certificate.status == "CurvatureAtMostMinusOne"
    assert abs(certificate.margin) < 1e-6
    assert surface.flatten.is_empty


def test_equilateral_lengths_certificate():
    """Unit equilateral faces give cone angle 18 times the equilateral angle"""
    t = riemann_triangulation(2)
    surface = build_conical(t, LengthFunction([1.0] * 9))
    angle = comparison_angle(-1, 1.0, 1.0, 1.0)
    assert surface.cone_angles[0] == pytest.approx(18.0 * angle)
    certificate = curvature_certificate(surface)
    assert certificate.status == "CurvatureAtMostMinusOne"
    assert certificate.margin == pytest.approx(16.54 - TWO_PI, abs=1e-2)
    assert gauss_bonnet_residual(surface) < 1e-8


def test_long_edges_fail_the_certificate():
    """Long equilateral faces leave the vertex with too little angle"""
    t = riemann_triangulation(2)
    certificate = curvature_certificate(build_conical(t, LengthFunction([5.0] * 9)))
    assert certificate.status == "Fails"
    assert certificate.failing_vertices == ["x0"]
    assert certificate.margin < 0.0


def test_flat_edges_are_degenerate():
    """A zero-length edge makes the certificate degenerate"""
    t = riemann_triangulation(2)
    lengths = LengthFunction([0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0])
    assert curvature_certificate(build_conical(t, lengths)).status == "Degenerate"


def test_wrong_length_count_rejected():
    """Length functions must cover every edge"""
    with pytest.raises(LengthFunctionError):
        build_conical(riemann_triangulation(2), LengthFunction([1.0] * 8))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(min_value=1.0, max_value=2.0), min_size=9, max_size=9))
def test_gauss_bonnet_holds_for_random_lengths(values):
    """Area plus cone excess is 4 pi (g - 1) for every valid length function"""
    surface = build_conical(riemann_triangulation(2), LengthFunction(values))
    assert gauss_bonnet_residual(surface) < 1e-8


def test_domination_map_matches_chart_distances(octagon_solution):
    """On a face the comparison map preserves distances for a Fuchsian representation"""
    t, rep, f = octagon_solution
    _, surface, _ = conical_stage(t, rep, f, 1e-9)
    b1, b2 = (0.2, 0.3, 0.5), (0.6, 0.1, 0.3)
    for face in range(len(t.faces)):
        d_x = h_distance(
            domination_map_eval(surface, t, rep, f, face, b1), domination_map_eval(surface, t, rep, f, face, b2)
        )
        d_c = h_distance(chart_point(surface, face, b1), chart_point(surface, face, b2))
        assert d_x == pytest.approx(d_c, abs=1e-9)


def test_domination_map_rejects_bad_coordinates(octagon_solution):
    """Barycentric coordinates must be nonnegative and sum to one"""
    t, rep, f = octagon_solution
    _, surface, _ = conical_stage(t, rep, f, 1e-9)
    with pytest.raises(GeometryError):
        domination_map_eval(surface, t, rep, f, 0, (0.5, 0.6, -0.1))


@pytest.mark.parametrize("twists", [[(0.2, 0.0)], [(0.0, -0.15)], [(0.1, 0.1), (-0.2, 0.05)]])
def test_deformed_octagon_cone_angle(octagon_config, twists):
    """Harmonic maps of deformed octagon representations have cone angle at least 2 pi"""
    t, rep = prepare(octagon_config)
    deformed = deform_representation(rep, twists)
    assert deformed.relator_check().passed
    outcome = solve_harmonic(t, deformed, params=octagon_config.solver)
    assert outcome.status == "Converged"
    _, surface, _ = conical_stage(t, deformed, outcome.map, 1e-9)
    assert surface.cone_angles[0] >= TWO_PI - 1e-6


def test_octagon_lipschitz_check_passes(octagon_solution):
    """The sampled check passes with ratio one for the octagon"""
    t, rep, f = octagon_solution
    _, surface, _ = conical_stage(t, rep, f, 1e-9)
    report = lipschitz_sample_check(surface, t, rep, f, n_pairs=300, seed=1)
    assert report.passed
    assert report.samples == report.face_pairs + report.cross_edge_pairs
    assert report.face_pairs > 0 and report.cross_edge_pairs > 0
    assert report.max_excess < 1e-9
    assert report.max_ratio == pytest.approx(1.0, abs=1e-6)
    assert not report.boundary_only


def test_lipschitz_check_is_deterministic(octagon_solution):
    """A fixed seed reproduces the report"""
    t, rep, f = octagon_solution
    _, surface, _ = conical_stage(t, rep, f, 1e-9)
    first = lipschitz_sample_check(surface, t, rep, f, n_pairs=50, seed=4)
    second = lipschitz_sample_check(surface, t, rep, f, n_pairs=50, seed=4)
    assert first == second


def test_tree_check_samples_face_interiors():
    """Tree targets are sampled inside faces as well as on sides"""
    t, rep = prepare(emit_fixture("tree_overlapping_axes"))
    surface = build_conical(t, LengthFunction([1.0] * 9))
    f = constant_map(t, rep.target.base_point())
    report = lipschitz_sample_check(surface, t, rep, f, n_pairs=100, seed=0)
    assert not report.boundary_only
    assert report.samples > 0
    assert report.passed


def test_twenty_deformed_representations_keep_cone_angle(octagon_config):
    """Random twists of the octagon never push the cone angle below 2 pi"""
    t, rep = prepare(octagon_config)
    rng = np.random.default_rng(2024)
    for _ in range(20):
        twists = [(float(rng.uniform(-0.2, 0.2)), float(rng.uniform(-0.2, 0.2))) for _ in range(2)]
        deformed = deform_representation(rep, twists)
        assert deformed.relator_check().passed
        outcome = solve_harmonic(t, deformed, params=octagon_config.solver)
        assert outcome.status == "Converged"
        _, surface, _ = conical_stage(t, deformed, outcome.map, 1e-9)
        assert surface.cone_angles[0] >= TWO_PI - 1e-6


def test_octagon_lipschitz_check_over_ten_thousand_pairs(octagon_solution):
    """Ten thousand sampled pairs stay within ratio 1 + 1e-9"""
    t, rep, f = octagon_solution
    _, surface, _ = conical_stage(t, rep, f, 1e-9)
    report = lipschitz_sample_check(surface, t, rep, f, n_pairs=10000, seed=0)
    assert report.passed
    assert report.samples >= 9000
    assert report.max_ratio <= 1.0 + 1e-9
    assert report.max_excess <= 1e-9


def test_shrunk_edge_fails_the_lipschitz_check(octagon_solution):
    """Shrinking one edge of the surface by 1% is caught by the sampled check"""
    t, rep, f = octagon_solution
    lengths, _, _ = conical_stage(t, rep, f, 1e-9)
    values = list(lengths.lengths)
    values[0] *= 0.99
    corrupted = build_conical(t, LengthFunction(values))
    report = lipschitz_sample_check(corrupted, t, rep, f, n_pairs=10000, seed=0)
    assert not report.passed
    assert report.max_ratio > 1.0 + 1e-3
