"""
Tests for degeneracy classification, the eps perturbation and the composite check
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from domcert.conical import build_conical
from domcert.core.errors import EpsilonSearchError, GeometryError, LengthFunctionError
from domcert.desing import (
    choose_epsilon,
    classify_degeneracy,
    desingularize,
    perturb,
    side_reparam,
    triangle_domination_check,
)
from domcert.desing.perturbation import BISECTION_STEPS, EPSILON_START, EPSILON_STEPS, EPSILON_TOLERANCE
from domcert.fixtures import emit_fixture
from domcert.geometry import TriangleShape
from domcert.pipeline import prepare
from domcert.solver import constant_map
from domcert.surface.lengths import LengthFunction, flatten_report, length_function_from_map
from domcert.targets.representation import identity_representation


def lengths_with(t, edge_name: str, value: float, base: float = 1.0, **others: float) -> LengthFunction:
    values = {e.name: base for e in t.edges}
    values.update(others)
    values[edge_name] = value
    return LengthFunction([values[e.name] for e in t.edges])


def test_side_reparam_endpoints():
    """The reparametrization fixes both ends of a side"""
    assert side_reparam(2.0, 0.5, 0.0) == 0.0
    assert side_reparam(2.0, 0.5, 2.5) == 2.0
    assert side_reparam(2.0, 0.5, 1.25) == pytest.approx(1.0)


@settings(max_examples=50, deadline=None)
@given(
    st.floats(min_value=0.0, max_value=3.0),
    st.floats(min_value=1e-3, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
    st.floats(min_value=0.0, max_value=1.0),
)
def test_side_reparam_is_one_lipschitz(length, eps, u, v):
    """Reparametrized positions are never farther apart than the originals"""
    s, r = u * (length + eps), v * (length + eps)
    assert abs(side_reparam(length, eps, s) - side_reparam(length, eps, r)) <= abs(s - r) + 1e-12


def test_side_reparam_out_of_range():
    """Positions outside the perturbed side are rejected"""
    with pytest.raises(GeometryError):
        side_reparam(1.0, 0.1, 1.5)


def test_perturb_adds_epsilon_everywhere():
    """Perturbation shifts every length and needs a positive eps"""
    assert perturb(LengthFunction([0.0, 1.0]), 0.25).lengths == [0.25, 1.25]
    with pytest.raises(LengthFunctionError):
        perturb(LengthFunction([1.0]), 0.0)


def test_perturbation_removes_flat_faces(genus2):
    """Every face has slack eps after the perturbation"""
    lengths = lengths_with(genus2, "a1", 2.0)
    assert flatten_report(genus2, lengths).flat_faces
    assert not flatten_report(genus2, perturb(lengths, 1e-3)).flat_faces


def test_classification_cases(genus2):
    """Each degeneracy class is recognized"""
    assert classify_degeneracy(genus2, LengthFunction([1.0] * 9)).classification == "NonDegenerate"
    assert classify_degeneracy(genus2, LengthFunction([0.0] * 9)).classification == "AllEdgesFlattened"
    some = classify_degeneracy(genus2, lengths_with(genus2, "b1", 0.0))
    assert some.classification == "SomeEdgeFlattened"
    assert not some.nonstandard
    flat = classify_degeneracy(genus2, lengths_with(genus2, "a1", 2.0))
    assert flat.classification == "FlatFaceNoFlatEdge"
    assert flat.flat_face_count == 2
    assert flat.cone_angle_exceeds_2pi
    assert not flat.rigidity_eligible


def test_choose_epsilon_needs_nothing_for_nondegenerate(genus2):
    """Nondegenerate surfaces need no perturbation"""
    assert choose_epsilon(genus2, LengthFunction([1.0] * 9)).verdict == "NotNeeded"
    assert choose_epsilon(genus2, LengthFunction([0.0] * 9)).verdict == "ConstantMap"


def test_choose_epsilon_keeps_half_the_margin(genus2):
    """The chosen eps keeps at least half the unperturbed cone-angle margin"""
    lengths = lengths_with(genus2, "a1", 2.0)
    base_margin = build_conical(genus2, lengths).margin()
    choice = choose_epsilon(genus2, lengths)
    assert choice.verdict == "Perturbed"
    assert choice.plan is not None
    assert choice.plan.margin > 0.5 * base_margin
    assert choice.plan.epsilon <= 1.0
    assert not choice.perturbed.flat_faces
    assert (choice.plan.epsilon, choice.plan.margin) in choice.trace


def test_choose_epsilon_bisects_to_tolerance(genus2):
    """The chosen eps sits within the relative tolerance of an inadmissible eps"""
    lengths = lengths_with(genus2, "a1", 4.0, base=2.0)
    choice = choose_epsilon(genus2, lengths)
    eps = choice.plan.epsilon
    assert 0.5 <= eps < EPSILON_START
    above = [e for e, _ in choice.trace if e > eps]
    assert EPSILON_START in above
    assert min(above) - eps <= EPSILON_TOLERANCE * min(above) + 1e-15
    assert len(choice.trace) <= EPSILON_STEPS + BISECTION_STEPS


def test_epsilon_search_fails_below_two_pi(genus2):
    """No eps helps when the cone angle is far below 2 pi"""
    lengths = lengths_with(genus2, "a1", 16.0, base=8.0, d3=10.0)
    with pytest.raises(EpsilonSearchError) as excinfo:
        choose_epsilon(genus2, lengths)
    assert len(excinfo.value.trace) == 60


@pytest.mark.parametrize("sides", [(2.0, 1.0, 1.0), (1.0, 1.3, 0.3), (0.5, 0.7, 0.9)])
def test_triangle_domination_check_passes(sides):
    """The side map of the perturbed triangle onto the original is 1-Lipschitz"""
    report = triangle_domination_check(TriangleShape(-1, sides), 0.1, n_samples=400, seed=2)
    assert report.passed
    assert report.boundary_only


def test_triangle_domination_without_perturbation_is_isometric():
    """With eps = 0 side points map to themselves"""
    report = triangle_domination_check(TriangleShape(-1, (0.5, 0.7, 0.9)), 0.0, n_samples=200)
    assert abs(report.max_excess) < 1e-9


def test_desingularize_tree_map_at_common_axis_vertex():
    """A tree map with collapsed faces is perturbed and flagged as nonstandard"""
    t, rep = prepare(emit_fixture("tree_overlapping_axes"))
    f = constant_map(t, rep.target.base_point())
    lengths = length_function_from_map(t, rep, f)
    report = desingularize(t, lengths, rep, f, n_pairs=100, seed=0)
    assert report.degeneracy.classification == "SomeEdgeFlattened"
    assert report.degeneracy.nonstandard
    assert report.verdict == "Perturbed"
    assert report.plan is not None and report.plan.margin > 0.0
    assert report.perturbed_certificate.status == "CurvatureAtMostMinusOne"
    assert report.composite_domination is not None
    assert report.composite_domination.boundary_only
    assert any("nonstandard" in note for note in report.notes)


def test_tree_composite_check_over_ten_thousand_pairs():
    """The perturbed tree surface dominates the tree map on ten thousand side pairs"""
    t, rep = prepare(emit_fixture("tree_overlapping_axes"))
    f = constant_map(t, rep.target.base_point())
    report = desingularize(t, length_function_from_map(t, rep, f), rep, f, n_pairs=10000, seed=1)
    composite = report.composite_domination
    assert composite is not None
    assert composite.passed
    assert composite.samples >= 9000
    assert composite.max_ratio <= 1.0 + 1e-9


def test_desingularize_constant_map(genus2, h2):
    """All edges flattened means a constant map"""
    rep = identity_representation(h2, 2)
    f = constant_map(genus2, h2.base_point())
    report = desingularize(genus2, LengthFunction([0.0] * 9), rep, f)
    assert report.verdict == "ConstantMap"
    assert report.composite_domination is None
