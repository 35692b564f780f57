"""
Tests for the shipped fixtures and the end-to-end pipeline report
"""

import math

import jsonschema
import pytest

from domcert.core.errors import ConfigError
from domcert.core.schema import PipelineReport
from domcert.fixtures import FIXTURES, emit_fixture, fixture_names, regular_polygon_vertices
from domcert.geometry import h_distance
from domcert.pipeline import CERTIFIED, DIVERGED_NOTE, TRIVIAL, run_pipeline


def test_fixture_names():
    """Every shipped fixture is listed and sorted"""
    names = fixture_names()
    assert names == sorted(FIXTURES)
    assert "fuchsian_octagon_g2" in names
    assert "hyperbolic_cyclic_divergent" in names


def test_unknown_fixture():
    """Unknown fixture names are config errors"""
    with pytest.raises(ConfigError):
        emit_fixture("nope")


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_names_match_configs(name):
    """A fixture config carries its own name"""
    config = emit_fixture(name)
    assert config.name == name
    assert config.genus >= 2


def test_regular_octagon_side_length():
    """The octagon with angles pi/4 has cosh(s/2) = cot(pi/8)"""
    corners = regular_polygon_vertices(8, math.pi / 4)
    side = h_distance(corners[0], corners[1])
    assert math.cosh(side / 2.0) == pytest.approx(1.0 / math.tan(math.pi / 8), rel=1e-9)
    for k in range(8):
        assert h_distance(corners[k], corners[(k + 1) % 8]) == pytest.approx(side, rel=1e-9)


@pytest.fixture(scope="module")
def octagon_report():
    """Pipeline report of the octagon fixture with few sampled pairs"""
    config = emit_fixture("fuchsian_octagon_g2")
    config = config.model_copy(update={"sampling": config.sampling.model_copy(update={"pairs": 200})})
    return run_pipeline(config)


def test_octagon_pipeline_certifies(octagon_report):
    """The Fuchsian octagon is certified and rigid"""
    report = octagon_report
    assert report.solver.status == "Converged"
    assert report.curvature.status == "CurvatureAtMostMinusOne"
    assert abs(report.curvature.margin) < 1e-6
    assert report.conical.total_area == pytest.approx(4.0 * math.pi, abs=1e-6)
    assert report.rigidity.overall == "Rigid"
    assert report.domination.passed
    assert report.domination_status == CERTIFIED
    assert "rigidity verdict: Rigid" in report.notes
    assert report.desingularization is None


def test_report_matches_its_schema(octagon_report):
    """The JSON form of a report validates against the published schema"""
    jsonschema.validate(octagon_report.model_dump(mode="json"), PipelineReport.model_json_schema())


def test_pipeline_is_deterministic(octagon_config):
    """Two runs of one config without timing produce equal reports"""
    assert run_pipeline(octagon_config) == run_pipeline(octagon_config)


def test_timing_is_opt_in():
    """Stage timings appear only when requested"""
    report = run_pipeline(emit_fixture("trivial_rep"), timing=True)
    assert report.timing is not None
    assert "solve" in report.timing
    assert run_pipeline(emit_fixture("trivial_rep")).timing is None


def test_trivial_rep_is_trivially_dominated():
    """The trivial representation stops after the solve"""
    report = run_pipeline(emit_fixture("trivial_rep"))
    assert report.solver.status == "FixedPointConstant"
    assert report.domination_status == TRIVIAL
    assert report.curvature is None


def test_divergent_pipeline_is_not_certified():
    """A diverging solve is reported, not certified"""
    records = []
    report = run_pipeline(emit_fixture("hyperbolic_cyclic_divergent"), trace_sink=records.append)
    assert report.solver.status == "Diverged"
    assert report.domination_status.startswith("not certified: solver diverged")
    assert DIVERGED_NOTE in report.notes
    assert report.conical is None
    assert records


def test_report_keeps_config(octagon_report):
    """The report echoes the config it ran"""
    assert octagon_report.config["name"] == "fuchsian_octagon_g2"
    assert octagon_report.config["sampling"]["pairs"] == 200
    assert octagon_report.versions.domcert
