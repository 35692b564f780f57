"""
Tests for user defaults, config loading, override precedence and canonical output
"""

import json
import os
import tempfile

import pytest

from domcert.core.errors import ConfigError
from domcert.fixtures import emit_fixture
from domcert.utils.config import (
    ConfigManager,
    default_config_file,
    load_pipeline_config,
    parse_user_value,
    resolve_config,
)
from domcert.utils.serialization import dumps_canonical, format_float, write_document

MINIMAL = {"genus": 2, "target": {"kind": "h2"}, "solver": {"tol": 1e-7}}


def test_config_manager_persists(isolated_config_dir):
    """Values set through one manager are seen by the next"""
    manager = ConfigManager()
    assert manager.config_path == default_config_file()
    assert manager.config_path.startswith(isolated_config_dir)
    assert manager.set_config("samples", 2000)
    assert ConfigManager().get_config() == {"samples": 2000}
    manager.set_config("samples", None)
    assert ConfigManager().get_config() == {}


def test_config_manager_recovers_from_bad_file(isolated_config_dir):
    """A corrupt user config falls back to empty defaults"""
    path = os.path.join(isolated_config_dir, "config.json")
    with open(path, "w", encoding="utf-8") as f:
        f.write("{not json")
    assert ConfigManager().get_config() == {}


def test_parse_user_value():
    """User values are converted to the key's type"""
    assert parse_user_value("samples", "2000") == 2000
    assert parse_user_value("tol", "1e-8") == pytest.approx(1e-8)
    assert parse_user_value("report_dir", "~/reports") == "~/reports"


@pytest.mark.parametrize(("key", "raw"), [("samples", "many"), ("tol", "-1"), ("colour", "red")])
def test_parse_user_value_errors(key, raw):
    """Unknown keys, bad types and negative numbers are rejected"""
    with pytest.raises(ConfigError):
        parse_user_value(key, raw)


def test_load_json_config(config_file):
    """A minimal JSON config validates with built-in defaults"""
    config = load_pipeline_config(config_file(json.dumps(MINIMAL)))
    assert config.genus == 2
    assert config.solver.tol == pytest.approx(1e-7)
    assert config.solver.max_iter == 5000
    assert config.triangulation == "riemann"


def test_load_toml_config(config_file):
    """TOML configs are read the same way"""
    path = config_file('genus = 3\n\n[target]\nkind = "tree"\nrank = 2\n\n[solver]\nmax_iter = 7\n', ".toml")
    config = load_pipeline_config(path)
    assert config.genus == 3
    assert config.target.kind == "tree"
    assert config.solver.max_iter == 7


@pytest.mark.parametrize(
    "text",
    [
        "{",
        json.dumps({"genus": 1, "target": {"kind": "h2"}}),
        json.dumps({"genus": 2, "target": {"kind": "h2"}, "solver": {"tolerance": 1.0}}),
    ],
)
def test_invalid_configs(config_file, text):
    """Malformed documents and schema violations are config errors"""
    with pytest.raises(ConfigError):
        load_pipeline_config(config_file(text))


def test_missing_config_file():
    """A missing file is a config error"""
    with pytest.raises(ConfigError):
        load_pipeline_config("/nonexistent/run.json")


def test_resolve_precedence(config_file):
    """Flag beats file, file beats user default, user default beats built-in"""
    config = load_pipeline_config(config_file(json.dumps(MINIMAL)))
    defaults = {"tol": 1e-5, "samples": 50, "max_iter": 9}

    resolved = resolve_config(config, user_defaults=defaults)
    assert resolved.solver.tol == pytest.approx(1e-7)
    assert resolved.solver.max_iter == 9
    assert resolved.sampling.pairs == 50

    flagged = resolve_config(config, tol=1e-3, samples=10, user_defaults=defaults)
    assert flagged.solver.tol == pytest.approx(1e-3)
    assert flagged.sampling.pairs == 10


def test_resolve_seed_sets_both_sections():
    """One seed drives the solver and the sampler"""
    resolved = resolve_config(emit_fixture("trivial_rep"), seed=7)
    assert resolved.solver.seed == 7
    assert resolved.sampling.seed == 7


def test_resolve_without_overrides_is_identity():
    """Nothing to apply returns the config unchanged"""
    config = emit_fixture("trivial_rep")
    assert resolve_config(config) is config


def test_canonical_json_format():
    """Sorted keys, 17-digit floats, null for non-finite values and a final newline"""
    text = dumps_canonical({"b": 1, "a": [0.1, float("nan")], "c": 2.0, "d": True})
    assert text == (
        '{\n  "a": [\n    0.10000000000000001,\n    null\n  ],\n  "b": 1,\n  "c": 2.0,\n  "d": true\n}\n'
    )
    assert format_float(1e20) == "1e+20"
    assert format_float(float("inf")) == "null"


def test_canonical_json_is_stable():
    """Equal configs serialise to equal bytes"""
    assert dumps_canonical(emit_fixture("fuchsian_octagon_g2")) == dumps_canonical(emit_fixture("fuchsian_octagon_g2"))


@pytest.mark.parametrize("suffix", [".json", ".toml"])
def test_written_configs_load_back(suffix):
    """Configs written as JSON or TOML load back to the same values"""
    config = emit_fixture("tree_overlapping_axes")
    with tempfile.TemporaryDirectory() as temp_dir:
        path = write_document(config, os.path.join(temp_dir, "nested", f"run{suffix}"))
        assert path.exists()
        assert load_pipeline_config(path).model_dump() == config.model_dump()
