"""
Pytest configuration for domcert tests
"""

import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np
import pytest

# Add the src directory to the path for all tests
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from domcert.core.schema import SamplingSpec
from domcert.fixtures import emit_fixture, side_pairings
from domcert.geometry.spherical import SPoint
from domcert.rigidity.spherical_polygon import SphericalPolygon
from domcert.surface.triangulation import riemann_triangulation
from domcert.targets.hyperbolic import H2Target
from domcert.targets.representation import Representation
from domcert.targets.tree import TreeSpace


@pytest.fixture(autouse=True)
def isolated_config_dir(monkeypatch):
    """Point the user config at a temporary directory for every test"""
    with tempfile.TemporaryDirectory() as temp_dir:
        monkeypatch.setenv("DOMCERT_CONFIG_DIR", temp_dir)
        yield temp_dir


@pytest.fixture
def genus2():
    """The one-vertex triangulation of the genus-2 surface"""
    return riemann_triangulation(2)


@pytest.fixture
def h2():
    return H2Target()


@pytest.fixture
def octagon_rep(h2):
    """Side pairings of the regular octagon as a representation into H^2"""
    return Representation(h2, 2, side_pairings(2))


@pytest.fixture
def tree2():
    return TreeSpace(2)


@pytest.fixture
def octagon_config():
    """The octagon fixture with a sample count small enough for unit tests"""
    config = emit_fixture("fuchsian_octagon_g2")
    return config.model_copy(update={"sampling": SamplingSpec(pairs=200)})


@pytest.fixture
def config_file():
    """Write a config document to a temporary file and return its path"""
    paths = []

    def _write(text: str, suffix: str = ".json") -> str:
        with tempfile.NamedTemporaryFile("w", delete=False, suffix=suffix, encoding="utf-8") as f:
            f.write(text)
            paths.append(f.name)
            return f.name

    yield _write
    for path in paths:
        os.unlink(path)


def star_polygon(rng: np.random.Generator, n: int) -> SphericalPolygon:
    """Random simple polygon around the north pole with perimeter below 2 pi."""
    azimuths = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
    polars = rng.uniform(0.05, 0.6, n)
    vertices = tuple(SPoint.from_spherical(float(r), float(a)) for r, a in zip(polars, azimuths))
    polygon = SphericalPolygon(vertices)
    while polygon.perimeter >= 1.9 * math.pi:
        polars = 0.5 * polars
        polygon = SphericalPolygon(
            tuple(SPoint.from_spherical(float(r), float(a)) for r, a in zip(polars, azimuths))
        )
    return polygon


@pytest.fixture
def random_polygon():
    """Factory for seeded random star-shaped spherical polygons"""

    def _make(seed: int, n: int = 6) -> SphericalPolygon:
        return star_polygon(np.random.default_rng(seed), n)

    return _make
