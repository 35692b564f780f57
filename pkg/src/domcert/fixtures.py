"""Shipped fixture configurations.

Each fixture is a function returning a PipelineConfig; FIXTURES maps the
public names to them.
"""

import logging
import math
from typing import Callable, Dict, List

from domcert.core.errors import ConfigError
from domcert.core.schema import PipelineConfig, RepresentationSpec, SamplingSpec, SolverParams, TargetSpec
from domcert.geometry.hyperbolic import HIsometry, HPoint
from domcert.surface.triangulation import polygon_labels
from domcert.surface.words import surface_generator_names

logger = logging.getLogger(__name__)


def regular_polygon_vertices(sides: int, vertex_angle: float) -> List[HPoint]:
    """Vertices of the regular hyperbolic polygon centered at the origin, counter-clockwise.

    cosh R = cot(pi / n) cot(angle / 2) for the circumradius R.
    """
    radius = math.acosh(1.0 / (math.tan(math.pi / sides) * math.tan(vertex_angle / 2.0)))
    return [HPoint.from_polar(radius, 2.0 * math.pi * k / sides) for k in range(sides)]


def vertex_star_angles(genus: int) -> Dict[int, float]:
    """Directions of the 4g edge germs at the single vertex, keyed by letter.

    The lift of letter w leaves the vertex toward rho(w) P_0. Walking
    counter-clockwise around the vertex, the germ of w is followed by the
    germ of the inverse of the boundary letter preceding w, each corner
    of the 4g-gon contributing an angle pi / 2g.
    """
    labels = polygon_labels(genus)
    n = len(labels)
    corner = math.pi / (2 * genus)
    angles: Dict[int, float] = {}
    letter = labels[0]
    for step in range(n):
        angles[letter] = step * corner
        letter = -labels[labels.index(letter) - 1]
    return angles


def side_pairings(genus: int) -> Dict[int, HIsometry]:
    """Generator images of the Fuchsian group of the regular 4g-gon with angles pi / 2g.

    The polygon is placed with its vertex at the origin, so every generator
    w moves the origin by the side length s, along the germ of w, and sends
    rho(w^-1) P_0 back to the origin: rho(w) is a rotation about the origin
    followed by a translation of length s.
    """
    angles = vertex_star_angles(genus)
    side = 2.0 * math.acosh(1.0 / math.tan(math.pi / (4 * genus)))
    origin = HPoint.origin()
    images: Dict[int, HIsometry] = {}
    for letter in range(1, 2 * genus + 1):
        turn = math.pi + angles[letter] - angles[-letter]
        images[letter] = HIsometry.translation(side, angles[letter]).compose(HIsometry.rotation(origin, turn))
    return images


def _sl2_images(genus: int, images: Dict[int, HIsometry]) -> Dict[str, List[List[float]]]:
    names = surface_generator_names(genus)
    return {names[g - 1]: iso.to_sl2().tolist() for g, iso in sorted(images.items())}


def fuchsian_octagon_g2() -> PipelineConfig:
    """Side pairings of the regular octagon with all angles pi / 4."""
    return PipelineConfig(
        name="fuchsian_octagon_g2",
        genus=2,
        target=TargetSpec(kind="h2"),
        representation=RepresentationSpec(images=_sl2_images(2, side_pairings(2))),
        solver=SolverParams(tol=1e-10, max_iter=20000, init="origin"),
        sampling=SamplingSpec(pairs=10000),
    )


def tree_overlapping_axes() -> PipelineConfig:
    """a1 -> xy, a2 -> xy^-1 on the rank-2 unit tree; the harmonic maps are not unique."""
    return PipelineConfig(
        name="tree_overlapping_axes",
        genus=2,
        target=TargetSpec(kind="tree", rank=2),
        representation=RepresentationSpec(images={"a1": "xy", "a2": "xy^-1"}),
        solver=SolverParams(tol=1e-10, init_spread=2.0),
        sampling=SamplingSpec(pairs=10000),
    )


def tree_swapped_commutators() -> PipelineConfig:
    """a1 -> x, b1 -> y, a2 -> y, b2 -> x on the rank-3 tree."""
    return PipelineConfig(
        name="tree_swapped_commutators",
        genus=2,
        target=TargetSpec(kind="tree", rank=3),
        representation=RepresentationSpec(images={"a1": "x", "b1": "y", "a2": "y", "b2": "x"}),
        solver=SolverParams(tol=1e-10, init_spread=2.0),
    )


def trivial_rep() -> PipelineConfig:
    """Every generator maps to the identity."""
    return PipelineConfig(
        name="trivial_rep",
        genus=2,
        target=TargetSpec(kind="h2"),
        representation=RepresentationSpec(images={}),
    )


def elliptic_rotations() -> PipelineConfig:
    """Commuting rotations about the origin in each handle; every image fixes the origin."""
    origin = HPoint.origin()
    angles = {"a1": 0.7, "b1": 1.1, "a2": 2.0, "b2": -0.4}
    return PipelineConfig(
        name="elliptic_rotations",
        genus=2,
        target=TargetSpec(kind="h2"),
        representation=RepresentationSpec(
            images={name: HIsometry.rotation(origin, angle).to_sl2().tolist() for name, angle in angles.items()}
        ),
    )


def hyperbolic_cyclic_divergent() -> PipelineConfig:
    """A translation and a parabolic sharing the fixed point at infinity of the upper half plane."""
    half = math.exp(0.5)
    return PipelineConfig(
        name="hyperbolic_cyclic_divergent",
        genus=2,
        target=TargetSpec(kind="h2"),
        representation=RepresentationSpec(
            images={"a1": [[half, 0.0], [0.0, 1.0 / half]], "a2": [[1.0, 1.0], [0.0, 1.0]]}
        ),
        solver=SolverParams(max_iter=400, init="origin"),
    )


def mixed_elliptic_hyperbolic() -> PipelineConfig:
    """Commuting translations along one axis and commuting rotations about a point off it."""
    center = HPoint.from_polar(1.0, math.pi / 2.0)
    images = {
        "a1": HIsometry.translation(1.0).to_sl2().tolist(),
        "b1": HIsometry.translation(0.5).to_sl2().tolist(),
        "a2": HIsometry.rotation(center, 1.0).to_sl2().tolist(),
        "b2": HIsometry.rotation(center, 2.0).to_sl2().tolist(),
    }
    return PipelineConfig(
        name="mixed_elliptic_hyperbolic",
        genus=2,
        target=TargetSpec(kind="h2"),
        representation=RepresentationSpec(images=images),
        solver=SolverParams(tol=1e-10, max_iter=20000),
    )


FIXTURES: Dict[str, Callable[[], PipelineConfig]] = {
    "fuchsian_octagon_g2": fuchsian_octagon_g2,
    "tree_overlapping_axes": tree_overlapping_axes,
    "tree_swapped_commutators": tree_swapped_commutators,
    "trivial_rep": trivial_rep,
    "elliptic_rotations": elliptic_rotations,
    "hyperbolic_cyclic_divergent": hyperbolic_cyclic_divergent,
    "mixed_elliptic_hyperbolic": mixed_elliptic_hyperbolic,
}


def fixture_names() -> List[str]:
    return sorted(FIXTURES)


def emit_fixture(name: str) -> PipelineConfig:
    """The canonical config of a shipped fixture.

    Raises:
        ConfigError: for unknown names
    """
    if name not in FIXTURES:
        raise ConfigError(f"unknown fixture {name!r}; expected one of {fixture_names()}")
    logger.debug(f"Emitting fixture {name}")
    return FIXTURES[name]()
