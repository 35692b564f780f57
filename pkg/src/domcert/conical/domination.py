"""Face-wise comparison maps C -> X and sampled 1-Lipschitz checks.

Points of the cone surface are addressed by (face, barycentric triple).
A barycentric triple (l0, l1, l2) names the point obtained by first
moving along side [v1 v2] to parameter l2 / (l1 + l2) and then sliding
toward v0 by the fraction l0. The same construction applied to the
images of the corners in X gives the comparison map, which fixes corners
and is isometric on sides.
"""

import logging
import math
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence, Tuple, cast

import numpy as np

from domcert.conical.surface import ConicalSurface
from domcert.core.errors import GeometryError
from domcert.core.schema import DominationReport
from domcert.geometry.hyperbolic import (
    HPoint,
    boost_to_origin,
    direction_angle,
    h_distance,
    place_apex,
    side_of_geodesic,
)
from domcert.solver.equivariant import EquivariantMap
from domcert.surface.triangulation import GainTriangulation
from domcert.surface.words import IDENTITY, Word, multiply
from domcert.targets.base import BaseTarget
from domcert.targets.hyperbolic import H2Target
from domcert.targets.representation import Representation

logger = logging.getLogger(__name__)

LIPSCHITZ_SLACK = 1e-9
RATIO_FLOOR = 1e-3
BARYCENTRIC_TOLERANCE = 1e-12

_CHART = H2Target()

Barycentric = Tuple[float, float, float]


def _check_barycentric(bary: Sequence[float]) -> Barycentric:
    if len(bary) != 3 or min(bary) < -BARYCENTRIC_TOLERANCE or abs(sum(bary) - 1.0) > BARYCENTRIC_TOLERANCE:
        raise GeometryError(f"invalid barycentric coordinates {tuple(bary)}")
    clipped = [max(0.0, float(x)) for x in bary]
    total = sum(clipped)
    return clipped[0] / total, clipped[1] / total, clipped[2] / total


def nested_point(space: BaseTarget, corners: Sequence[Any], bary: Barycentric) -> Any:
    """The two-geodesic point of a triangle with the given corners."""
    l0, l1, l2 = bary
    if l1 + l2 <= 0.0:
        return corners[0]
    on_side = space.geodesic_point(corners[1], corners[2], l2 / (l1 + l2))
    return space.geodesic_point(on_side, corners[0], l0)


def face_images(
    t: GainTriangulation, rep: Representation, f: EquivariantMap, face: int, shift: Word = IDENTITY
) -> List[Any]:
    """Images in X of the corners of the lift shift . (face lift)."""
    fc = t.faces[face]
    elements = t.lift_elements(fc)
    return [f.lift(rep, v, multiply(shift, elements[k])) for k, v in enumerate(t.face_vertices(fc))]


def domination_map_eval(
    c: ConicalSurface,
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    face: int,
    barycentric: Sequence[float],
) -> Any:
    """Image in X of a chart point of a face under the comparison map.

    Raises:
        GeometryError: "degenerate chart" for flat faces
    """
    if c.is_flat(face):
        raise GeometryError(f"degenerate chart: face {face} is flat")
    bary = _check_barycentric(barycentric)
    return nested_point(rep.target, face_images(t, rep, f, face), bary)


def chart_point(c: ConicalSurface, face: int, barycentric: Sequence[float]) -> HPoint:
    return nested_point(_CHART, c.chart(face), _check_barycentric(barycentric))


@dataclass
class _Unfolded:
    """Two adjacent faces laid out in one chart of H^2."""

    face: int
    other: int
    shift: Word
    corners: Tuple[HPoint, HPoint, HPoint]
    other_corners: Tuple[HPoint, HPoint, HPoint]
    edge_start: HPoint
    edge_end: HPoint


def unfold_across(c: ConicalSurface, face: int, slot: int) -> _Unfolded:
    """Lay out the face across side `slot` next to the face's canonical chart."""
    t = c.triangulation
    other, other_slot, shift = t.adjacent_shift(face, slot)
    corners = c.chart(face)
    fc, oc = t.faces[face], t.faces[other]
    # shared corners of the other face in chart coordinates
    my_tail = t.tail_slot(fc, slot)
    my_head = (slot + 1) % 3 if my_tail == slot else slot
    their_tail = t.tail_slot(oc, other_slot)
    their_head = (other_slot + 1) % 3 if their_tail == other_slot else other_slot
    placed: List[Optional[HPoint]] = [None, None, None]
    placed[their_tail] = corners[my_tail]
    placed[their_head] = corners[my_head]
    apex = 3 - their_tail - their_head
    shape = c.shapes[other]
    a, b, cc = shape.sides
    dist = {(0, 1): a, (0, 2): b, (1, 2): cc}

    def side_length(i: int, j: int) -> float:
        return dist[(min(i, j), max(i, j))]

    mine_apex = corners[3 - my_tail - my_head]
    side = side_of_geodesic(corners[my_tail], corners[my_head], mine_apex)
    placed[apex] = place_apex(
        corners[my_tail],
        corners[my_head],
        side_length(their_tail, apex),
        side_length(their_head, apex),
        -1 if side > 0 else 1,
    )
    other_corners = cast(Tuple[HPoint, HPoint, HPoint], tuple(placed))
    return _Unfolded(face, other, shift, corners, other_corners, corners[my_tail], corners[my_head])


def crosses_segment(p: HPoint, q: HPoint, start: HPoint, end: HPoint) -> bool:
    """Whether the geodesic [p, q] meets the geodesic segment [start, end]."""
    length = h_distance(start, end)
    if length == 0.0:
        return False
    c, s = math.cos(direction_angle(start, end)), math.sin(direction_angle(start, end))
    frame = np.array([[1.0, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]]) @ boost_to_origin(start)
    pp, qq = frame @ p.vector, frame @ q.vector
    if pp[2] * qq[2] > 0.0:
        return False
    d = h_distance(p, q)
    if d == 0.0:
        crossing = pp
    elif abs(pp[2]) < 1e-15:
        crossing = pp
    else:
        # gamma(tau) = cosh(tau) P + sinh(tau) U with U the unit tangent at P toward Q
        tangent = (qq - math.cosh(d) * pp) / math.sinh(d)
        if tangent[2] == 0.0:
            return False
        ratio = -pp[2] / tangent[2]
        if not -1.0 < ratio < 1.0:
            return False
        tau = math.atanh(ratio)
        if tau < -1e-12 or tau > d + 1e-12:
            return False
        crossing = math.cosh(tau) * pp + math.sinh(tau) * tangent
    position = math.asinh(crossing[1])
    return -1e-12 <= position <= length + 1e-12


def cross_chart_distance(p: HPoint, q: HPoint, unfolded: _Unfolded) -> Tuple[float, bool]:
    """Chart distance between points of two adjacent faces.

    Returns:
        (distance, routed): routed pairs go through the nearer shared
        endpoint, which bounds the true surface distance from above
    """
    if crosses_segment(p, q, unfolded.edge_start, unfolded.edge_end):
        return h_distance(p, q), False
    routed = min(
        h_distance(p, unfolded.edge_start) + h_distance(unfolded.edge_start, q),
        h_distance(p, unfolded.edge_end) + h_distance(unfolded.edge_end, q),
    )
    return routed, True


@dataclass
class _Tally:
    face_pairs: int = 0
    cross_pairs: int = 0
    routed: int = 0
    face_max: float = 0.0
    cross_max: float = 0.0
    max_excess: float = -math.inf
    violations: int = 0

    def add(self, d_x: float, d_c: float, cross: bool, routed: bool = False) -> None:
        excess = d_x - d_c
        self.max_excess = max(self.max_excess, excess)
        if excess > LIPSCHITZ_SLACK:
            self.violations += 1
        ratio = d_x / d_c if d_c >= RATIO_FLOOR else 0.0
        if cross:
            self.cross_pairs += 1
            self.routed += int(routed)
            self.cross_max = max(self.cross_max, ratio)
        else:
            self.face_pairs += 1
            self.face_max = max(self.face_max, ratio)

    def report(self, boundary_only: bool) -> DominationReport:
        max_ratio = max(self.face_max, self.cross_max)
        return DominationReport(
            samples=self.face_pairs + self.cross_pairs,
            max_ratio=max_ratio,
            max_excess=self.max_excess if math.isfinite(self.max_excess) else 0.0,
            face_pairs=self.face_pairs,
            cross_edge_pairs=self.cross_pairs,
            routed_pairs=self.routed,
            face_max_ratio=self.face_max,
            cross_edge_max_ratio=self.cross_max,
            boundary_only=boundary_only,
            passed=self.violations == 0,
        )


def random_barycentric(rng: np.random.Generator) -> Barycentric:
    w = rng.dirichlet((1.0, 1.0, 1.0))
    return float(w[0]), float(w[1]), float(w[2])


def random_side_point(rng: np.random.Generator) -> Barycentric:
    """Uniform parameter on a uniformly chosen side; side j joins corners j and j + 1."""
    side = int(rng.integers(0, 3))
    s = float(rng.random())
    bary = [0.0, 0.0, 0.0]
    bary[side] = 1.0 - s
    bary[(side + 1) % 3] = s
    return bary[0], bary[1], bary[2]


def sample_pairs(
    c: ConicalSurface,
    n_pairs: int,
    seed: int,
    boundary_only: bool,
    image: Callable[[int, Barycentric, Word], Any],
    target: BaseTarget,
    surface_faces: Optional[Sequence[int]] = None,
) -> DominationReport:
    """Shared sampler: half the pairs inside single faces, half across shared edges.

    Args:
        c: the surface whose charts measure distances
        n_pairs: number of pairs
        seed: RNG seed
        boundary_only: draw points on face sides only
        image: (face, barycentric, lift shift) -> point of X
        target: the space X
        surface_faces: faces eligible for sampling (default: all non-flat)
    """
    rng = np.random.default_rng(seed)
    faces = list(surface_faces) if surface_faces is not None else [i for i in range(len(c.shapes)) if not c.is_flat(i)]
    if not faces:
        raise GeometryError("degenerate chart: no non-flat face to sample")
    tally = _Tally()
    for k in range(n_pairs):
        face = faces[int(rng.integers(0, len(faces)))]
        use_sides = boundary_only or rng.random() < 0.5
        draw = random_side_point if use_sides else random_barycentric
        if k % 2 == 0:
            b1, b2 = draw(rng), draw(rng)
            d_c = h_distance(chart_point(c, face, b1), chart_point(c, face, b2))
            d_x = target.distance(image(face, b1, IDENTITY), image(face, b2, IDENTITY))
            tally.add(d_x, d_c, cross=False)
            continue
        slot = int(rng.integers(0, 3))
        unfolded = unfold_across(c, face, slot)
        if c.is_flat(unfolded.other):
            continue
        b1, b2 = draw(rng), draw(rng)
        p = chart_point(c, face, b1)
        q = nested_point(_CHART, unfolded.other_corners, b2)
        d_c, routed = cross_chart_distance(p, q, unfolded)
        d_x = target.distance(image(face, b1, IDENTITY), image(unfolded.other, b2, unfolded.shift))
        tally.add(d_x, d_c, cross=True, routed=routed)
    report = tally.report(boundary_only)
    if report.routed_pairs:
        logger.debug(f"{report.routed_pairs} cross-edge pairs were routed through a shared endpoint")
    return report


def lipschitz_sample_check(
    c: ConicalSurface,
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    n_pairs: int = 10000,
    seed: int = 0,
) -> DominationReport:
    """Sample d_X(images) <= d_C(chart points) + 1e-9 on pairs of surface points.

    Half the draws land on face sides and half inside faces, for every target.
    """
    target = rep.target

    def image(face: int, bary: Barycentric, shift: Word) -> Any:
        return nested_point(target, face_images(t, rep, f, face, shift), bary)

    report = sample_pairs(c, n_pairs, seed, False, image, target)
    logger.info(
        f"Lipschitz check over {report.samples} pairs: max ratio {report.max_ratio:.12g}, "
        f"{'pass' if report.passed else 'FAIL'}"
    )
    return report
