"""Degeneracy classification and the uniform length perturbation l + eps.

Adding eps to every edge makes every face strictly non-flat: a face
(a, b, c) with a = b + c becomes (a + eps, b + eps, c + eps) whose
triangle slack is exactly eps. Sides of the perturbed triangle map back
onto the original sides by clamping to [eps / 2, l + eps / 2].
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from domcert.conical.surface import TWO_PI, ConicalSurface, build_conical
from domcert.core.errors import EpsilonSearchError, GeometryError, LengthFunctionError
from domcert.core.schema import DegeneracyReport, DominationReport, PerturbationPlan
from domcert.geometry.hyperbolic import h_distance, h_geodesic_point
from domcert.geometry.triangles import TriangleShape, embed_comparison_triangle
from domcert.surface.lengths import LengthFunction, flatten_report
from domcert.surface.triangulation import GainTriangulation

logger = logging.getLogger(__name__)

RIGIDITY_WINDOW = 1e-6
ADMISSIBLE_MARGIN = 1e-9
EPSILON_START = 1.0
EPSILON_STEPS = 60
BISECTION_STEPS = 40
EPSILON_TOLERANCE = 1e-3
SIDE_TOLERANCE = 1e-12
DOMINATION_SLACK = 1e-9

# side j of a face joins corners j and j + 1
SIDE_CORNERS: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 2), (2, 0))


def classify_degeneracy(
    t: GainTriangulation,
    lengths: LengthFunction,
    cone_angles: Optional[Mapping[int, float]] = None,
) -> DegeneracyReport:
    """Sort (T, l) into the degeneracy cases of the perturbation argument.

    Args:
        t: the triangulation
        lengths: a valid length function
        cone_angles: cone angles per vertex; computed from `lengths` when omitted

    Returns:
        DegeneracyReport with the classification and the rigidity-eligible flag
    """
    report = flatten_report(t, lengths)
    n_edges = len(t.edges)
    if len(report.flat_edges) == n_edges:
        return DegeneracyReport(classification="AllEdgesFlattened", flat_face_count=len(report.flat_faces))
    if report.flat_edges:
        flat = set(report.flat_edges)
        # a face whose three sides all vanish is not covered by the one-long-side analysis
        nonstandard = any(all(h.edge in flat for h in face.sides) for face in t.faces)
        if nonstandard:
            logger.warning("Degeneracy with a fully collapsed face while other edges survive")
        return DegeneracyReport(
            classification="SomeEdgeFlattened", flat_face_count=len(report.flat_faces), nonstandard=nonstandard
        )
    if not report.flat_faces:
        return DegeneracyReport(classification="NonDegenerate")
    if cone_angles is None:
        cone_angles = build_conical(t, lengths).cone_angles
    margin = min(theta - TWO_PI for theta in cone_angles.values())
    eligible = len(report.flat_faces) == 1 and abs(margin) <= RIGIDITY_WINDOW
    return DegeneracyReport(
        classification="FlatFaceNoFlatEdge",
        cone_angle_exceeds_2pi=margin > RIGIDITY_WINDOW,
        flat_face_count=len(report.flat_faces),
        rigidity_eligible=eligible,
    )


def perturb(lengths: LengthFunction, epsilon: float) -> LengthFunction:
    """l + eps on every edge."""
    if not epsilon > 0.0:
        raise LengthFunctionError(f"perturbation must be positive, got {epsilon}")
    return lengths.shifted(epsilon)


def side_reparam(length: float, epsilon: float, s: float) -> float:
    """Arclength on a side of length l + eps to arclength on the side of length l.

    The projection onto [eps / 2, l + eps / 2] followed by the shift by
    -eps / 2; 1-Lipschitz and endpoint-preserving.

    Raises:
        GeometryError: if s lies outside [0, l + eps]
    """
    if s < -SIDE_TOLERANCE or s > length + epsilon + SIDE_TOLERANCE:
        raise GeometryError(f"side position {s} outside [0, {length + epsilon}]")
    half = 0.5 * epsilon
    return min(max(s - half, 0.0), length)


def _side_point(corners, side: int, arclength: float, total: float):
    i, k = SIDE_CORNERS[side]
    if total <= 0.0:
        return corners[i]
    return h_geodesic_point(corners[i], corners[k], min(arclength / total, 1.0))


def triangle_domination_check(
    shape: TriangleShape, epsilon: float, n_samples: int = 1000, seed: int = 0
) -> DominationReport:
    """Sample side pairs of Delta_eps and compare with their images on Delta.

    Distances on both sides are measured in the embedded comparison
    triangles. With eps = 0 the map is the identity.
    """
    if epsilon < 0.0:
        raise GeometryError(f"perturbation must be nonnegative, got {epsilon}")
    perturbed = TriangleShape(-1, tuple(x + epsilon for x in shape.sides))  # type: ignore[arg-type]
    source = embed_comparison_triangle(perturbed)
    image = embed_comparison_triangle(shape)
    a, b, c = shape.sides
    by_slot = (a, c, b)
    rng = np.random.default_rng(seed)
    max_ratio, max_excess, violations = 0.0, -math.inf, 0
    for _ in range(n_samples):
        points = []
        for _ in range(2):
            side = int(rng.integers(0, 3))
            total = by_slot[side] + epsilon
            s = float(rng.random()) * total
            points.append(
                (
                    _side_point(source, side, s, total),
                    _side_point(image, side, side_reparam(by_slot[side], epsilon, s), by_slot[side]),
                )
            )
        d_source = h_distance(points[0][0], points[1][0])
        d_image = h_distance(points[0][1], points[1][1])
        excess = d_image - d_source
        max_excess = max(max_excess, excess)
        violations += int(excess > DOMINATION_SLACK)
        if d_source >= 1e-3:
            max_ratio = max(max_ratio, d_image / d_source)
    return DominationReport(
        samples=n_samples,
        max_ratio=max_ratio,
        max_excess=max_excess if math.isfinite(max_excess) else 0.0,
        face_pairs=n_samples,
        cross_edge_pairs=0,
        routed_pairs=0,
        face_max_ratio=max_ratio,
        cross_edge_max_ratio=0.0,
        boundary_only=True,
        passed=violations == 0,
    )


@dataclass
class EpsilonChoice:
    """Outcome of the eps search: a plan, or the case that needs none."""

    verdict: str
    degeneracy: DegeneracyReport
    plan: Optional[PerturbationPlan] = None
    perturbed: Optional[ConicalSurface] = None
    trace: List[Tuple[float, float]] = field(default_factory=list)


def _plan(t: GainTriangulation, base: ConicalSurface, perturbed: ConicalSurface, epsilon: float) -> PerturbationPlan:
    names = t.vertex_names
    deltas = [
        [new - old for new, old in zip(after, before)] for after, before in zip(perturbed.corners, base.corners)
    ]
    return PerturbationPlan(
        epsilon=epsilon,
        margin=perturbed.margin(),
        angle_deltas=deltas,
        cone_angles={names[v]: theta for v, theta in perturbed.cone_angles.items()},
    )


def choose_epsilon(
    t: GainTriangulation,
    lengths: LengthFunction,
    cone_angles: Optional[Mapping[int, float]] = None,
) -> EpsilonChoice:
    """Pick eps so that every perturbed cone angle exceeds 2 pi.

    eps is admissible when all perturbed cone angles exceed 2 pi + 1e-9,
    no face stays flat and, when the unperturbed angles already exceed
    2 pi, the perturbed margin keeps at least half the unperturbed one.
    Starting from 1, eps is halved until admissible; the interval between
    that eps and the last inadmissible one is then bisected down to a
    relative width of EPSILON_TOLERANCE, and the largest admissible eps
    found is used.

    Raises:
        EpsilonSearchError: if no admissible eps appears within 60 halvings
    """
    base = build_conical(t, lengths)
    angles: Dict[int, float] = dict(cone_angles) if cone_angles is not None else base.cone_angles
    degeneracy = classify_degeneracy(t, lengths, angles)
    kind = degeneracy.classification
    if kind == "NonDegenerate":
        return EpsilonChoice("NotNeeded", degeneracy)
    if kind == "AllEdgesFlattened":
        logger.info("All edges flattened: the map is constant")
        return EpsilonChoice("ConstantMap", degeneracy)
    if degeneracy.rigidity_eligible:
        logger.info("Cone angle 2 pi with one flat face: rigidity case, no perturbation")
        return EpsilonChoice("RigidityCase", degeneracy)

    required = ADMISSIBLE_MARGIN
    if degeneracy.cone_angle_exceeds_2pi:
        required = max(required, 0.5 * min(theta - TWO_PI for theta in angles.values()))
    trace: List[Tuple[float, float]] = []

    def attempt(epsilon: float) -> Optional[ConicalSurface]:
        perturbed = build_conical(t, perturb(lengths, epsilon))
        margin = perturbed.margin()
        trace.append((epsilon, margin))
        logger.debug(f"eps={epsilon:.3e}: perturbed margin {margin:.6e} (need > {required:.3e})")
        if margin > required and not flatten_report(t, perturbed.lengths).flat_faces:
            return perturbed
        return None

    feasible: Optional[Tuple[float, ConicalSurface]] = None
    infeasible: Optional[float] = None
    epsilon = EPSILON_START
    for _ in range(EPSILON_STEPS):
        perturbed = attempt(epsilon)
        if perturbed is not None:
            feasible = (epsilon, perturbed)
            break
        infeasible = epsilon
        epsilon *= 0.5
    if feasible is None:
        logger.error(f"No admissible eps in {EPSILON_STEPS} halvings; last margin {trace[-1][1]:.3e}")
        raise EpsilonSearchError(f"no admissible epsilon in {EPSILON_STEPS} halvings", trace)

    if infeasible is not None:
        low, high = feasible[0], infeasible
        for _ in range(BISECTION_STEPS):
            if high - low <= EPSILON_TOLERANCE * high:
                break
            middle = 0.5 * (low + high)
            perturbed = attempt(middle)
            if perturbed is not None:
                feasible, low = (middle, perturbed), middle
            else:
                high = middle
        logger.debug(f"Bisection bracket [{low:.6e}, {high:.6e}] after {len(trace)} evaluations")

    epsilon, perturbed = feasible
    plan = _plan(t, base, perturbed, epsilon)
    logger.info(f"Chose eps={epsilon:.6g} with perturbed cone-angle margin {plan.margin:.6g}")
    return EpsilonChoice("Perturbed", degeneracy, plan, perturbed, trace)


def side_lengths(t: GainTriangulation, lengths: LengthFunction, face: int) -> Tuple[float, float, float]:
    """Lengths of sides 0, 1, 2 of a face (corner pairs (0,1), (1,2), (2,0))."""
    return tuple(lengths[h.edge] for h in t.faces[face].sides)  # type: ignore[return-value]

