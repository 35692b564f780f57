"""The composite map C' -> C -> X after a perturbation, and the desingularization driver."""

import logging
from typing import Any, List, Optional

from domcert.conical.domination import Barycentric, face_images, sample_pairs
from domcert.conical.surface import DEFAULT_CERTIFICATE_TOLERANCE, build_conical, curvature_certificate
from domcert.core.errors import GeometryError
from domcert.core.schema import DesingularizationReport, DominationReport, PerturbationPlan
from domcert.desing.perturbation import SIDE_CORNERS, choose_epsilon, perturb, side_reparam
from domcert.solver.equivariant import EquivariantMap
from domcert.surface.lengths import LengthFunction
from domcert.surface.triangulation import GainTriangulation
from domcert.surface.words import Word
from domcert.targets.representation import Representation

logger = logging.getLogger(__name__)


def _decode_side(bary: Barycentric) -> tuple:
    """(side, fraction from its first corner) for a point on a face side."""
    for side, (i, k) in enumerate(SIDE_CORNERS):
        if bary[3 - i - k] == 0.0:
            return side, bary[k]
    raise GeometryError(f"barycentric coordinates {bary} do not lie on a side")


def composite_domination_check(
    t: GainTriangulation,
    lengths: LengthFunction,
    plan: PerturbationPlan,
    rep: Representation,
    f: EquivariantMap,
    n_pairs: int = 10000,
    seed: int = 0,
) -> DominationReport:
    """Sample side pairs of C' and compare with their images in X.

    A point at arclength s on a side of C' goes to arclength
    side_reparam(l, eps, s) on the same side of C, which the comparison
    map sends isometrically onto the geodesic between the corner images.
    """
    epsilon = plan.epsilon
    perturbed = build_conical(t, perturb(lengths, epsilon))
    target = rep.target

    def image(face: int, bary: Barycentric, shift: Word) -> Any:
        side, fraction = _decode_side(bary)
        i, k = SIDE_CORNERS[side]
        corners = face_images(t, rep, f, face, shift)
        base = lengths[t.faces[face].sides[side].edge]
        if base <= 0.0:
            return corners[i]
        position = side_reparam(base, epsilon, fraction * (base + epsilon))
        return target.geodesic_point(corners[i], corners[k], position / base)

    report = sample_pairs(perturbed, n_pairs, seed, True, image, target)
    logger.info(
        f"Composite check at eps={epsilon:.6g}: max ratio {report.max_ratio:.12g}, "
        f"{'pass' if report.passed else 'FAIL'}"
    )
    return report


def desingularize(
    t: GainTriangulation,
    lengths: LengthFunction,
    rep: Representation,
    f: EquivariantMap,
    n_pairs: int = 10000,
    seed: int = 0,
    tol: float = DEFAULT_CERTIFICATE_TOLERANCE,
) -> DesingularizationReport:
    """Classify, choose eps and verify the perturbed surface and composite map."""
    choice = choose_epsilon(t, lengths)
    notes: List[str] = []
    if choice.degeneracy.nonstandard:
        notes.append("nonstandard degeneracy: a face collapsed to a point while other edges survive")
    composite: Optional[DominationReport] = None
    certificate = None
    if choice.verdict == "ConstantMap":
        notes.append("all edges flattened: F is constant and trivially dominated by any Fuchsian representation")
    elif choice.verdict == "RigidityCase":
        notes.append("cone angle 2 pi with a single flat face: rigidity argument applies, no perturbation")
    elif choice.verdict == "Perturbed" and choice.plan is not None and choice.perturbed is not None:
        certificate = curvature_certificate(choice.perturbed, tol)
        composite = composite_domination_check(t, lengths, choice.plan, rep, f, n_pairs, seed)
    return DesingularizationReport(
        degeneracy=choice.degeneracy,
        verdict=choice.verdict,  # type: ignore[arg-type]
        plan=choice.plan,
        composite_domination=composite,
        perturbed_certificate=certificate,
        notes=notes,
    )
