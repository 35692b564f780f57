"""Link polygons at the vertices of a harmonic map and the rigidity verdicts."""

import logging
import math
from typing import Dict, List, Optional

from domcert.conical.domination import face_images, unfold_across
from domcert.conical.surface import TWO_PI, ConicalSurface, build_conical
from domcert.core.errors import GeometryError
from domcert.core.schema import LinkPolygonData, RigidityReport, RigidityVerdict
from domcert.geometry.hyperbolic import h_distance
from domcert.geometry.triangles import comparison_angle
from domcert.solver.equivariant import EquivariantMap
from domcert.surface.lengths import FLATNESS_TOLERANCE, LengthFunction
from domcert.surface.triangulation import GainTriangulation
from domcert.surface.words import multiply
from domcert.targets.representation import Representation

logger = logging.getLogger(__name__)

DEFAULT_RIGIDITY_TOLERANCE = 1e-6
NOT_RIGID_FACTOR = 10.0


def link_polygon(t: GainTriangulation, rep: Representation, f: EquivariantMap, vertex: int) -> LinkPolygonData:
    """Directions from F(x) toward its neighbors, in cyclic order around x.

    Neighbor y_i is the head of the outgoing side of the i-th corner of the
    link cycle, so corner i spans (y_i, y_(i+1)). alpha_i is the angle at
    F(x) between F(y_i) and F(y_(i+1)), alpha~_i the comparison angle of
    the image triangle and span_i the angle between F(y_i) and F(y_(i+2)).

    Raises:
        GeometryError: if an edge at the vertex is flattened
    """
    target = rep.target
    name = t.vertex_names[vertex]
    center = f[vertex]
    cycle = t.link_cycle(vertex)
    neighbors = []
    for corner in cycle:
        nxt, _ = t.corner_neighbors(corner)
        neighbors.append(f.lift(rep, nxt.vertex, nxt.element))
    radii = [target.distance(center, y) for y in neighbors]
    if min(radii) <= FLATNESS_TOLERANCE:
        logger.error(f"Flattened edge at vertex {name}: no link polygon")
        raise GeometryError(f"undefined direction: flattened edge at vertex {name}")
    n = len(neighbors)
    angles, comparisons, spans, degenerate = [], [], [], []
    for i in range(n):
        y, z, w = neighbors[i], neighbors[(i + 1) % n], neighbors[(i + 2) % n]
        angles.append(target.angle(center, y, z))
        opposite = target.distance(y, z)
        comparisons.append(comparison_angle(-1, radii[i], radii[(i + 1) % n], opposite))
        spans.append(target.angle(center, y, w))
        longest = max(radii[i], radii[(i + 1) % n], opposite)
        if 2.0 * longest >= radii[i] + radii[(i + 1) % n] + opposite - FLATNESS_TOLERANCE:
            degenerate.append(i)
    return LinkPolygonData(
        vertex=name, angles=angles, comparison_angles=comparisons, spans=spans, degenerate_corners=degenerate
    )


def local_geodesic_test(link: LinkPolygonData) -> List[float]:
    """|alpha_i + alpha_(i+1) - angle(y_i, y_(i+2))| for every i.

    Directions at a point of H^2 form a circle of length 2 pi, so a turn
    s = alpha_i + alpha_(i+1) above pi is measured as 2 pi - s.
    """
    n = len(link.angles)
    residuals = []
    for i in range(n):
        turn = link.angles[i] + link.angles[(i + 1) % n]
        residuals.append(abs(min(turn, TWO_PI - turn) - link.spans[i]))
    return residuals


def rigidity_detect(link: LinkPolygonData, tol: float = DEFAULT_RIGIDITY_TOLERANCE) -> RigidityVerdict:
    """Rigid / NotRigid / Inconclusive from the angle-sum and equality residuals.

    Rigid needs the comparison angles to sum to 2 pi, every alpha_i to equal
    its comparison angle and the link to be a local geodesic, all within
    tol. NotRigid needs the sum to exceed 2 pi by 10 tol. Everything in
    between is Inconclusive.
    """
    total = math.fsum(link.comparison_angles)
    angle_sum = total - TWO_PI
    equality = [tilde - alpha for alpha, tilde in zip(link.angles, link.comparison_angles)]
    geodesic = local_geodesic_test(link)

    def verdict(status: str, reason: Optional[str] = None) -> RigidityVerdict:
        return RigidityVerdict(
            status=status,  # type: ignore[arg-type]
            angle_sum_residual=angle_sum,
            equality_residuals=equality,
            local_geodesic_residuals=geodesic,
            tolerance=tol,
            reason=reason,
        )

    if angle_sum >= NOT_RIGID_FACTOR * tol:
        return verdict("NotRigid", f"comparison angles exceed 2 pi by {angle_sum:.3e}")
    if link.degenerate_corners:
        return verdict("Inconclusive", f"degenerate corners {link.degenerate_corners} in the link")
    if abs(angle_sum) <= tol and max(abs(x) for x in equality) <= tol and max(geodesic) <= tol:
        return verdict("Rigid")
    if angle_sum < -tol:
        return verdict("Inconclusive", f"comparison angles fall short of 2 pi by {-angle_sum:.3e}")
    return verdict("Inconclusive", "angle sum within the undecided band or equalities fail")


def face_pair_residuals(
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    lengths: LengthFunction,
    surface: Optional[ConicalSurface] = None,
) -> List[float]:
    """Per edge, |d_X(opposite corners) - unfolded chart distance| across the edge."""
    c = surface if surface is not None else build_conical(t, lengths)
    target = rep.target
    residuals: List[float] = []
    for edge in t.edges:
        face, slot = t.occurrences(edge.index)[0]
        unfolded = unfold_across(c, face, slot)
        mine_apex = (slot + 2) % 3
        other_face = t.faces[unfolded.other]
        _, other_slot, _ = t.adjacent_shift(face, slot)
        their_apex = (other_slot + 2) % 3
        chart = h_distance(unfolded.corners[mine_apex], unfolded.other_corners[their_apex])
        mine = face_images(t, rep, f, face)[mine_apex]
        element = multiply(unfolded.shift, t.lift_elements(other_face)[their_apex])
        theirs = f.lift(rep, t.face_vertices(other_face)[their_apex], element)
        residuals.append(abs(target.distance(mine, theirs) - chart))
    return residuals


def rigidity_report(
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    lengths: LengthFunction,
    tol: float = DEFAULT_RIGIDITY_TOLERANCE,
    surface: Optional[ConicalSurface] = None,
) -> RigidityReport:
    """Link polygons and verdicts at every vertex, plus the face-pair isometry residuals."""
    links = [link_polygon(t, rep, f, v) for v in t.vertices]
    verdicts: Dict[str, RigidityVerdict] = {link.vertex: rigidity_detect(link, tol) for link in links}
    statuses = {v.status for v in verdicts.values()}
    if "NotRigid" in statuses:
        overall = "NotRigid"
    elif statuses == {"Rigid"}:
        overall = "Rigid"
    else:
        overall = "Inconclusive"
    logger.info(f"Rigidity: {overall} ({', '.join(f'{k}={v.status}' for k, v in verdicts.items())})")
    return RigidityReport(
        verdicts=verdicts,
        links=links,
        face_pair_residuals=face_pair_residuals(t, rep, f, lengths, surface),
        overall=overall,  # type: ignore[arg-type]
    )
