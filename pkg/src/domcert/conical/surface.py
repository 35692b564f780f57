"""The triangulated conical hyperbolic surface glued from a metric triangulation."""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from domcert.core.errors import GeometryError, LengthFunctionError
from domcert.core.schema import ConicalSummary, CurvatureCertificate, FlattenReport
from domcert.geometry.hyperbolic import HPoint
from domcert.geometry.triangles import (
    TriangleShape,
    corner_angles,
    embed_comparison_triangle,
    triangle_area,
)
from domcert.surface.lengths import LengthFunction, flatten_report
from domcert.surface.triangulation import Corner, GainTriangulation

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
DEFAULT_CERTIFICATE_TOLERANCE = 1e-9


@dataclass
class ConicalSurface:
    triangulation: GainTriangulation
    lengths: LengthFunction
    shapes: List[TriangleShape]
    corners: List[Tuple[float, float, float]]
    areas: List[float]
    cone_angles: Dict[int, float]
    flatten: FlattenReport

    @property
    def genus(self) -> int:
        return self.triangulation.genus

    @property
    def total_area(self) -> float:
        return float(math.fsum(self.areas))

    @property
    def flat_faces(self) -> List[int]:
        return list(self.flatten.flat_faces)

    def is_flat(self, face: int) -> bool:
        return self.shapes[face].is_flat

    def corner_angle(self, corner: Corner) -> float:
        return self.corners[corner.face][corner.slot]

    def chart(self, face: int) -> Tuple[HPoint, HPoint, HPoint]:
        """Canonical embedding of the face's comparison triangle in H^2."""
        return embed_comparison_triangle(self.shapes[face])

    def margin(self) -> float:
        return min(theta - TWO_PI for theta in self.cone_angles.values())

    def summary(self) -> ConicalSummary:
        names = self.triangulation.vertex_names
        residual: Optional[float]
        try:
            residual = gauss_bonnet_residual(self)
        except GeometryError:
            residual = None
        return ConicalSummary(
            shapes=[list(s.sides) for s in self.shapes],
            corner_angles=[list(c) for c in self.corners],
            face_areas=list(self.areas),
            cone_angles={names[v]: theta for v, theta in self.cone_angles.items()},
            total_area=self.total_area,
            gauss_bonnet_residual=residual,
            flat_faces=self.flat_faces,
        )


def build_conical(t: GainTriangulation, lengths: LengthFunction, genus: Optional[int] = None) -> ConicalSurface:
    """Glue one hyperbolic triangle per face and sum the corner angles per vertex.

    Flat faces contribute the (pi, 0, 0) corner pattern.

    Raises:
        LengthFunctionError: if the lengths violate a face triangle inequality
    """
    if genus is not None and genus != t.genus:
        raise LengthFunctionError(f"genus {genus} does not match the triangulation genus {t.genus}")
    if len(lengths) != len(t.edges):
        raise LengthFunctionError(f"{len(lengths)} lengths given for {len(t.edges)} edges")
    report = flatten_report(t, lengths)
    shapes: List[TriangleShape] = []
    corners: List[Tuple[float, float, float]] = []
    areas: List[float] = []
    cone_angles: Dict[int, float] = {v: 0.0 for v in t.vertices}
    for face in t.faces:
        try:
            shape = TriangleShape(-1, lengths.face_sides(face))
        except GeometryError as e:
            raise LengthFunctionError(f"not a length function: face {face.index}: {e}") from e
        angles = corner_angles(shape)
        shapes.append(shape)
        corners.append(angles)
        areas.append(triangle_area(shape))
        for slot, vertex in enumerate(t.face_vertices(face)):
            cone_angles[vertex] += angles[slot]
    surface = ConicalSurface(t, lengths, shapes, corners, areas, cone_angles, report)
    logger.debug(
        f"Built conical surface: area {surface.total_area:.12g}, cone angles "
        f"{[round(theta, 12) for theta in cone_angles.values()]}, {len(report.flat_faces)} flat faces"
    )
    return surface


def gauss_bonnet_residual(c: ConicalSurface) -> float:
    """|area + sum_v (theta_v - 2 pi) - 4 pi (g - 1)|."""
    excess = math.fsum(theta - TWO_PI for theta in c.cone_angles.values())
    return abs(c.total_area + excess - 4.0 * math.pi * (c.genus - 1))


def curvature_certificate(c: ConicalSurface, tol: float = DEFAULT_CERTIFICATE_TOLERANCE) -> CurvatureCertificate:
    """Curvature <= -1 holds exactly when every cone angle is at least 2 pi."""
    names = c.triangulation.vertex_names
    if c.flatten.flat_edges:
        return CurvatureCertificate(
            status="Degenerate",
            margin=None,
            reason=f"{len(c.flatten.flat_edges)} flattened edges",
            tolerance=tol,
        )
    margin = c.margin()
    failing = [names[v] for v, theta in c.cone_angles.items() if theta - TWO_PI < -tol]
    if failing:
        logger.info(f"Curvature certificate fails at {failing} (margin {margin:.3e})")
        return CurvatureCertificate(status="Fails", margin=margin, failing_vertices=failing, tolerance=tol)
    return CurvatureCertificate(status="CurvatureAtMostMinusOne", margin=margin, tolerance=tol)
