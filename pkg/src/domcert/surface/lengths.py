"""Length functions on quotient edges and their flattening data."""

import logging
from typing import TYPE_CHECKING, Dict, List, Sequence, Tuple

from domcert.core.errors import LengthFunctionError
from domcert.core.schema import FlattenReport
from domcert.surface.triangulation import Face, GainTriangulation

if TYPE_CHECKING:
    from domcert.solver.equivariant import EquivariantMap
    from domcert.targets.representation import Representation

logger = logging.getLogger(__name__)

FLATNESS_TOLERANCE = 1e-10


class LengthFunction:
    """Nonnegative lengths indexed by quotient edge."""

    def __init__(self, lengths: Sequence[float]):
        values = [float(x) for x in lengths]
        if any(x < 0.0 for x in values):
            raise LengthFunctionError("not a length function: negative edge length")
        self.lengths = values

    def __getitem__(self, edge: int) -> float:
        return self.lengths[edge]

    def __len__(self) -> int:
        return len(self.lengths)

    def __repr__(self) -> str:
        return f"LengthFunction({self.lengths})"

    def face_sides(self, face: Face) -> Tuple[float, float, float]:
        """(a, b, c) = (|v0 v1|, |v0 v2|, |v1 v2|) for the corners of the face."""
        e0, e1, e2 = (h.edge for h in face.sides)
        return self.lengths[e0], self.lengths[e2], self.lengths[e1]

    def shifted(self, epsilon: float) -> "LengthFunction":
        return LengthFunction([x + epsilon for x in self.lengths])

    def to_dict(self, t: GainTriangulation) -> Dict[str, float]:
        return {t.edges[i].name: x for i, x in enumerate(self.lengths)}


def length_function_from_map(t: GainTriangulation, rep: "Representation", f: "EquivariantMap") -> LengthFunction:
    """l_F(e) = d(F(tail), rho(gain) F(head))."""
    target = rep.target
    return LengthFunction([target.distance(f[e.tail], f.lift(rep, e.head, e.gain)) for e in t.edges])


def face_slack(sides: Tuple[float, float, float]) -> float:
    """Sum of the two shorter sides minus the longest."""
    longest = max(sides)
    return sum(sides) - 2.0 * longest


def flatten_report(t: GainTriangulation, lengths: LengthFunction) -> FlattenReport:
    """Flat faces (triangle equality) and flat edges (zero length).

    Raises:
        LengthFunctionError: if some face violates the triangle inequality beyond tolerance
    """
    flat_faces: List[int] = []
    for face in t.faces:
        slack = face_slack(lengths.face_sides(face))
        if slack < -FLATNESS_TOLERANCE:
            logger.error(f"Face {face.index} violates the triangle inequality by {-slack}")
            raise LengthFunctionError(f"not a length function: face {face.index} violates the triangle inequality")
        if slack <= FLATNESS_TOLERANCE:
            flat_faces.append(face.index)
    flat_edges = [e.index for e in t.edges if lengths[e.index] <= FLATNESS_TOLERANCE]
    return FlattenReport(flat_faces=flat_faces, flat_edges=flat_edges)
