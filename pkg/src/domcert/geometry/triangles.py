"""Comparison triangles in the model planes M_kappa for kappa in {-1, 0, 1}."""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from domcert.core.errors import GeometryError
from domcert.geometry.hyperbolic import HPoint

FLAT_TOLERANCE = 1e-10
VALID_KAPPAS = (-1, 0, 1)

_SIDE_FUNCTIONS: Dict[int, Callable[[float], float]] = {
    -1: math.sinh,
    0: lambda x: x,
    1: math.sin,
}


@dataclass(frozen=True)
class TriangleShape:
    """Side lengths of a geodesic triangle in M_kappa.

    Sides are indexed by the vertices they join: a = |v0 v1|, b = |v0 v2|,
    c = |v1 v2|. The angle "opposite" a side is taken at the vertex the
    side does not touch, so the angles opposite (a, b, c) sit at
    (v2, v1, v0).
    """

    kappa: int
    sides: Tuple[float, float, float]

    def __post_init__(self):
        if self.kappa not in VALID_KAPPAS:
            raise GeometryError(f"unsupported curvature {self.kappa}; expected one of {VALID_KAPPAS}")
        a, b, c = self.sides
        if min(a, b, c) < 0.0 or not all(math.isfinite(s) for s in self.sides):
            raise GeometryError(f"triangle sides must be finite and nonnegative, got {self.sides}")
        longest = max(a, b, c)
        if longest > (a + b + c - longest) + FLAT_TOLERANCE:
            raise GeometryError(f"triangle inequality violated by sides {self.sides}")
        if self.kappa == 1 and a + b + c >= 2.0 * math.pi:
            raise GeometryError("no comparison triangle: spherical perimeter must be < 2 pi")

    @property
    def is_flat(self) -> bool:
        a, b, c = self.sides
        longest = max(a, b, c)
        return longest >= (a + b + c - longest) - FLAT_TOLERANCE

    @property
    def perimeter(self) -> float:
        return float(sum(self.sides))


def comparison_angle(kappa: int, a: float, b: float, c: float) -> float:
    """Angle between the sides of length a and b in the M_kappa triangle with
    opposite side c.

    Uses the half-angle form of the law of cosines, which stays accurate for
    thin and nearly flat triangles.
    """
    if kappa not in _SIDE_FUNCTIONS:
        raise GeometryError(f"unsupported curvature {kappa}")
    if kappa == 1 and a + b + c >= 2.0 * math.pi:
        raise GeometryError("no comparison triangle: spherical perimeter must be < 2 pi")
    if a <= 0.0 or b <= 0.0:
        return 0.0
    f = _SIDE_FUNCTIONS[kappa]
    s = 0.5 * (a + b + c)
    num = f(max(s - a, 0.0)) * f(max(s - b, 0.0))
    den = f(s) * f(max(s - c, 0.0))
    return 2.0 * math.atan2(math.sqrt(max(num, 0.0)), math.sqrt(max(den, 0.0)))


def _flat_angles(shape: TriangleShape) -> Tuple[float, float, float]:
    # pi opposite the first longest side, zero elsewhere
    sides = shape.sides
    longest = max(range(3), key=lambda i: (sides[i], -i))
    return tuple(math.pi if i == longest else 0.0 for i in range(3))  # type: ignore[return-value]


def triangle_angles(shape: TriangleShape) -> Tuple[float, float, float]:
    """Angles opposite the sides (a, b, c)."""
    if shape.is_flat:
        return _flat_angles(shape)
    a, b, c = shape.sides
    k = shape.kappa
    return (
        comparison_angle(k, b, c, a),
        comparison_angle(k, a, c, b),
        comparison_angle(k, a, b, c),
    )


def corner_angles(shape: TriangleShape) -> Tuple[float, float, float]:
    """Angles at the vertices (v0, v1, v2)."""
    opp_a, opp_b, opp_c = triangle_angles(shape)
    return opp_c, opp_b, opp_a


def triangle_area(shape: TriangleShape) -> float:
    if shape.kappa != -1:
        raise GeometryError("area is only provided for hyperbolic triangles")
    if shape.is_flat:
        return 0.0
    return max(math.pi - sum(triangle_angles(shape)), 0.0)


def embed_comparison_triangle(shape: TriangleShape) -> Tuple[HPoint, HPoint, HPoint]:
    """Canonical placement in H^2: v0 at the origin, v1 on the positive x-axis,
    v2 in the upper half."""
    if shape.kappa != -1:
        raise GeometryError("only hyperbolic comparison triangles are embedded")
    a, b, c = shape.sides
    v0 = HPoint.origin()
    v1 = HPoint.from_polar(a, 0.0)
    v2 = HPoint.from_polar(b, comparison_angle(-1, a, b, c))
    return v0, v1, v2
