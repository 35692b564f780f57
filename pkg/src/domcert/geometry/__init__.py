"""Model-plane geometry kernels."""

from .hyperbolic import (
    HIsometry,
    HPoint,
    h_angle,
    h_distance,
    h_exp,
    h_geodesic_point,
    h_log,
    place_apex,
)
from .spherical import SPoint, s_angle, s_distance, s_exp, s_geodesic_point, s_log, s_turn
from .triangles import (
    TriangleShape,
    comparison_angle,
    corner_angles,
    embed_comparison_triangle,
    triangle_angles,
    triangle_area,
)

__all__ = [
    "HIsometry",
    "HPoint",
    "SPoint",
    "TriangleShape",
    "comparison_angle",
    "corner_angles",
    "embed_comparison_triangle",
    "h_angle",
    "h_distance",
    "h_exp",
    "h_geodesic_point",
    "h_log",
    "place_apex",
    "s_angle",
    "s_distance",
    "s_exp",
    "s_geodesic_point",
    "s_log",
    "s_turn",
    "triangle_angles",
    "triangle_area",
]
