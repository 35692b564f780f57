from .link import face_pair_residuals, link_polygon, local_geodesic_test, rigidity_detect, rigidity_report
from .spherical_polygon import (
    SphericalPolygon,
    great_circle_deviation,
    interior_angles,
    is_convex,
    majorize_spherical_polygon,
    spherical_polygon_radius,
    vertex_perturb,
)

__all__ = [
    "SphericalPolygon",
    "face_pair_residuals",
    "great_circle_deviation",
    "interior_angles",
    "is_convex",
    "link_polygon",
    "local_geodesic_test",
    "majorize_spherical_polygon",
    "rigidity_detect",
    "rigidity_report",
    "spherical_polygon_radius",
    "vertex_perturb",
]
