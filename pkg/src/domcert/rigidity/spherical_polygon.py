"""Closed geodesic polygons on the unit sphere.

Polygons are cyclic lists of vertices; consecutive vertices are never
antipodal. Interior angles follow the counter-clockwise convention: the
interior lies to the left of the direction of travel.
"""

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from domcert.core.errors import GeometryError, MajorizationError
from domcert.geometry.spherical import (
    ANTIPODAL_TOLERANCE,
    NORTH,
    SPoint,
    s_angle,
    s_distance,
    s_exp,
    s_geodesic_point,
    s_log,
    s_rotate_tangent,
)
from domcert.geometry.triangles import comparison_angle

logger = logging.getLogger(__name__)

CONVEXITY_TOLERANCE = 1e-9
STRAIGHT_ANGLE_TOLERANCE = 1e-6
MERGE_TOLERANCE = 1e-12
RADIUS_REFINEMENTS = 4
SEGMENT_GRID = 64


@dataclass(frozen=True)
class SphericalPolygon:
    vertices: Tuple[SPoint, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise GeometryError(f"a polygon needs at least 3 vertices, got {len(self.vertices)}")
        n = len(self.vertices)
        for i in range(n):
            if s_distance(self.vertices[i], self.vertices[(i + 1) % n]) > math.pi - ANTIPODAL_TOLERANCE:
                raise GeometryError(f"polygon sides {i} -> {i + 1} join antipodal vertices")

    @classmethod
    def from_arrays(cls, points: Sequence[Sequence[float]]) -> "SphericalPolygon":
        return cls(tuple(SPoint.from_array(p) for p in points))

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([v.coords for v in self.vertices])

    def side_lengths(self) -> List[float]:
        n = len(self.vertices)
        return [s_distance(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @property
    def perimeter(self) -> float:
        return float(math.fsum(self.side_lengths()))


def interior_angles(p: SphericalPolygon) -> List[float]:
    """Counter-clockwise interior angle at each vertex, in [0, 2 pi).

    A vertex that coincides with a neighbor counts as straight.
    """
    n = len(p)
    angles = []
    for i, v in enumerate(p.vertices):
        toward_next = s_log(v, p.vertices[(i + 1) % n])
        toward_prev = s_log(v, p.vertices[(i - 1) % n])
        if not np.any(toward_next) or not np.any(toward_prev):
            angles.append(math.pi)
            continue
        cross = float(v.vector @ np.cross(toward_next, toward_prev))
        dot = float(toward_next @ toward_prev)
        angles.append(math.atan2(cross, dot) % (2.0 * math.pi))
    return angles


def is_convex(p: SphericalPolygon, tol: float = CONVEXITY_TOLERANCE) -> bool:
    return all(angle <= math.pi + tol for angle in interior_angles(p))


# --- radius ---------------------------------------------------------------


def _arc_max_distance(center: np.ndarray, starts: np.ndarray, ends: np.ndarray) -> float:
    """Largest distance from `center` to any point of the arcs [starts[k], ends[k]]."""
    dots = np.clip(np.concatenate([starts @ center, ends @ center]), -1.0, 1.0)
    worst = float(np.max(np.arccos(dots)))
    normals = np.cross(starts, ends)
    norms = np.linalg.norm(normals, axis=1)
    usable = norms > 1e-15
    if not np.any(usable):
        return worst
    unit = normals[usable] / norms[usable, None]
    a, b = starts[usable], ends[usable]
    planar = center[None, :] - (unit @ center)[:, None] * unit
    lengths = np.linalg.norm(planar, axis=1)
    keep = lengths > 1e-15
    if not np.any(keep):
        return worst
    far = -planar[keep] / lengths[keep, None]
    a, b, arc_norms = a[keep], b[keep], norms[usable][keep]
    # the antipode of the nearest great-circle point is on the minor arc exactly when it splits the arc
    arc = np.arctan2(arc_norms, np.sum(a * b, axis=1))
    to_far = np.arctan2(np.linalg.norm(np.cross(a, far), axis=1), np.sum(a * far, axis=1))
    from_far = np.arctan2(np.linalg.norm(np.cross(far, b), axis=1), np.sum(far * b, axis=1))
    inside = np.abs(to_far + from_far - arc) < 1e-12
    if np.any(inside):
        worst = max(worst, float(np.max(np.arccos(np.clip(far[inside] @ center, -1.0, 1.0)))))
    return worst


def _tangent_basis(point: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(point[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(point, helper)
    e1 /= np.linalg.norm(e1)
    return e1, np.cross(point, e1)


def _half_perimeter_midpoint(p: SphericalPolygon) -> Optional[np.ndarray]:
    """Midpoint of the chord joining vertex 0 to the point half a perimeter along the boundary."""
    sides = p.side_lengths()
    half = 0.5 * sum(sides)
    travelled = 0.0
    n = len(p)
    for i, length in enumerate(sides):
        if travelled + length >= half and length > 0.0:
            opposite = s_geodesic_point(p.vertices[i], p.vertices[(i + 1) % n], (half - travelled) / length)
            if s_distance(p.vertices[0], opposite) > math.pi - ANTIPODAL_TOLERANCE:
                return None
            return s_geodesic_point(p.vertices[0], opposite, 0.5).vector
        travelled += length
    return None


def _radius_seeds(p: SphericalPolygon) -> List[np.ndarray]:
    points = p.matrix
    seeds: List[np.ndarray] = []
    centroid = points.sum(axis=0)
    if np.linalg.norm(centroid) > 1e-12:
        seeds.append(centroid / np.linalg.norm(centroid))
    midpoint = _half_perimeter_midpoint(p)
    if midpoint is not None:
        seeds.append(midpoint)
    for i, j, k in itertools.combinations(range(len(points)), 3):
        normal = np.cross(points[j] - points[i], points[k] - points[i])
        norm = np.linalg.norm(normal)
        if norm < 1e-12:
            continue
        normal /= norm
        seeds.extend([normal, -normal])
    if not seeds:
        seeds.append(points[0])
    return seeds


def spherical_polygon_radius(p: SphericalPolygon) -> Tuple[float, SPoint]:
    """Smallest radius of a cap containing the polygon, with its center.

    Every candidate center is scored by the exact largest distance to the
    polygon's arcs, so the returned radius is achieved at the returned
    center and bounds the true radius from above. Candidates are the
    centroid, the midpoint of a perimeter-halving chord and the poles of
    every vertex triple; the best few are refined by Nelder-Mead.
    """
    points = p.matrix
    starts, ends = points, np.roll(points, -1, axis=0)

    def score(center: np.ndarray) -> float:
        return _arc_max_distance(center, starts, ends)

    seeds = sorted(_radius_seeds(p), key=score)[:RADIUS_REFINEMENTS]
    best_value, best_center = score(seeds[0]), seeds[0]
    for seed in seeds:
        e1, e2 = _tangent_basis(seed)
        base = SPoint.from_array(seed)

        def local(x: np.ndarray, base: SPoint = base, e1: np.ndarray = e1, e2: np.ndarray = e2) -> float:
            return score(s_exp(base, x[0] * e1 + x[1] * e2).vector)

        result = minimize(
            local, np.zeros(2), method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-13, "maxiter": 400}
        )
        center = s_exp(base, result.x[0] * e1 + result.x[1] * e2).vector
        value = score(center)
        if value < best_value:
            best_value, best_center = value, center
    return best_value, SPoint.from_array(best_center)


# --- vertex cut -------------------------------------------------------------


def vertex_perturb(p: SphericalPolygon, index: int, epsilon: float) -> SphericalPolygon:
    """Cut the corner at `index`: replace it by the midpoint of the points at
    distance eps from it on both adjacent sides.

    Raises:
        GeometryError: if eps is not below both adjacent side lengths or the
            corner is straight
    """
    n = len(p)
    prev, here, nxt = p.vertices[(index - 1) % n], p.vertices[index % n], p.vertices[(index + 1) % n]
    before, after = s_distance(prev, here), s_distance(here, nxt)
    if not 0.0 < epsilon < min(before, after):
        raise GeometryError(f"eps={epsilon} must be positive and below the adjacent sides ({before}, {after})")
    if s_angle(here, prev, nxt) >= math.pi - STRAIGHT_ANGLE_TOLERANCE:
        raise GeometryError(f"no angle to cut at vertex {index}: the corner is straight")
    q_prev = s_geodesic_point(here, prev, epsilon / before)
    q_next = s_geodesic_point(here, nxt, epsilon / after)
    vertices = list(p.vertices)
    vertices[index % n] = s_geodesic_point(q_prev, q_next, 0.5)
    return SphericalPolygon(tuple(vertices))


# --- majorization -----------------------------------------------------------


class SphereOracle:
    """Distances between labelled points of S^2."""

    def __init__(self, positions: Dict[int, SPoint]):
        self.positions = positions

    def distance(self, i: int, j: int) -> float:
        return s_distance(self.positions[i], self.positions[j])


class GluedOracle:
    """Length metric of two convex spherical pieces glued along a common side.

    Both pieces live in one frame of S^2 and share the segment [start, end].
    Points of the same piece are at their spherical distance; points of
    different pieces are joined through the segment.
    """

    def __init__(
        self,
        positions: Dict[int, SPoint],
        first: Sequence[int],
        second: Sequence[int],
        segment: Tuple[int, int],
        overrides: Optional[Dict[frozenset, float]] = None,
    ):
        self.positions = positions
        self.first = set(first)
        self.second = set(second)
        self.start = positions[segment[0]]
        self.end = positions[segment[1]]
        self.overrides = overrides or {}

    def _through_segment(self, x: SPoint, y: SPoint) -> float:
        def length(u: float) -> float:
            z = s_geodesic_point(self.start, self.end, u)
            return s_distance(x, z) + s_distance(z, y)

        grid = np.linspace(0.0, 1.0, SEGMENT_GRID + 1)
        values = [length(float(u)) for u in grid]
        k = int(np.argmin(values))
        lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, SEGMENT_GRID)]
        refined = minimize_scalar(length, bounds=(float(lo), float(hi)), method="bounded", options={"xatol": 1e-12})
        return min(values[k], float(refined.fun))

    def distance(self, i: int, j: int) -> float:
        key = frozenset((i, j))
        if key in self.overrides:
            return self.overrides[key]
        x, y = self.positions[i], self.positions[j]
        if {i, j} <= self.first or {i, j} <= self.second:
            return s_distance(x, y)
        return self._through_segment(x, y)


def _place_triangle(oracle, a: int, b: int, c: int) -> Dict[int, SPoint]:
    """Comparison triangle of (a, b, c) in S^2, counter-clockwise."""
    ab, bc, ac = oracle.distance(a, b), oracle.distance(b, c), oracle.distance(a, c)
    pa = NORTH
    pc = s_exp(pa, (ac, 0.0, 0.0))
    return {a: pa, b: _apex_right_of(pa, np.array([1.0, 0.0, 0.0]), ab, ac, bc), c: pc}


def _apex_right_of(base: SPoint, heading: np.ndarray, to_apex: float, to_other: float, opposite: float) -> SPoint:
    if to_apex <= 0.0:
        return base
    angle = comparison_angle(1, to_apex, to_other, opposite)
    direction = s_rotate_tangent(base, heading, -angle)
    return s_exp(base, to_apex * direction)


def _majorize(labels: List[int], oracle) -> Dict[int, SPoint]:
    if len(labels) == 3:
        return _place_triangle(oracle, *labels)
    p1, p2, p3 = labels[0], labels[1], labels[2]
    remainder = [p1] + labels[2:]
    positions = dict(_majorize(remainder, oracle))

    toward = s_log(positions[p1], positions[p3])
    norm = float(np.linalg.norm(toward))
    if norm == 0.0:
        raise MajorizationError(f"diagonal between vertices {p1} and {p3} collapsed")
    positions[p2] = _apex_right_of(
        positions[p1], toward / norm, oracle.distance(p1, p2), oracle.distance(p1, p3), oracle.distance(p2, p3)
    )

    glued = SphericalPolygon(tuple(positions[k] for k in labels))
    angles = interior_angles(glued)
    merge: Optional[int] = None
    if angles[2] > math.pi + MERGE_TOLERANCE:
        merge = 2
    elif angles[0] > math.pi + MERGE_TOLERANCE:
        merge = 0
    if merge is None:
        return positions

    n = len(labels)
    vertex = labels[merge]
    prev, nxt = labels[(merge - 1) % n], labels[(merge + 1) % n]
    before, after = oracle.distance(prev, vertex), oracle.distance(vertex, nxt)
    logger.debug(f"Straightening vertex {vertex}: glued angle {angles[merge]:.6f} exceeds pi")
    overrides = {frozenset((prev, nxt)): before + after}
    for (i, j), value in _adjacent_lengths(labels, oracle).items():
        overrides.setdefault(frozenset((i, j)), value)
    merged = GluedOracle(positions, [p1, p2, p3], remainder, (p1, p3), overrides)
    shorter = [k for k in labels if k != vertex]
    result = dict(_majorize(shorter, merged))
    total = before + after
    result[vertex] = result[prev] if total == 0.0 else s_geodesic_point(result[prev], result[nxt], before / total)
    return result


def _adjacent_lengths(labels: List[int], oracle) -> Dict[Tuple[int, int], float]:
    n = len(labels)
    return {(labels[i], labels[(i + 1) % n]): oracle.distance(labels[i], labels[(i + 1) % n]) for i in range(n)}


def majorize_spherical_polygon(p: SphericalPolygon) -> Tuple[SphericalPolygon, List[bool]]:
    """Convex spherical polygon with the same cyclic side lengths.

    Triangles [p1 p_k p_(k+1)] are split off one by one and replaced by their
    comparison triangles. Whenever gluing a triangle to the majorizer of
    the rest leaves a reflex corner, that corner is straightened and the
    shorter polygon is majorized in the glued length metric.

    Returns:
        (convex polygon, per-vertex flag telling whether the corner kept an angle)

    Raises:
        MajorizationError: if the perimeter is not below 2 pi
    """
    if p.perimeter >= 2.0 * math.pi:
        raise MajorizationError(f"majorization requires perimeter < 2 pi, got {p.perimeter}")
    labels = list(range(len(p)))
    oracle = SphereOracle(dict(enumerate(p.vertices)))
    positions = _majorize(labels, oracle)
    result = SphericalPolygon(tuple(positions[k] for k in labels))
    persistence = [angle < math.pi - CONVEXITY_TOLERANCE for angle in interior_angles(result)]
    return result, persistence


# --- great circles ----------------------------------------------------------


def great_circle_deviation(p: SphericalPolygon) -> float:
    """min over unit normals n of max_i |<v_i, n>|; zero exactly on a great circle."""
    matrix = p.matrix
    _, _, vt = np.linalg.svd(matrix)
    normal = vt[-1]

    def spread(n: np.ndarray) -> float:
        return float(np.max(np.abs(matrix @ (n / np.linalg.norm(n)))))

    best = spread(normal)
    if best == 0.0:
        return 0.0
    e1, e2 = _tangent_basis(normal)
    base = SPoint.from_array(normal)
    result = minimize(
        lambda x: spread(s_exp(base, x[0] * e1 + x[1] * e2).vector),
        np.zeros(2),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 400},
    )
    return min(best, float(result.fun))
