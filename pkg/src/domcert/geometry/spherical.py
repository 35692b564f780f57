"""Unit sphere S^2 as a subset of R^3."""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from domcert.core.errors import GeometryError

ANTIPODAL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class SPoint:
    coords: Tuple[float, float, float]

    @classmethod
    def from_array(cls, vector: Sequence[float]) -> "SPoint":
        v = np.asarray(vector, dtype=float)
        norm = float(np.linalg.norm(v))
        if norm == 0.0 or not math.isfinite(norm):
            raise GeometryError("cannot normalise a zero or non-finite vector onto the sphere")
        v = v / norm
        return cls((float(v[0]), float(v[1]), float(v[2])))

    @classmethod
    def from_spherical(cls, polar: float, azimuth: float) -> "SPoint":
        """Point with colatitude `polar` and longitude `azimuth`."""
        s = math.sin(polar)
        return cls.from_array((s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar)))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


NORTH = SPoint((0.0, 0.0, 1.0))


def s_distance(p: SPoint, q: SPoint) -> float:
    a, b = p.vector, q.vector
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), float(a @ b))


def _tangent_toward(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    t = q - (p @ q) * p
    return t


def s_log(p: SPoint, q: SPoint) -> np.ndarray:
    """Tangent vector at p (as a vector of R^3) toward q, of length d(p, q)."""
    a, b = p.vector, q.vector
    t = _tangent_toward(a, b)
    norm = float(np.linalg.norm(t))
    d = s_distance(p, q)
    if norm < 1e-15:
        if d > math.pi - ANTIPODAL_TOLERANCE:
            raise GeometryError("non-unique geodesic between antipodal points")
        return np.zeros(3)
    return t * (d / norm)


def s_exp(p: SPoint, v: Sequence[float]) -> SPoint:
    a = p.vector
    t = np.asarray(v, dtype=float)
    t = t - (a @ t) * a
    r = float(np.linalg.norm(t))
    if r == 0.0:
        return p
    return SPoint.from_array(math.cos(r) * a + math.sin(r) * (t / r))


def s_geodesic_point(p: SPoint, q: SPoint, t: float) -> SPoint:
    """Slerp between p and q."""
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    d = s_distance(p, q)
    if d > math.pi - ANTIPODAL_TOLERANCE:
        raise GeometryError("non-unique geodesic between antipodal points")
    if d == 0.0:
        return p
    a, b = p.vector, q.vector
    s = math.sin(d)
    return SPoint.from_array((math.sin((1.0 - t) * d) * a + math.sin(t * d) * b) / s)


def s_angle(apex: SPoint, u: SPoint, v: SPoint) -> float:
    a = apex.vector
    tu = _tangent_toward(a, u.vector)
    tv = _tangent_toward(a, v.vector)
    nu, nv = float(np.linalg.norm(tu)), float(np.linalg.norm(tv))
    if nu < 1e-15 or nv < 1e-15:
        raise GeometryError("undefined direction: angle apex coincides with (or is antipodal to) an endpoint")
    return math.atan2(float(np.linalg.norm(np.cross(tu, tv))), float(tu @ tv))


def s_turn(p: SPoint, q: SPoint, r: SPoint) -> float:
    """det[p, q, r]: positive when p -> q -> r turns counter-clockwise."""
    return float(np.linalg.det(np.array([p.coords, q.coords, r.coords])))


def s_rotate_tangent(p: SPoint, t: np.ndarray, angle: float) -> np.ndarray:
    """Rotate tangent vector t at p counter-clockwise (about the outward normal p)."""
    a = p.vector
    return math.cos(angle) * t + math.sin(angle) * np.cross(a, t)
