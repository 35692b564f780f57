"""Hyperboloid model of the hyperbolic plane.

Points live on the upper sheet t^2 - x^2 - y^2 = 1 of Minkowski space with
the form J = diag(1, -1, -1). Isometries are 3x3 matrices M with
M^T J M = J that keep the upper sheet. Tangent vectors at a point p are
expressed as 2-vectors in the frame obtained by boosting p to the origin.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import fractional_matrix_power

from domcert.core.errors import GeometryError

MINKOWSKI = np.diag([1.0, -1.0, -1.0])

NORMALIZATION_TOLERANCE = 1e-12
ISOMETRY_TOLERANCE = 1e-9
# spatial norm below which a direction at a point is considered undefined
DIRECTION_THRESHOLD = 1e-15


def minkowski_dot(u: Sequence[float], v: Sequence[float]) -> float:
    return float(u[0] * v[0] - u[1] * v[1] - u[2] * v[2])


@dataclass(frozen=True)
class HPoint:
    """A point of H^2 in hyperboloid coordinates (t, x, y)."""

    coords: Tuple[float, float, float]

    @classmethod
    def from_array(cls, vector: Sequence[float]) -> "HPoint":
        """Project a Minkowski vector onto the upper sheet by recomputing t."""
        x, y = float(vector[1]), float(vector[2])
        if not (math.isfinite(x) and math.isfinite(y)):
            raise GeometryError("point left the hyperboloid (non-finite coordinates)")
        return cls((math.sqrt(1.0 + x * x + y * y), x, y))

    @classmethod
    def origin(cls) -> "HPoint":
        return cls((1.0, 0.0, 0.0))

    @classmethod
    def from_polar(cls, radius: float, angle: float) -> "HPoint":
        """Point at distance `radius` from the origin in direction `angle`."""
        s = math.sinh(radius)
        return cls.from_array((0.0, s * math.cos(angle), s * math.sin(angle)))

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def sheet_residual(self) -> float:
        t, x, y = self.coords
        return abs(t * t - x * x - y * y - 1.0)


def boost_to_origin(p: HPoint) -> np.ndarray:
    """Return the symmetric boost L with L p = (1, 0, 0)."""
    t, x, y = p.coords
    k = 1.0 / (1.0 + t)
    return np.array(
        [
            [t, -x, -y],
            [-x, 1.0 + x * x * k, x * y * k],
            [-y, x * y * k, 1.0 + y * y * k],
        ]
    )


def boost_from_origin(p: HPoint) -> np.ndarray:
    """Inverse of `boost_to_origin`: sends the origin to p."""
    t, x, y = p.coords
    k = 1.0 / (1.0 + t)
    return np.array(
        [
            [t, x, y],
            [x, 1.0 + x * x * k, x * y * k],
            [y, x * y * k, 1.0 + y * y * k],
        ]
    )


def h_distance(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance.

    Uses 2 asinh(chord / 2) with the Minkowski chord, which equals
    arccosh(<p, q>) but keeps full relative precision for nearby points.
    """
    dt = p.coords[0] - q.coords[0]
    dx = p.coords[1] - q.coords[1]
    dy = p.coords[2] - q.coords[2]
    chord2 = dx * dx + dy * dy - dt * dt
    if chord2 <= 0.0:
        return 0.0
    return 2.0 * math.asinh(0.5 * math.sqrt(chord2))


def h_log(p: HPoint, q: HPoint) -> np.ndarray:
    """Tangent vector at p pointing to q with length d(p, q), in p's frame."""
    w = boost_to_origin(p) @ q.vector
    norm = math.hypot(w[1], w[2])
    if norm < DIRECTION_THRESHOLD:
        return np.zeros(2)
    d = h_distance(p, q)
    return np.array([w[1], w[2]]) * (d / norm)


def h_exp(p: HPoint, v: Sequence[float]) -> HPoint:
    """Follow the geodesic from p with initial tangent v (in p's frame)."""
    r = math.hypot(v[0], v[1])
    if r == 0.0:
        return p
    s = math.sinh(r) / r
    local = np.array([math.cosh(r), v[0] * s, v[1] * s])
    return HPoint.from_array(boost_from_origin(p) @ local)


def h_geodesic_point(p: HPoint, q: HPoint, t: float) -> HPoint:
    """Point at arclength t * d(p, q) from p on the geodesic [p, q]."""
    if t == 0.0:
        return p
    if t == 1.0:
        return q
    return h_exp(p, t * h_log(p, q))


def h_angle(apex: HPoint, u: HPoint, v: HPoint) -> float:
    """Riemannian angle at `apex` between the geodesics toward u and v."""
    boost = boost_to_origin(apex)
    wu = boost @ u.vector
    wv = boost @ v.vector
    a = np.array([wu[1], wu[2]])
    b = np.array([wv[1], wv[2]])
    na = float(np.hypot(*a))
    nb = float(np.hypot(*b))
    if na < DIRECTION_THRESHOLD or nb < DIRECTION_THRESHOLD:
        raise GeometryError("undefined direction: angle apex coincides with an endpoint")
    cross = a[0] * b[1] - a[1] * b[0]
    dot = a[0] * b[0] + a[1] * b[1]
    return math.atan2(abs(cross), dot)


def direction_angle(apex: HPoint, u: HPoint) -> float:
    """Polar angle of the direction toward u in the frame of `apex`."""
    w = boost_to_origin(apex) @ u.vector
    if math.hypot(w[1], w[2]) < DIRECTION_THRESHOLD:
        raise GeometryError("undefined direction: points coincide")
    return math.atan2(w[2], w[1])


def side_of_geodesic(p: HPoint, q: HPoint, z: HPoint) -> float:
    """Signed position of z relative to the oriented geodesic p -> q.

    Positive on the left (counter-clockwise side), negative on the right,
    zero on the line.
    """
    frame = _rotation(-direction_angle(p, q)) @ boost_to_origin(p)
    return float((frame @ z.vector)[2])


def place_apex(p: HPoint, q: HPoint, dist_p: float, dist_q: float, side: int) -> HPoint:
    """Point at distance dist_p from p and dist_q from q.

    `side` is +1 for the left of p -> q and -1 for the right.
    """
    from domcert.geometry.triangles import comparison_angle

    base = h_distance(p, q)
    if dist_p == 0.0:
        return p
    angle = comparison_angle(-1, base, dist_p, dist_q) if base > 0.0 else 0.0
    heading = direction_angle(p, q) if base > 0.0 else 0.0
    return h_exp(p, _polar_vector(dist_p, heading + side * angle))


def _polar_vector(r: float, angle: float) -> np.ndarray:
    return np.array([r * math.cos(angle), r * math.sin(angle)])


def _rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def _boost_x(length: float) -> np.ndarray:
    c, s = math.cosh(length), math.sinh(length)
    return np.array([[c, s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


class HIsometry:
    """Orientation-preserving isometry of H^2 as a 3x3 Lorentz matrix."""

    __slots__ = ("matrix",)

    def __init__(self, matrix: np.ndarray):
        self.matrix = np.asarray(matrix, dtype=float)

    def __repr__(self) -> str:
        return f"HIsometry({self.matrix.tolist()})"

    @classmethod
    def identity(cls) -> "HIsometry":
        return cls(np.eye(3))

    @classmethod
    def translation(cls, length: float, direction: float = 0.0) -> "HIsometry":
        """Translation of the given length along the geodesic through the origin."""
        rot = _rotation(direction)
        return cls(rot @ _boost_x(length) @ rot.T)

    @classmethod
    def rotation(cls, center: HPoint, angle: float) -> "HIsometry":
        """Counter-clockwise rotation by `angle` about `center`."""
        return cls(boost_from_origin(center) @ _rotation(angle) @ boost_to_origin(center))

    @classmethod
    def from_sl2(cls, matrix: Sequence[Sequence[float]]) -> "HIsometry":
        """Adjoint action X -> A X A^T on X = [[t + x, y], [y, t - x]].

        Args:
            matrix: 2x2 real matrix with determinant 1

        Returns:
            HIsometry: the induced Lorentz transformation
        """
        a = np.asarray(matrix, dtype=float)
        if a.shape != (2, 2):
            raise GeometryError(f"expected a 2x2 matrix, got shape {a.shape}")
        det = float(np.linalg.det(a))
        if abs(det - 1.0) > 1e-9:
            raise GeometryError(f"SL(2,R) matrix must have determinant 1, got {det!r}")
        basis = (
            np.eye(2),
            np.diag([1.0, -1.0]),
            np.array([[0.0, 1.0], [1.0, 0.0]]),
        )
        columns = []
        for x_mat in basis:
            image = a @ x_mat @ a.T
            columns.append(
                [
                    0.5 * (image[0, 0] + image[1, 1]),
                    0.5 * (image[0, 0] - image[1, 1]),
                    image[0, 1],
                ]
            )
        return cls(np.array(columns).T)

    def to_sl2(self) -> np.ndarray:
        """Recover a lift A in SL(2,R) of this isometry (sign normalised)."""
        (t0, t1, t2), (x0, x1, x2), (y0, y1, y2) = self.matrix
        outer = np.empty((4, 4))
        diag = [
            0.5 * ((t0 + x0) + (t1 + x1)),
            0.5 * ((t0 + x0) - (t1 + x1)),
            0.5 * ((t0 - x0) + (t1 - x1)),
            0.5 * ((t0 - x0) - (t1 - x1)),
        ]
        outer[0, 0], outer[1, 1], outer[2, 2], outer[3, 3] = diag
        outer[0, 1] = outer[1, 0] = 0.5 * (t2 + x2)
        outer[2, 3] = outer[3, 2] = 0.5 * (t2 - x2)
        outer[0, 2] = outer[2, 0] = 0.5 * (y0 + y1)
        outer[1, 3] = outer[3, 1] = 0.5 * (y0 - y1)
        outer[0, 3] = outer[3, 0] = 0.5 * (y2 + 1.0)
        outer[1, 2] = outer[2, 1] = 0.5 * (y2 - 1.0)
        j = int(np.argmax(diag))
        v = outer[:, j] / math.sqrt(max(diag[j], 1e-300))
        lift = v.reshape(2, 2)
        det = float(np.linalg.det(lift))
        lift = lift / math.sqrt(abs(det))
        # fix the sign so the first nonzero entry is positive
        flat = lift.ravel()
        pivot = flat[np.argmax(np.abs(flat) > 1e-12)]
        return -lift if pivot < 0 else lift

    @classmethod
    def from_segment_map(cls, p: HPoint, q: HPoint, p_image: HPoint, q_image: HPoint) -> "HIsometry":
        """Orientation-preserving isometry with p -> p_image, sending the
        direction toward q to the direction toward q_image."""
        turn = direction_angle(p_image, q_image) - direction_angle(p, q)
        return cls(boost_from_origin(p_image) @ _rotation(turn) @ boost_to_origin(p))

    def apply(self, p: HPoint) -> HPoint:
        return HPoint.from_array(self.matrix @ p.vector)

    def compose(self, other: "HIsometry") -> "HIsometry":
        """self after other."""
        return HIsometry(self.matrix @ other.matrix)

    def inverse(self) -> "HIsometry":
        return HIsometry(MINKOWSKI @ self.matrix.T @ MINKOWSKI)

    def power(self, exponent: float) -> "HIsometry":
        """Real power along the one-parameter subgroup through this isometry."""
        powered = fractional_matrix_power(self.matrix, exponent)
        return HIsometry(np.real_if_close(powered, tol=1e6).real)

    def translation_length(self) -> float:
        """Minimal displacement: arccosh((tr M - 1) / 2), zero unless hyperbolic."""
        half = 0.5 * (float(np.trace(self.matrix)) - 1.0)
        return math.acosh(half) if half > 1.0 else 0.0

    def form_deviation(self) -> float:
        """Entrywise deviation of M^T J M from J."""
        return float(np.max(np.abs(self.matrix.T @ MINKOWSKI @ self.matrix - MINKOWSKI)))

    def is_valid(self, tol: float = ISOMETRY_TOLERANCE) -> bool:
        return self.form_deviation() <= tol and self.matrix[0, 0] > 0.0

    def deviation_from_identity(self) -> float:
        return float(np.max(np.abs(self.matrix - np.eye(3))))
