"""The hyperbolic plane as a target."""

import logging
import math
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from domcert.core.errors import ConfigError, GeometryError
from domcert.geometry.hyperbolic import (
    HIsometry,
    HPoint,
    h_angle,
    h_distance,
    h_exp,
    h_geodesic_point,
    h_log,
    minkowski_dot,
)
from domcert.targets.base import BaseTarget

logger = logging.getLogger(__name__)

KARCHER_TOLERANCE = 1e-12
KARCHER_MAX_ITER = 200
ARMIJO = 1e-4
NOISE_REGIME = 1e-6
# Minkowski norm below which the eigenline of an isometry counts as lightlike
AXIS_TOLERANCE = 1e-12


class H2Target(BaseTarget):
    kind = "h2"
    display_name = "Hyperbolic plane"

    def distance(self, p: HPoint, q: HPoint) -> float:
        return h_distance(p, q)

    def geodesic_point(self, p: HPoint, q: HPoint, t: float) -> HPoint:
        return h_geodesic_point(p, q, t)

    def angle(self, apex: HPoint, u: HPoint, v: HPoint) -> float:
        return h_angle(apex, u, v)

    def apply(self, iso: HIsometry, p: HPoint) -> HPoint:
        return iso.apply(p)

    def compose(self, g: HIsometry, h: HIsometry) -> HIsometry:
        return g.compose(h)

    def inverse(self, g: HIsometry) -> HIsometry:
        return g.inverse()

    def identity(self) -> HIsometry:
        return HIsometry.identity()

    def identity_deviation(self, g: HIsometry) -> float:
        # the Lorentz matrix is the same for A and -A in SL(2,R)
        return g.deviation_from_identity()

    def translation_length(self, g: HIsometry) -> float:
        return g.translation_length()

    def translation_axis_sample(
        self, g: HIsometry, probe: HPoint, max_steps: int = 10000
    ) -> Tuple[float, HPoint]:
        """Closed-form axis point nearest `probe`, or the fixed point of an elliptic g.

        The eigenline of M for the eigenvalue 1 is spacelike for a hyperbolic
        g (the Minkowski normal of the plane cutting out its axis) and
        timelike for an elliptic one (the fixed point). Parabolic elements
        have a lightlike eigenline and fall back to the midpoint iteration
        p -> mid(p, g p), which only creeps toward their fixed end.
        """
        if g.deviation_from_identity() <= AXIS_TOLERANCE:
            return 0.0, probe
        _, _, vt = np.linalg.svd(g.matrix - np.eye(3))
        normal = vt[-1]
        norm2 = minkowski_dot(normal, normal)
        if norm2 > AXIS_TOLERANCE:
            fixed = normal / math.sqrt(norm2)
            witness = HPoint.from_array(fixed if fixed[0] > 0.0 else -fixed)
        elif norm2 < -AXIS_TOLERANCE:
            n = normal / math.sqrt(-norm2)
            height = minkowski_dot(probe.vector, n)
            witness = HPoint.from_array((probe.vector + height * n) / math.sqrt(1.0 + height * height))
        else:
            return self._midpoint_descent(g, probe, max_steps)
        return h_distance(witness, g.apply(witness)), witness

    def _midpoint_descent(self, g: HIsometry, probe: HPoint, max_steps: int) -> Tuple[float, HPoint]:
        current = probe
        value = h_distance(current, g.apply(current))
        for _ in range(max_steps):
            candidate = h_geodesic_point(current, g.apply(current), 0.5)
            moved = h_distance(candidate, g.apply(candidate))
            if moved > value - 1e-14:
                break
            current, value = candidate, moved
        logger.debug(f"Parabolic axis descent stopped at displacement {value}")
        return value, current

    def base_point(self) -> HPoint:
        return HPoint.origin()

    def probe_points(self) -> List[HPoint]:
        return [HPoint.origin()] + [HPoint.from_polar(1.0, k * math.pi / 2.0) for k in range(4)]

    def random_point(self, rng: np.random.Generator, spread: float = 1.0) -> HPoint:
        return HPoint.from_polar(spread * float(rng.random()), 2.0 * math.pi * float(rng.random()))

    def _mean_log(self, z: HPoint, points: Sequence[HPoint], weights: Sequence[float]) -> np.ndarray:
        total = np.zeros(2)
        for w, y in zip(weights, points):
            total += w * h_log(z, y)
        return total

    def barycenter(
        self,
        points: Sequence[HPoint],
        weights: Optional[Sequence[float]] = None,
        start: Optional[HPoint] = None,
    ) -> HPoint:
        """Karcher mean by Riemannian gradient descent with Armijo backtracking.

        Once the gradient is below NOISE_REGIME the energy is too flat to
        compare reliably in floating point, and a step is accepted when it
        shrinks the gradient instead.
        """
        if not points:
            raise GeometryError("barycenter of an empty set")
        w = list(weights) if weights is not None else [1.0] * len(points)
        total_weight = float(sum(w))
        z = start if start is not None else points[0]
        value = self.energy(z, points, w)
        step = self._mean_log(z, points, w) / total_weight
        for _ in range(KARCHER_MAX_ITER):
            norm = float(np.hypot(*step))
            if norm <= KARCHER_TOLERANCE:
                break
            t = 1.0
            accepted = False
            for _ in range(50):
                candidate = h_exp(z, t * step)
                cand_value = self.energy(candidate, points, w)
                cand_step = self._mean_log(candidate, points, w) / total_weight
                if cand_value <= value - ARMIJO * t * 2.0 * total_weight * norm * norm:
                    accepted = True
                elif norm < NOISE_REGIME and float(np.hypot(*cand_step)) < norm:
                    accepted = True
                if accepted:
                    break
                t *= 0.5
            if not accepted:
                break
            z, value, step = candidate, cand_value, cand_step
        return z

    def criticality_residual(self, point: HPoint, neighbors: Sequence[HPoint]) -> float:
        """Norm of sum_i log_x(y_i), the sharp bound for sup_v sum_i |x y_i| cos angle(v, y_i)."""
        if not neighbors:
            return 0.0
        return float(np.linalg.norm(self._mean_log(point, neighbors, [1.0] * len(neighbors))))

    def directional_sums(
        self, point: HPoint, neighbors: Sequence[HPoint], rng: np.random.Generator, n_directions: int
    ) -> List[float]:
        total = self._mean_log(point, neighbors, [1.0] * len(neighbors))
        thetas = rng.uniform(0.0, 2.0 * math.pi, size=n_directions)
        return [float(total[0] * math.cos(th) + total[1] * math.sin(th)) for th in thetas]

    def point_to_json(self, p: HPoint) -> List[float]:
        return list(p.coords)

    def point_from_json(self, data: Any) -> HPoint:
        if isinstance(data, dict) and {"x", "y"} <= set(data):
            return HPoint.from_array((0.0, float(data["x"]), float(data["y"])))
        if isinstance(data, (list, tuple)) and len(data) in (2, 3):
            x, y = (data[0], data[1]) if len(data) == 2 else (data[1], data[2])
            return HPoint.from_array((0.0, float(x), float(y)))
        raise ConfigError(f"cannot read a hyperbolic point from {data!r}")

    def isometry_from_json(self, data: Any) -> HIsometry:
        if isinstance(data, str):
            raise ConfigError(f"hyperbolic generator images must be 2x2 matrices, got {data!r}")
        try:
            return HIsometry.from_sl2(data)
        except GeometryError as e:
            raise ConfigError(str(e)) from e

    def isometry_to_json(self, g: HIsometry) -> List[List[float]]:
        return g.to_sl2().tolist()
