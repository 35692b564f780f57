"""
Base target module that defines the interface for all CAT(-1) targets.
"""

import abc
import logging
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


class BaseTarget(abc.ABC):
    """
    Abstract base class that defines the interface for all target spaces.

    A target is a complete CAT(-1) space X together with a group of
    isometries acting on it. Points and isometries are opaque values owned
    by the target; everything else in the package handles them only
    through these methods.
    """

    kind = ""  # Target identifier used in configs (e.g., "h2")
    display_name = ""  # Human-readable name

    @abc.abstractmethod
    def distance(self, p: Any, q: Any) -> float:
        """Distance between two points of the target

        Args:
            p: first point
            q: second point

        Returns:
            float: the CAT(-1) distance d(p, q)
        """
        pass

    @abc.abstractmethod
    def geodesic_point(self, p: Any, q: Any, t: float) -> Any:
        """Point at parameter t in [0, 1] on the unique geodesic [p, q]"""
        pass

    @abc.abstractmethod
    def angle(self, apex: Any, u: Any, v: Any) -> float:
        """Alexandrov angle at `apex` between the geodesics to u and v

        Raises:
            GeometryError: if u or v coincides with the apex
        """
        pass

    @abc.abstractmethod
    def apply(self, iso: Any, p: Any) -> Any:
        """Image of p under the isometry"""
        pass

    @abc.abstractmethod
    def compose(self, g: Any, h: Any) -> Any:
        """The isometry g after h"""
        pass

    @abc.abstractmethod
    def inverse(self, g: Any) -> Any:
        pass

    @abc.abstractmethod
    def identity(self) -> Any:
        pass

    @abc.abstractmethod
    def identity_deviation(self, g: Any) -> float:
        """How far g is from the identity (0 for the identity itself)"""
        pass

    @abc.abstractmethod
    def translation_length(self, g: Any) -> float:
        """Closed-form minimal displacement inf_x d(x, g x)"""
        pass

    @abc.abstractmethod
    def translation_axis_sample(self, g: Any, probe: Any, max_steps: int = 10000) -> Tuple[float, Any]:
        """Minimal displacement of g found by descent from `probe`, with the point realising it"""
        pass

    @abc.abstractmethod
    def base_point(self) -> Any:
        pass

    @abc.abstractmethod
    def probe_points(self) -> List[Any]:
        """Fixed probe set used by relator checks"""
        pass

    @abc.abstractmethod
    def random_point(self, rng: np.random.Generator, spread: float = 1.0) -> Any:
        pass

    @abc.abstractmethod
    def barycenter(self, points: Sequence[Any], weights: Optional[Sequence[float]] = None, start: Any = None) -> Any:
        """Minimiser of sum_i w_i d(z, y_i)^2

        Args:
            points: the y_i, with multiplicity
            weights: positive weights, all 1 when omitted
            start: point the search starts from

        Returns:
            The minimiser, reached monotonically from `start`
        """
        pass

    @abc.abstractmethod
    def criticality_residual(self, point: Any, neighbors: Sequence[Any]) -> float:
        """Worst violation of sum_i |x y_i| cos angle(v, y_i) <= 0 over directions v"""
        pass

    @abc.abstractmethod
    def directional_sums(
        self, point: Any, neighbors: Sequence[Any], rng: np.random.Generator, n_directions: int
    ) -> List[float]:
        """sum_i |x y_i| cos angle(v, y_i) for a set of directions v at `point`"""
        pass

    @abc.abstractmethod
    def point_to_json(self, p: Any) -> Any:
        pass

    @abc.abstractmethod
    def point_from_json(self, data: Any) -> Any:
        pass

    @abc.abstractmethod
    def isometry_from_json(self, data: Any) -> Any:
        pass

    @abc.abstractmethod
    def isometry_to_json(self, g: Any) -> Any:
        pass

    def describe(self) -> str:
        return self.display_name or self.kind

    def displacement(self, g: Any, p: Any) -> float:
        return self.distance(p, self.apply(g, p))

    def energy(self, point: Any, neighbors: Sequence[Any], weights: Optional[Sequence[float]] = None) -> float:
        w = weights if weights is not None else [1.0] * len(neighbors)
        return float(sum(wi * self.distance(point, y) ** 2 for wi, y in zip(w, neighbors)))
