"""Discrete energy, criticality residuals and the harmonic map solvers.

Two minimisers are provided. Coordinate descent relaxes one quotient
vertex at a time toward the barycenter of its frozen star. The proximal
method runs Moreau-Yosida outer steps x_{k+1} = argmin lambda_k E(y) +
sum_v d(x_k(v), y(v))^2 along an increasing lambda schedule and then
polishes with coordinate descent. Every accepted move is checked against
the full objective, so recorded energies never increase.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from domcert.core.errors import DomcertError, GeometryError, SolverError
from domcert.core.schema import SolverParams, SolveSummary
from domcert.solver.equivariant import EquivariantMap, random_map, star_images
from domcert.surface.triangulation import GainTriangulation
from domcert.targets.representation import Representation

logger = logging.getLogger(__name__)

CONSTANT_ENERGY = 1e-16
MONOTONICITY_SLACK = 1e-15
BACKTRACK_HALVINGS = 30
OVERFLOW_COORDINATE = 1e150


class TraceRecord(BaseModel):
    iteration: int
    phase: str
    energy: float
    max_residual: float
    displacement: float


@dataclass
class SolveOutcome:
    map: EquivariantMap
    energy: float
    residual: Dict[int, float]
    status: str
    method: str
    iterations: int
    diverged_reason: Optional[str] = None
    trace: List[TraceRecord] = field(default_factory=list)

    @property
    def max_residual(self) -> float:
        return max(self.residual.values()) if self.residual else 0.0

    @property
    def final_displacement(self) -> float:
        return self.trace[-1].displacement if self.trace else 0.0

    def summary(self, t: GainTriangulation, rep: Representation) -> SolveSummary:
        finite = math.isfinite(self.energy)
        return SolveSummary(
            status=self.status,  # type: ignore[arg-type]
            method=self.method,
            energy=self.energy if finite else None,
            max_residual=self.max_residual if finite else None,
            iterations=self.iterations,
            diverged_reason=self.diverged_reason,
            final_displacement=self.final_displacement,
            images=self.map.to_json(t, rep) if finite else {},
        )


class _Divergence(DomcertError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def energy(t: GainTriangulation, rep: Representation, f: EquivariantMap) -> float:
    """Sum over quotient edges of l_F(e)^2."""
    target = rep.target
    return float(sum(target.distance(f[e.tail], f.lift(rep, e.head, e.gain)) ** 2 for e in t.edges))


def critical_residual(t: GainTriangulation, rep: Representation, f: EquivariantMap) -> Dict[int, float]:
    """Per vertex, the violation of the harmonic critical inequality."""
    target = rep.target
    return {v: target.criticality_residual(f[v], star_images(t, rep, f, v)) for v in t.vertices}


def harmonic_inequality_max(
    t: GainTriangulation, rep: Representation, f: EquivariantMap, n_directions: int = 100, seed: int = 0
) -> float:
    """Largest sum_i |x y_i| cos angle(v, y_i) over sampled directions v at every vertex."""
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for v in t.vertices:
        sums = rep.target.directional_sums(f[v], star_images(t, rep, f, v), rng, n_directions)
        worst = max(worst, max(sums))
    return worst


def vertex_barycenter_step(
    rep: Representation,
    neighbors: Sequence[Any],
    current: Any,
    weights: Optional[Sequence[float]] = None,
) -> Any:
    """Minimiser of sum_i w_i d(z, y_i)^2, reached monotonically from `current`."""
    return rep.target.barycenter(neighbors, weights=weights, start=current)


def _check_finite(rep: Representation, point: Any) -> None:
    coords = getattr(point, "coords", None)
    if coords is not None and any(not math.isfinite(c) or abs(c) > OVERFLOW_COORDINATE for c in coords):
        raise _Divergence("overflow")


def _relax_vertex(
    rep: Representation,
    f: EquivariantMap,
    v: int,
    proposal: Any,
    objective: Callable[[EquivariantMap], float],
    current_value: float,
    slack: float,
) -> tuple:
    """Backtrack along [f(v), proposal] until the objective does not increase.

    `slack` absorbs floating-point noise in the objective once moves become
    tiny. Returns the new objective value and whether the vertex moved.
    """
    target = rep.target
    start = f[v]
    if target.distance(start, proposal) == 0.0:
        return current_value, False
    t = 1.0
    for _ in range(BACKTRACK_HALVINGS):
        candidate = proposal if t == 1.0 else target.geodesic_point(start, proposal, t)
        _check_finite(rep, candidate)
        f.images[v] = candidate
        value = objective(f)
        if value <= current_value + slack:
            return value, True
        t *= 0.5
    f.images[v] = start
    logger.debug(f"Rejected barycenter move at vertex {v}: no non-increasing step found")
    return current_value, False


def _initial_map(t: GainTriangulation, rep: Representation, params: SolverParams) -> EquivariantMap:
    if isinstance(params.init, dict):
        return EquivariantMap.from_json(t, rep, params.init)
    if params.init == "origin":
        return EquivariantMap({v: rep.target.base_point() for v in t.vertices})
    return random_map(t, rep, params.seed, params.init_spread)


class _Monitor:
    """Trace, divergence and monotonicity bookkeeping shared by both methods."""

    def __init__(
        self,
        t: GainTriangulation,
        rep: Representation,
        init: EquivariantMap,
        params: SolverParams,
        sink: Optional[Callable[[TraceRecord], None]],
    ):
        target = rep.target
        points = [init[v] for v in t.vertices]
        self.rep = rep
        self.center = target.barycenter(points, start=points[0])
        diameter = max((target.distance(p, q) for p in points for q in points), default=0.0)
        self.radius = params.divergence_radius * max(1.0, diameter)
        self.sink = sink
        self.trace: List[TraceRecord] = []
        self.last_energy: Optional[float] = None

    def displacement(self, f: EquivariantMap) -> float:
        return max(self.rep.target.distance(self.center, p) for p in f.images.values())

    def record(self, iteration: int, phase: str, value: float, residual: float, f: EquivariantMap) -> None:
        if self.last_energy is not None and value > self.last_energy + MONOTONICITY_SLACK * max(1.0, self.last_energy):
            logger.error(f"Energy increased from {self.last_energy} to {value} at iteration {iteration}")
            raise SolverError(f"energy increased from {self.last_energy!r} to {value!r} at iteration {iteration}")
        self.last_energy = value
        displacement = self.displacement(f)
        record = TraceRecord(
            iteration=iteration, phase=phase, energy=value, max_residual=residual, displacement=displacement
        )
        self.trace.append(record)
        if self.sink is not None:
            self.sink(record)
        if not math.isfinite(value) or not math.isfinite(displacement):
            raise _Divergence("overflow")
        if displacement > self.radius:
            raise _Divergence("divergence_radius")


def _sweep(
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    value: float,
    objective: Callable[[EquivariantMap], float],
    weights_for: Callable[[int, List[Any]], tuple],
) -> tuple:
    """One cyclic pass over the quotient vertices; returns (objective, any vertex moved)."""
    slack = MONOTONICITY_SLACK * max(1.0, value) / max(1, len(t.vertex_names))
    moved = False
    for v in t.vertices:
        neighbors, weights = weights_for(v, star_images(t, rep, f, v))
        proposal = vertex_barycenter_step(rep, neighbors, f[v], weights)
        value, changed = _relax_vertex(rep, f, v, proposal, objective, value, slack)
        moved = moved or changed
    return value, moved


def _coordinate_descent(
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    params: SolverParams,
    monitor: _Monitor,
    phase: str,
    first_iteration: int,
) -> tuple:
    """Cyclic sweeps until the residual meets the tolerance.

    Returns:
        (energy, residuals, last iteration, stop reason or None when converged)
    """

    def objective(m: EquivariantMap) -> float:
        return energy(t, rep, m)

    def plain(v: int, neighbors: List[Any]) -> tuple:
        return neighbors, None

    value = objective(f)
    iteration = first_iteration
    residual = critical_residual(t, rep, f)
    if max(residual.values()) <= params.tol:
        return value, residual, iteration, None
    for _ in range(params.max_iter):
        iteration += 1
        value, moved = _sweep(t, rep, f, value, objective, plain)
        residual = critical_residual(t, rep, f)
        worst = max(residual.values())
        monitor.record(iteration, phase, value, worst, f)
        if worst <= params.tol:
            return value, residual, iteration, None
        if not moved:
            logger.warning(f"Coordinate descent stalled at residual {worst:.3e}")
            return value, residual, iteration, "stagnation"
    return value, residual, iteration, "iteration_cap"


def _proximal(
    t: GainTriangulation,
    rep: Representation,
    f: EquivariantMap,
    params: SolverParams,
    monitor: _Monitor,
) -> int:
    """Moreau-Yosida outer loop; the inner problems are solved by weighted sweeps."""
    target = rep.target
    iteration = 0
    for lam in params.schedule():
        anchor = f.copy()

        # scaled by 1 / lambda, same minimiser as lambda E + proximity
        def objective(m: EquivariantMap, lam: float = lam, anchor: EquivariantMap = anchor) -> float:
            proximity = sum(target.distance(anchor[v], m[v]) ** 2 for v in t.vertices)
            return energy(t, rep, m) + proximity / lam

        def weighted(v: int, neighbors: List[Any], lam: float = lam, anchor: EquivariantMap = anchor) -> tuple:
            return neighbors + [anchor[v]], [lam] * len(neighbors) + [1.0]

        value = objective(f)
        for _ in range(params.inner_max_iter):
            value, moved = _sweep(t, rep, f, value, objective, weighted)
            if not moved:
                break
        iteration += 1
        residual = critical_residual(t, rep, f)
        monitor.record(iteration, "proximal", energy(t, rep, f), max(residual.values()), f)
        logger.debug(f"Proximal step lambda={lam}: energy {monitor.last_energy}")
    return iteration


def solve_harmonic(
    t: GainTriangulation,
    rep: Representation,
    init: Optional[EquivariantMap] = None,
    params: Optional[SolverParams] = None,
    trace_sink: Optional[Callable[[TraceRecord], None]] = None,
) -> SolveOutcome:
    """Minimise the energy over equivariant maps.

    Args:
        t: the quotient triangulation
        rep: the representation (its target fixes the geometry)
        init: starting map, drawn from params.init when omitted
        params: solver parameters
        trace_sink: called with every convergence trace record

    Returns:
        SolveOutcome with status Converged, FixedPointConstant or Diverged
    """
    params = params or SolverParams()
    f = init.copy() if init is not None else _initial_map(t, rep, params)
    monitor = _Monitor(t, rep, f, params, trace_sink)
    method = params.method
    logger.debug(f"Solving with {method} on {t!r} into {rep.target.describe()}")

    status = "Diverged"
    reason: Optional[str] = None
    iterations = 0
    try:
        if method == "proximal":
            iterations = _proximal(t, rep, f, params, monitor)
            phase = "polish"
        else:
            phase = "sweep"
        value, residual, iterations, reason = _coordinate_descent(t, rep, f, params, monitor, phase, iterations)
        if reason is None:
            status = "FixedPointConstant" if value < CONSTANT_ENERGY else "Converged"
    except (_Divergence, GeometryError) as e:
        reason = e.reason if isinstance(e, _Divergence) else "overflow"
        iterations = monitor.trace[-1].iteration if monitor.trace else iterations
        try:
            value = energy(t, rep, f)
            residual = critical_residual(t, rep, f)
        except (GeometryError, OverflowError, ValueError):
            value, residual = math.inf, {v: math.inf for v in t.vertices}

    if status == "Diverged":
        logger.info(f"Solver stopped without convergence ({reason}) after {iterations} iterations")
    else:
        logger.info(f"Solver finished with {status}: energy {value:.12g} after {iterations} iterations")
    return SolveOutcome(
        map=f,
        energy=value,
        residual=residual,
        status=status,
        method=method,
        iterations=iterations,
        diverged_reason=reason,
        trace=monitor.trace,
    )
