from .equivariant import EquivariantMap, constant_map, random_map, star_images
from .harmonic import (
    SolveOutcome,
    TraceRecord,
    critical_residual,
    energy,
    harmonic_inequality_max,
    solve_harmonic,
    vertex_barycenter_step,
)

__all__ = [
    "EquivariantMap",
    "SolveOutcome",
    "TraceRecord",
    "constant_map",
    "critical_residual",
    "energy",
    "harmonic_inequality_max",
    "random_map",
    "solve_harmonic",
    "star_images",
    "vertex_barycenter_step",
]
