from .composite import composite_domination_check, desingularize
from .perturbation import (
    EpsilonChoice,
    choose_epsilon,
    classify_degeneracy,
    perturb,
    side_reparam,
    triangle_domination_check,
)

__all__ = [
    "EpsilonChoice",
    "choose_epsilon",
    "classify_degeneracy",
    "composite_domination_check",
    "desingularize",
    "perturb",
    "side_reparam",
    "triangle_domination_check",
]
