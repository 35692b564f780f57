from .base import BaseTarget
from .hyperbolic import H2Target
from .registry import TargetRegistry
from .representation import Representation, deform_representation
from .tree import TreePoint, TreeSpace

__all__ = [
    "BaseTarget",
    "H2Target",
    "Representation",
    "TargetRegistry",
    "TreePoint",
    "TreeSpace",
    "deform_representation",
]
