from .lengths import LengthFunction, flatten_report, length_function_from_map
from .triangulation import GainTriangulation, riemann_triangulation, validate

__all__ = [
    "GainTriangulation",
    "LengthFunction",
    "flatten_report",
    "length_function_from_map",
    "riemann_triangulation",
    "validate",
]
