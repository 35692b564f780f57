from .domination import domination_map_eval, lipschitz_sample_check
from .surface import ConicalSurface, build_conical, curvature_certificate, gauss_bonnet_residual

__all__ = [
    "ConicalSurface",
    "build_conical",
    "curvature_certificate",
    "domination_map_eval",
    "gauss_bonnet_residual",
    "lipschitz_sample_check",
]
