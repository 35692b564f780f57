"""
Exception hierarchy for domcert.

Contract violations raise; diagnostics that are expected outcomes (validation
reports, certificates, verdicts) are returned as models instead.
"""

from typing import List, Optional


class DomcertError(Exception):
    """Base class for all domcert errors."""


class GeometryError(DomcertError):
    """Raised when a geometric construction is undefined for its inputs."""


class LengthFunctionError(DomcertError):
    """Raised when edge lengths violate a face triangle inequality."""


class TriangulationError(DomcertError):
    """Raised when a gain triangulation cannot be built or is inconsistent."""


class RepresentationError(DomcertError):
    """Raised for representations that fail the relator check or mix targets."""


class ConfigError(DomcertError):
    """Raised when a configuration file cannot be read or validated."""


class SolverError(DomcertError):
    """Raised when the energy minimizer breaks one of its own invariants."""


class MajorizationError(DomcertError):
    """Raised when a spherical polygon cannot be majorized."""


class EpsilonSearchError(DomcertError):
    """Raised when no admissible perturbation size is found.

    Args:
        message: Human readable description
        trace: (epsilon, minimum cone angle) pairs visited by the search
    """

    def __init__(self, message: str, trace: Optional[List[tuple]] = None):
        super().__init__(message)
        self.trace = trace or []
