"""
End-to-end run: solve, build the conical surface, certify, then desingularize
or test rigidity, and assemble the report.
"""

import logging
import platform
import time
from contextlib import contextmanager
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np
import scipy

from domcert.conical import build_conical, curvature_certificate, lipschitz_sample_check
from domcert.conical.surface import ConicalSurface
from domcert.core.errors import EpsilonSearchError, GeometryError, TriangulationError
from domcert.core.schema import (
    CurvatureCertificate,
    DesingularizationReport,
    DominationReport,
    PipelineConfig,
    PipelineReport,
    RigidityReport,
    Versions,
)
from domcert.desing import classify_degeneracy, desingularize
from domcert.rigidity import rigidity_report
from domcert.solver import solve_harmonic
from domcert.solver.equivariant import EquivariantMap
from domcert.solver.harmonic import TraceRecord
from domcert.surface.lengths import LengthFunction, length_function_from_map
from domcert.surface.triangulation import GainTriangulation, build_triangulation, validate
from domcert.targets import Representation, TargetRegistry
from domcert.version import __version__

logger = logging.getLogger(__name__)

CERTIFIED = "conical domination certified; smooth uniformization out of scope"
TRIVIAL = "trivially dominated by any Fuchsian representation"
DIVERGED_NOTE = "harmonic map diverged; boundary fixed-point analysis is out of scope"


class _Stopwatch:
    """Per-stage wall-clock seconds, collected only when enabled."""

    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.stages: Dict[str, float] = {}

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.stages[name] = self.stages.get(name, 0.0) + time.perf_counter() - start

    def result(self) -> Optional[Dict[str, float]]:
        return dict(self.stages) if self.enabled else None


def versions() -> Versions:
    return Versions(
        domcert=__version__, numpy=np.__version__, scipy=scipy.__version__, python=platform.python_version()
    )


def prepare(config: PipelineConfig) -> Tuple[GainTriangulation, Representation]:
    """Target, representation and triangulation of a config, checked before any solve.

    Raises:
        RepresentationError: if the relator check fails
        TriangulationError: if the triangulation has violations
    """
    target = TargetRegistry.create(config.target)
    rep = Representation.from_spec(target, config.genus, config.representation)
    rep.require_relator()
    explicit = None if config.triangulation == "riemann" else config.triangulation
    t = build_triangulation(config.genus, explicit)  # type: ignore[arg-type]
    diagnostics = validate(t)
    if not diagnostics.ok:
        codes = ", ".join(v.code for v in diagnostics.violations)
        logger.error(f"Triangulation failed validation: {codes}")
        raise TriangulationError(f"invalid triangulation: {codes}")
    return t, rep


def conical_stage(
    t: GainTriangulation, rep: Representation, f: EquivariantMap, tol: float
) -> Tuple[LengthFunction, ConicalSurface, CurvatureCertificate]:
    """Length function of F, the glued conical surface and its curvature certificate."""
    lengths = length_function_from_map(t, rep, f)
    surface = build_conical(t, lengths)
    return lengths, surface, curvature_certificate(surface, tol)


def _certified(curvature: Optional[CurvatureCertificate], domination: Optional[DominationReport]) -> bool:
    return (
        curvature is not None
        and curvature.status == "CurvatureAtMostMinusOne"
        and domination is not None
        and domination.passed
    )


def _status_for_desing(report: DesingularizationReport) -> str:
    if report.verdict == "ConstantMap":
        return TRIVIAL
    if report.verdict == "RigidityCase":
        return "not certified: cone angle 2 pi with a flat face, rigidity case"
    if _certified(report.perturbed_certificate, report.composite_domination):
        return CERTIFIED
    return "not certified: perturbed surface or composite map failed its check"


def run_pipeline(
    config: PipelineConfig,
    timing: bool = False,
    trace_sink: Optional[Callable[[TraceRecord], None]] = None,
) -> PipelineReport:
    """Run every stage the solve outcome allows and collect the results.

    Args:
        config: validated pipeline configuration
        timing: record per-stage wall-clock seconds in the report
        trace_sink: receives the solver's convergence trace records

    Returns:
        PipelineReport: deterministic for a fixed config unless timing is on

    Raises:
        RepresentationError: if the relator check fails
        TriangulationError: if the triangulation is invalid
    """
    clock = _Stopwatch(timing)
    with clock.stage("prepare"):
        t, rep = prepare(config)
    logger.info(f"Running {config.name or 'pipeline'}: genus {config.genus}, target {rep.target.describe()}")

    with clock.stage("solve"):
        outcome = solve_harmonic(t, rep, params=config.solver, trace_sink=trace_sink)
    summary = outcome.summary(t, rep)
    notes: List[str] = []
    sampling = config.sampling

    lengths_dict = None
    flatten = None
    conical_summary = None
    curvature = None
    desing = None
    domination = None
    rigidity: Optional[RigidityReport] = None

    if outcome.status == "Diverged":
        notes.append(DIVERGED_NOTE)
        status = f"not certified: solver diverged ({outcome.diverged_reason})"
    elif outcome.status == "FixedPointConstant":
        notes.append(f"constant equivariant map: {TRIVIAL}")
        status = TRIVIAL
    else:
        f = outcome.map
        with clock.stage("conical"):
            lengths, surface, curvature = conical_stage(t, rep, f, sampling.certificate_tol)
        flatten = surface.flatten
        lengths_dict = lengths.to_dict(t)
        conical_summary = surface.summary()
        degeneracy = classify_degeneracy(t, lengths, surface.cone_angles)

        if degeneracy.classification == "NonDegenerate":
            with clock.stage("domination"):
                domination = lipschitz_sample_check(surface, t, rep, f, sampling.pairs, sampling.seed)
            with clock.stage("rigidity"):
                rigidity = rigidity_report(t, rep, f, lengths, sampling.rigidity_tol, surface)
            if _certified(curvature, domination):
                status = CERTIFIED
            elif curvature.status != "CurvatureAtMostMinusOne":
                status = f"not certified: cone angle below 2 pi at {curvature.failing_vertices}"
            else:
                status = "not certified: sampled Lipschitz check failed"
        else:
            status = "not certified: degenerate surface"
            try:
                with clock.stage("desingularize"):
                    desing = desingularize(
                        t, lengths, rep, f, sampling.pairs, sampling.seed, sampling.certificate_tol
                    )
                notes.extend(desing.notes)
                status = _status_for_desing(desing)
                if desing.verdict == "RigidityCase":
                    with clock.stage("rigidity"):
                        rigidity = rigidity_report(t, rep, f, lengths, sampling.rigidity_tol, surface)
            except EpsilonSearchError as e:
                logger.warning(f"No admissible perturbation: {e}")
                notes.append(f"epsilon search failed after {len(e.trace)} steps")
                status = "not certified: no admissible perturbation size"
            except GeometryError as e:
                logger.warning(f"Rigidity test undefined: {e}")
                notes.append(f"rigidity test undefined: {e}")

    if rigidity is not None:
        notes.append(f"rigidity verdict: {rigidity.overall}")
    return PipelineReport(
        name=config.name,
        genus=config.genus,
        target=rep.target.describe(),
        relator_check=rep.relator_check(),
        triangulation=validate(t),
        solver=summary,
        lengths=lengths_dict,
        flatten=flatten,
        conical=conical_summary,
        curvature=curvature,
        desingularization=desing,
        domination=domination,
        rigidity=rigidity,
        domination_status=status,
        notes=notes,
        timing=clock.result(),
        versions=versions(),
        config=config.model_dump(mode="json"),
    )
