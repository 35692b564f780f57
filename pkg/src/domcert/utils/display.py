"""
Utility functions for displaying solver, certificate and rigidity results
"""

import math
from typing import Dict, Optional

from rich.console import Console
from rich.table import Table

from domcert.core.schema import (
    ConicalSummary,
    CurvatureCertificate,
    DesingularizationReport,
    DominationReport,
    PipelineReport,
    RigidityReport,
    SolveSummary,
)

console = Console(stderr=True)

STATUS_STYLES: Dict[str, str] = {
    "Converged": "green",
    "FixedPointConstant": "yellow",
    "Diverged": "red",
    "CurvatureAtMostMinusOne": "green",
    "Fails": "red",
    "Degenerate": "yellow",
    "Rigid": "green",
    "NotRigid": "cyan",
    "Inconclusive": "yellow",
    "Perturbed": "green",
    "RigidityCase": "cyan",
    "ConstantMap": "yellow",
    "NotNeeded": "dim",
}


def styled(status: str) -> str:
    style = STATUS_STYLES.get(status, "white")
    return f"[{style}]{status}[/]"


def _fmt(value: Optional[float], digits: int = 12) -> str:
    return "-" if value is None else f"{value:.{digits}g}"


def print_solve_summary(summary: SolveSummary) -> None:
    """Display the outcome of a harmonic map solve.

    Args:
        summary: the solver summary from a report or a direct solve
    """
    table = Table(show_header=True, header_style="bold", title="Harmonic map")
    table.add_column("Status")
    table.add_column("Method", style="cyan")
    table.add_column("Energy", justify="right")
    table.add_column("Max residual", justify="right")
    table.add_column("Iterations", justify="right")
    table.add_row(
        styled(summary.status),
        summary.method,
        _fmt(summary.energy),
        _fmt(summary.max_residual, 3),
        str(summary.iterations),
    )
    console.print(table)
    if summary.diverged_reason:
        console.print(
            f"  [red]Stopped:[/] {summary.diverged_reason}, final displacement {summary.final_displacement:.6g}"
        )


def print_certificate(certificate: CurvatureCertificate, conical: Optional[ConicalSummary] = None) -> None:
    table = Table(show_header=True, header_style="bold", title="Conical surface")
    table.add_column("Vertex", style="cyan")
    table.add_column("Cone angle", justify="right")
    table.add_column("Angle - 2 pi", justify="right")
    if conical is not None:
        for name, theta in sorted(conical.cone_angles.items()):
            table.add_row(name, f"{theta:.12g}", f"{theta - 2 * math.pi:.3e}")
        console.print(table)
        residual = _fmt(conical.gauss_bonnet_residual, 3)
        console.print(f"  Area: {conical.total_area:.12g}   Gauss-Bonnet residual: {residual}")
    line = f"[bold]Curvature certificate:[/] {styled(certificate.status)}"
    if certificate.margin is not None:
        line += f" (margin {certificate.margin:.3e})"
    if certificate.reason:
        line += f" [dim]{certificate.reason}[/]"
    console.print(line)


def print_domination(report: DominationReport, title: str = "Lipschitz check") -> None:
    """Display a sampled domination report.

    Args:
        report: the domination report
        title: heading for the table
    """
    table = Table(show_header=True, header_style="bold", title=title)
    table.add_column("Pairs", justify="right")
    table.add_column("Max ratio", justify="right")
    table.add_column("Max excess", justify="right")
    table.add_column("Within face", justify="right")
    table.add_column("Across edges", justify="right")
    table.add_column("Result")
    table.add_row(
        str(report.samples),
        f"{report.max_ratio:.12g}",
        f"{report.max_excess:.3e}",
        f"{report.face_max_ratio:.12g}",
        f"{report.cross_edge_max_ratio:.12g}",
        "[green]pass[/]" if report.passed else "[red]FAIL[/]",
    )
    console.print(table)
    if report.boundary_only:
        console.print("  [dim]Sampled on face boundaries only[/]")


def print_desingularization(report: DesingularizationReport) -> None:
    console.print(
        f"[bold]Degeneracy:[/] {report.degeneracy.classification}   [bold]Verdict:[/] {styled(report.verdict)}"
    )
    if report.plan is not None:
        console.print(f"  epsilon = {report.plan.epsilon:.6g}, perturbed margin {report.plan.margin:.3e}")
    if report.perturbed_certificate is not None:
        print_certificate(report.perturbed_certificate)
    if report.composite_domination is not None:
        print_domination(report.composite_domination, title="Composite Lipschitz check")
    for note in report.notes:
        console.print(f"  [dim]{note}[/]")


def print_rigidity(report: RigidityReport) -> None:
    """Display per-vertex rigidity verdicts.

    Args:
        report: the rigidity report
    """
    table = Table(show_header=True, header_style="bold", title="Rigidity")
    table.add_column("Vertex", style="cyan")
    table.add_column("Verdict")
    table.add_column("Angle sum - 2 pi", justify="right")
    table.add_column("Reason", overflow="fold")
    for name, verdict in sorted(report.verdicts.items()):
        table.add_row(name, styled(verdict.status), f"{verdict.angle_sum_residual:.3e}", verdict.reason or "")
    console.print(table)
    if report.face_pair_residuals:
        console.print(f"  Max face-pair residual: {max(report.face_pair_residuals):.3e}")
    console.print(f"[bold]Overall:[/] {styled(report.overall)}")


def print_pipeline_report(report: PipelineReport) -> None:
    console.print(f"[bold cyan]{report.name or 'pipeline'}[/] genus {report.genus}, target {report.target}")
    print_solve_summary(report.solver)
    if report.curvature is not None:
        print_certificate(report.curvature, report.conical)
    if report.domination is not None:
        print_domination(report.domination)
    if report.desingularization is not None:
        print_desingularization(report.desingularization)
    if report.rigidity is not None:
        print_rigidity(report.rigidity)
    for note in report.notes:
        console.print(f"  [dim]{note}[/]")
    console.print(f"[bold]Status:[/] {report.domination_status}")


def print_error(message, details=None):
    """Print a standardized error message.

    Args:
        message: The main error message
        details: Optional additional error details
    """
    console.print(f"[bold red]Error:[/] {message}")
    if details:
        console.print(f"[red]{details}[/]")
