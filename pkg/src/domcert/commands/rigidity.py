"""Rigidity command - link polygons and rigidity verdicts"""

import sys

from domcert.commands.common import (
    EXIT_INVALID_INPUT,
    default_report_path,
    emit,
    load_run_config,
    require_converged,
    run_options,
    solve_config,
    with_input_errors,
)
from domcert.core.errors import GeometryError
from domcert.rigidity import rigidity_report
from domcert.surface.lengths import length_function_from_map
from domcert.utils.display import print_error, print_rigidity, print_solve_summary
from domcert.utils.rich_click_config import click


@click.command()
@run_options
@click.option("--rigidity-tol", type=float, help="Tolerance of the rigidity verdicts.")
@click.help_option("-h", "--help")
@with_input_errors
def rigidity(config_path, fixture_name, seed, tol, max_iter, samples, out_path, trace_path, rigidity_tol):
    """Build the link polygon at every vertex and decide rigidity.

    A map with a flattened edge has no link polygon and exits with code 3.

    Examples:

    \b
        domcert rigidity --fixture fuchsian_octagon_g2
    """
    config = load_run_config(config_path, fixture_name, seed, tol, max_iter, samples)
    t, rep, outcome = solve_config(config, trace_path)
    print_solve_summary(outcome.summary(t, rep))
    require_converged(outcome, "test")

    lengths = length_function_from_map(t, rep, outcome.map)
    try:
        report = rigidity_report(t, rep, outcome.map, lengths, rigidity_tol or config.sampling.rigidity_tol)
    except GeometryError as e:
        print_error("rigidity test undefined", details=str(e))
        sys.exit(EXIT_INVALID_INPUT)
    print_rigidity(report)
    emit(report, out_path or default_report_path(config, "rigidity"))
