"""Desing command - perturb a degenerate conical surface"""

import sys

from domcert.commands.common import (
    default_report_path,
    emit,
    load_run_config,
    require_converged,
    run_options,
    solve_config,
    with_input_errors,
)
from domcert.core.errors import EpsilonSearchError
from domcert.desing import desingularize
from domcert.surface.lengths import length_function_from_map
from domcert.utils.display import print_desingularization, print_error, print_solve_summary
from domcert.utils.rich_click_config import click


@click.command()
@run_options
@click.help_option("-h", "--help")
@with_input_errors
def desing(config_path, fixture_name, seed, tol, max_iter, samples, out_path, trace_path):
    """Classify flattened faces and edges and choose the perturbation size.

    Non-degenerate surfaces report the verdict NotNeeded.

    Examples:

    \b
        domcert desing --fixture tree_overlapping_axes
    """
    config = load_run_config(config_path, fixture_name, seed, tol, max_iter, samples)
    t, rep, outcome = solve_config(config, trace_path)
    print_solve_summary(outcome.summary(t, rep))
    require_converged(outcome, "desingularize")

    sampling = config.sampling
    lengths = length_function_from_map(t, rep, outcome.map)
    try:
        report = desingularize(t, lengths, rep, outcome.map, sampling.pairs, sampling.seed, sampling.certificate_tol)
    except EpsilonSearchError as e:
        print_error(str(e), details=f"last epsilon tried: {e.trace[-1][0]:.3e}" if e.trace else None)
        sys.exit(1)
    print_desingularization(report)
    emit(report, out_path or default_report_path(config, "desing"))
