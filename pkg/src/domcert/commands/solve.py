"""Solve command - minimize the equivariant energy"""

import sys

from domcert.commands.common import (
    EXIT_DIVERGED,
    default_report_path,
    emit,
    load_run_config,
    run_options,
    solve_config,
    with_input_errors,
)
from domcert.utils.display import print_solve_summary
from domcert.utils.rich_click_config import click


@click.command()
@run_options
@click.help_option("-h", "--help")
@with_input_errors
def solve(config_path, fixture_name, seed, tol, max_iter, samples, out_path, trace_path):
    """Compute the discrete harmonic map of a representation.

    Exits with code 2 when the solver diverges.

    Examples:

    \b
        domcert solve --fixture fuchsian_octagon_g2
        domcert solve --config run.toml --tol 1e-10 --trace trace.jsonl
    """
    config = load_run_config(config_path, fixture_name, seed, tol, max_iter, samples)
    t, rep, outcome = solve_config(config, trace_path)
    summary = outcome.summary(t, rep)
    print_solve_summary(summary)
    emit(summary, out_path or default_report_path(config, "solve"))
    if outcome.status == "Diverged":
        sys.exit(EXIT_DIVERGED)
