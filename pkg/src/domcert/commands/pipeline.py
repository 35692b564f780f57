"""Pipeline command - run every stage and write the report"""

import sys

from domcert.commands.common import (
    EXIT_DIVERGED,
    default_report_path,
    emit,
    load_run_config,
    run_options,
    trace_writer,
    with_input_errors,
)
from domcert.pipeline import run_pipeline
from domcert.utils.display import print_pipeline_report
from domcert.utils.rich_click_config import click


@click.command()
@run_options
@click.option("--timing", is_flag=True, help="Record wall-clock timing in the report.")
@click.help_option("-h", "--help")
@with_input_errors
def pipeline(config_path, fixture_name, seed, tol, max_iter, samples, out_path, trace_path, timing):
    """Solve, build the conical surface, certify and desingularize or test rigidity.

    The report is byte-identical for identical inputs unless --timing is given.
    Exits with code 2 when the solver diverges and 3 on invalid input.

    Examples:

    \b
        domcert pipeline --fixture fuchsian_octagon_g2 --out octagon.json
        domcert pipeline --config run.json --seed 7 --samples 2000
    """
    config = load_run_config(config_path, fixture_name, seed, tol, max_iter, samples)
    with trace_writer(trace_path) as sink:
        report = run_pipeline(config, timing=timing, trace_sink=sink)
    print_pipeline_report(report)
    emit(report, out_path or default_report_path(config, "pipeline"))
    if report.solver.status == "Diverged":
        sys.exit(EXIT_DIVERGED)
