"""Options and helpers shared by the run commands"""

import functools
import json
import logging
import os
import sys
from contextlib import contextmanager
from typing import Any, Callable, Iterator, Optional, Tuple

from pydantic import ValidationError
from rich.console import Console

from domcert.core.errors import ConfigError, RepresentationError, TriangulationError
from domcert.core.schema import PipelineConfig
from domcert.fixtures import emit_fixture
from domcert.pipeline import prepare
from domcert.solver import SolveOutcome, TraceRecord, solve_harmonic
from domcert.surface.triangulation import GainTriangulation
from domcert.targets import Representation
from domcert.utils.config import ConfigManager, load_pipeline_config, resolve_config
from domcert.utils.display import print_error
from domcert.utils.rich_click_config import click
from domcert.utils.serialization import dumps_canonical, write_document

logger = logging.getLogger(__name__)
console = Console(stderr=True)

EXIT_DIVERGED = 2
EXIT_INVALID_INPUT = 3

INPUT_ERRORS = (ConfigError, TriangulationError, RepresentationError, ValidationError)


def run_options(func: Callable) -> Callable:
    """Input, override and output flags shared by every run command."""
    options = [
        click.option(
            "--config", "config_path", type=click.Path(dir_okay=False), help="Pipeline config (JSON or TOML)."
        ),
        click.option("--fixture", "fixture_name", help="Use a shipped fixture instead of a config file."),
        click.option("--seed", type=int, help="Seed for initial maps and sampling."),
        click.option("--tol", type=float, help="Solver convergence tolerance."),
        click.option("--max-iter", type=int, help="Solver iteration cap."),
        click.option("--samples", type=int, help="Number of sampled point pairs."),
        click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write the JSON report here."),
        click.option(
            "--trace", "trace_path", type=click.Path(dir_okay=False), help="Write the solver trace as JSON lines."
        ),
    ]
    for option in reversed(options):
        func = option(func)
    return func


@contextmanager
def input_errors() -> Iterator[None]:
    """Turn invalid-input errors into a one-line message and exit code 3."""
    try:
        yield
    except INPUT_ERRORS as e:
        logger.debug(f"Invalid input: {e!r}")
        print_error(str(e).splitlines()[0] if str(e) else type(e).__name__)
        sys.exit(EXIT_INVALID_INPUT)


def load_run_config(
    config_path: Optional[str],
    fixture_name: Optional[str],
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    max_iter: Optional[int] = None,
    samples: Optional[int] = None,
) -> PipelineConfig:
    """Read the config or fixture and apply flag and user-default overrides.

    Raises:
        ConfigError: if neither or both of config and fixture are given
    """
    if bool(config_path) == bool(fixture_name):
        raise ConfigError("give exactly one of --config or --fixture")
    config = load_pipeline_config(config_path) if config_path else emit_fixture(fixture_name)  # type: ignore[arg-type]
    defaults = ConfigManager().get_config()
    return resolve_config(config, seed=seed, tol=tol, max_iter=max_iter, samples=samples, user_defaults=defaults)


@contextmanager
def trace_writer(path: Optional[str]) -> Iterator[Optional[Callable[[TraceRecord], None]]]:
    if not path:
        yield None
        return
    with open(path, "w", encoding="utf-8") as handle:

        def sink(record: TraceRecord) -> None:
            handle.write(json.dumps(record.model_dump(mode="json"), sort_keys=True) + "\n")

        yield sink


def default_report_path(config: PipelineConfig, verb: str) -> Optional[str]:
    report_dir = ConfigManager().get_config().get("report_dir")
    if not report_dir:
        return None
    return os.path.join(os.path.expanduser(report_dir), f"{config.name or 'run'}-{verb}.json")


def emit(document: Any, out_path: Optional[str]) -> None:
    """Write the document to out_path, or print canonical JSON to stdout."""
    if out_path:
        target = write_document(document, out_path)
        console.print(f"[green]Report written to[/] {target}")
    else:
        click.echo(dumps_canonical(document), nl=False)


def solve_config(
    config: PipelineConfig, trace_path: Optional[str]
) -> Tuple[GainTriangulation, Representation, SolveOutcome]:
    t, rep = prepare(config)
    with trace_writer(trace_path) as sink:
        outcome = solve_harmonic(t, rep, params=config.solver, trace_sink=sink)
    return t, rep, outcome


def require_converged(outcome: SolveOutcome, verb: str) -> None:
    """Stop commands that need a nonconstant harmonic map."""
    if outcome.status == "Diverged":
        print_error(f"solver diverged ({outcome.diverged_reason}); nothing to {verb}")
        sys.exit(EXIT_DIVERGED)
    if outcome.status == "FixedPointConstant":
        console.print("[yellow]Constant equivariant map:[/] trivially dominated by any Fuchsian representation")
        sys.exit(0)


def with_input_errors(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        with input_errors():
            return func(*args, **kwargs)

    return wrapper
