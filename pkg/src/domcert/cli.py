"""
domcert CLI - main entry point
"""

import functools
from typing import Any, Dict

from rich.console import Console
from rich.traceback import Traceback

from domcert.commands import certify, config, desing, fixture, pipeline, rigidity, schema, solve
from domcert.utils.logging_config import setup_logging
from domcert.utils.rich_click_config import click, get_header_text

console = Console(stderr=True)

# Setup Rich logging early - this runs when the module is imported
setup_logging()

# The main group renders its own help with the header
CONTEXT_SETTINGS: Dict[str, Any] = dict(help_option_names=[])


def print_logo():
    console.print(get_header_text())


def handle_exceptions(func):
    """Decorator to catch unhandled exceptions and print a readable traceback."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except Exception:
            console.print(Traceback(show_locals=True))
            console.print("[bold red]An unexpected error occurred.[/bold red]")
            raise SystemExit(1)

    return wrapper


def _print_help(ctx) -> None:
    console.print(get_header_text())
    # the global footer would otherwise print twice
    original_footer = click.rich_click.FOOTER_TEXT
    click.rich_click.FOOTER_TEXT = None
    click.echo(ctx.get_help())
    click.rich_click.FOOTER_TEXT = original_footer


@click.group(
    name="domcert",
    context_settings=CONTEXT_SETTINGS,
    invoke_without_command=True,
    help="""
Discrete harmonic maps of surface group representations into CAT(-1) targets.

Solve for the equivariant harmonic map, glue its conical hyperbolic surface,
certify curvature and domination, and report rigidity.
""",
)
@click.option("-v", "--version", is_flag=True, help="Show version and exit.")
@click.option("-h", "--help", "help_flag", is_flag=True, help="Show this message and exit.")
@click.pass_context
@handle_exceptions
def main(ctx, version, help_flag):
    """Main entry point for the domcert CLI."""
    if version:
        print_logo()
        return

    if help_flag or ctx.invoked_subcommand is None:
        _print_help(ctx)


main.add_command(pipeline.pipeline)
main.add_command(fixture.fixture)
main.add_command(solve.solve)
main.add_command(certify.certify)
main.add_command(desing.desing)
main.add_command(rigidity.rigidity)
main.add_command(config.config)
main.add_command(schema.schema)

if __name__ == "__main__":
    main()
