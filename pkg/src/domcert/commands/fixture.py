"""Fixture command - write a shipped fixture config"""

from rich.console import Console

from domcert.commands.common import emit, with_input_errors
from domcert.fixtures import FIXTURES, emit_fixture, fixture_names
from domcert.utils.rich_click_config import click

console = Console(stderr=True)


@click.command()
@click.argument("name", required=False)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write here (.json or .toml).")
@click.option("--list", "list_names", is_flag=True, help="List the shipped fixtures.")
@click.help_option("-h", "--help")
@with_input_errors
def fixture(name, out_path, list_names):
    """Write the canonical config of a shipped fixture.

    Examples:

    \b
        domcert fixture --list
        domcert fixture fuchsian_octagon_g2 --out octagon.json
        domcert fixture tree_overlapping_axes --out tree.toml
    """
    if list_names or not name:
        for key in fixture_names():
            doc = (FIXTURES[key].__doc__ or "").strip().splitlines()
            console.print(f"[cyan]{key}[/] {doc[0] if doc else ''}")
        return
    emit(emit_fixture(name), out_path)
