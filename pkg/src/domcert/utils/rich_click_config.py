"""
Rich-click configuration for the domcert CLI.
"""

import rich_click as click
from rich.console import Console
from rich.text import Text
from rich_gradient import Gradient

from domcert import __version__

click.rich_click.USE_RICH_MARKUP = True
click.rich_click.USE_MARKDOWN = True
click.rich_click.SHOW_ARGUMENTS = True
click.rich_click.SHOW_METAVARS_COLUMN = False
click.rich_click.APPEND_METAVARS_HELP = True
click.rich_click.GROUP_ARGUMENTS_OPTIONS = True


def get_header_text():
    ASCII_ART = """
    ██████░   ██████░  ███░   ███░  ██████░ ███████░ ██████░  ████████░
    ██░░░██░ ██░░░░██░ ████░ ████░ ██░░░░░░ ██░░░░░░ ██░░░██░ ░░░██░░░
    ██░   ██░██░    ██░██░████░██░ ██░      █████░   ██████░░    ██░
    ██░   ██░██░    ██░██░░██░░██░ ██░      ██░░░░   ██░░░██░    ██░
    ██████░░ ░██████░░ ██░ ░░░ ██░ ░██████░ ███████░ ██░  ██░    ██░
    ░░░░░░    ░░░░░░   ░░░     ░░░  ░░░░░░░ ░░░░░░░░ ░░░  ░░░    ░░░

    """

    gradient_colors = ["#2E5A88", "#3F88C5", "#7FB7BE", "#D6F0EE"]

    # narrow console so the gradient spans the art, not the terminal
    temp_console = Console(width=80)
    ascii_gradient = Gradient(ASCII_ART, colors=gradient_colors)  # type: ignore

    with temp_console.capture() as capture:
        temp_console.print(ascii_gradient, justify="center")
    header_text = Text.from_ansi(capture.get())
    header_text.append("\n")

    prose = Text()
    prose.append("Domination certificates for surface group representations", style="#3F88C5 bold")
    prose.append(" v", style="#7FB7BE")
    prose.append(__version__, style="#D6F0EE bold")

    with temp_console.capture() as capture:
        temp_console.print(prose, justify="center")
    header_text.append(Text.from_ansi(capture.get().rstrip()))
    return header_text


# Error styling
click.rich_click.STYLE_ERRORS_SUGGESTION = "magenta italic"
click.rich_click.ERRORS_SUGGESTION = "Try running the '--help' flag for more information."
click.rich_click.ERRORS_EPILOGUE = ""

# Color scheme
click.rich_click.STYLE_OPTION = "bold cyan"
click.rich_click.STYLE_ARGUMENT = "bold cyan"
click.rich_click.STYLE_COMMAND = "bold cyan"
click.rich_click.STYLE_SWITCH = "bold green"
click.rich_click.STYLE_METAVAR = "bold yellow"
click.rich_click.STYLE_HELPTEXT = ""
click.rich_click.STYLE_HELPTEXT_FIRST_LINE = "bold"
click.rich_click.STYLE_OPTION_HELP = ""
click.rich_click.STYLE_USAGE = "bold"
click.rich_click.STYLE_USAGE_COMMAND = "bold cyan"

# Layout
click.rich_click.WIDTH = None
click.rich_click.MAX_WIDTH = 100

_COMMAND_GROUPS = [
    {
        "name": "Pipeline",
        "commands": ["pipeline", "fixture"],
    },
    {
        "name": "Stages",
        "commands": ["solve", "certify", "desing", "rigidity"],
    },
    {
        "name": "System & Configuration",
        "commands": ["config", "schema"],
    },
]

# "main" is the function name, "domcert" the program name
click.rich_click.COMMAND_GROUPS = {
    "main": _COMMAND_GROUPS,
    "domcert": _COMMAND_GROUPS,
}

_RUN_OPTIONS = [
    {
        "name": "Input",
        "options": ["--config", "--fixture"],
    },
    {
        "name": "Overrides",
        "options": ["--seed", "--tol", "--max-iter", "--samples"],
    },
    {
        "name": "Output",
        "options": ["--out", "--trace", "--timing"],
    },
    {
        "name": "Help",
        "options": ["--help"],
    },
]

click.rich_click.OPTION_GROUPS = {
    f"domcert {verb}": _RUN_OPTIONS for verb in ("pipeline", "solve", "certify", "desing", "rigidity")
}

__all__ = ["click"]
