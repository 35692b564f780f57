"""Schema command - publish the JSON schemas of reports and configs"""

from domcert.commands.common import emit
from domcert.core.schema import PipelineConfig, PipelineReport
from domcert.utils.rich_click_config import click

SCHEMAS = {
    "report": PipelineReport,
    "config": PipelineConfig,
}


@click.command()
@click.option("--kind", type=click.Choice(sorted(SCHEMAS)), default="report", show_default=True)
@click.option("--out", "out_path", type=click.Path(dir_okay=False), help="Write the schema here.")
@click.help_option("-h", "--help")
def schema(kind, out_path):
    """Write the JSON schema of pipeline reports or configs.

    Examples:

    \b
        domcert schema --out report.schema.json
        domcert schema --kind config
    """
    emit(SCHEMAS[kind].model_json_schema(), out_path)
