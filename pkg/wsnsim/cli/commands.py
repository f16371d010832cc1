"""Command-line entry points: ``wsnsim simulate`` and ``wsnsim compare``."""

import io
import json
from typing import Optional, Tuple

import click

from wsnsim import __version__, init_app
from wsnsim.cli.services import (
    compare_directory,
    comparison_document,
    parse_config,
    parse_seeds,
    run_experiment,
    write_comparison_csv,
)
from wsnsim.error_handlers import ErrorHandlingGroup
from wsnsim.protocols.enums import PROTOCOL_NAMES


@click.group(cls=ErrorHandlingGroup)
@click.version_option(__version__, prog_name="wsnsim")
@click.pass_context
def cli(ctx: click.Context) -> None:
    """Round-based lifetime simulator for wireless sensor networks."""
    ctx.obj = init_app()


@cli.command()
@click.option(
    "--config",
    "config_path",
    type=click.Path(dir_okay=False),
    help="JSON scenario file; defaults apply to missing keys.",
)
@click.option(
    "--protocol",
    "protocols",
    multiple=True,
    type=click.Choice(PROTOCOL_NAMES),
    help="Protocol to simulate; repeat for several.",
)
@click.option("--seeds", help="Seed range a..b (inclusive) or list a,b,c.")
@click.option("--out", "output_dir", type=click.Path(), help="Output dir.")
@click.option(
    "--set",
    "overrides",
    multiple=True,
    metavar="KEY=VALUE",
    help="Override a config key by dotted path, e.g. leach.p=0.1.",
)
@click.pass_obj
def simulate(
    config,
    config_path: Optional[str],
    protocols: Tuple[str, ...],
    seeds: Optional[str],
    output_dir: Optional[str],
    overrides: Tuple[str, ...],
) -> None:
    """Run every selected protocol on every seed and write the results."""
    flags = list(overrides)
    if protocols:
        flags.append(f"protocols={json.dumps(list(protocols))}")
    if seeds is not None:
        flags.append(f"seeds={json.dumps(parse_seeds(seeds))}")
    if output_dir is not None:
        flags.append(f"output_dir={json.dumps(output_dir)}")
    scenario = parse_config(config_path, flags)
    run_experiment(scenario, workers=config.WORKERS)


@cli.command()
@click.option(
    "--in",
    "in_dir",
    required=True,
    type=click.Path(exists=True, file_okay=False),
    help="Output directory of a previous simulate run.",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["json", "csv"]),
    default="json",
    show_default=True,
)
def compare(in_dir: str, output_format: str) -> None:
    """Rebuild the comparison table from stored summaries."""
    table = compare_directory(in_dir)
    if output_format == "csv":
        buffer = io.StringIO()
        write_comparison_csv(table, buffer)
        click.echo(buffer.getvalue(), nl=False)
        return
    document = comparison_document(table)
    click.echo(json.dumps(document, indent=2, sort_keys=True))


if __name__ == "__main__":
    cli()
