"""This script runs the simulator's command-line interface."""

from wsnsim.cli.commands import cli

if __name__ == "__main__":
    cli()
