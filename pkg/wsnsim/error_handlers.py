"""
Define the simulator's exception hierarchy and the CLI error handlers.

Every error the simulator raises on purpose derives from
``SimulationError``; the command group turns them into a JSON error
line on stderr and a non-zero exit status.
"""
import json
from typing import Any, Dict, Optional

import click

from wsnsim.extensions import logger


class SimulationError(Exception):
    """
    Raise to signal an invalid use of the simulator.

    Allows custom messages, exit codes, and additional payload data.
    """

    exit_code: int = 1

    def __init__(
        self,
        message: str,
        exit_code: Optional[int] = None,
        payload: Optional[Dict[str, Any]] = None,
    ) -> None:
        """
        Initialize a SimulationError.

        Args:
            message (str): A descriptive error message.
            exit_code (Optional[int]): The process exit status to use.
                Defaults to the class value.
            payload (Optional[Dict[str, Any]]): Additional data to include
                in the error report.
        """
        super().__init__(message)
        if exit_code:
            self.exit_code = exit_code
        self.payload = payload or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert the exception to a dictionary for JSON serialization."""
        return {
            "error": str(self),
            "status": "error",
            **self.payload,
        }


class InvalidConfig(SimulationError):
    """Configuration value missing, unknown or out of range."""

    exit_code = 2

    def __init__(
        self,
        message: str,
        key: Optional[str] = None,
        payload: Optional[Dict[str, Any]] = None,
    ) -> None:
        """Attach the offending dotted key path, when known."""
        payload = dict(payload or {})
        if key is not None:
            payload.setdefault("key", key)
        super().__init__(message, payload=payload)
        self.key = key


class InvalidArgument(SimulationError, ValueError):
    """Operation called with an argument outside its domain."""

    exit_code = 2


class InternalConsistencyError(SimulationError):
    """A plan or state disagrees with itself; always a bug."""

    exit_code = 70


class InvalidComparison(SimulationError):
    """Results handed to the comparison do not describe one scenario."""

    exit_code = 2


class OutputError(SimulationError):
    """Result files could not be read or written."""

    exit_code = 74


class SimulationEnded(Exception):
    """Signal that no node is alive, so no further round can be planned."""


def handle_simulation_error(error: SimulationError) -> int:
    """
    Report a SimulationError on stderr and return its exit code.

    Args:
        error (SimulationError): The exception that was raised.

    Returns:
        int: The process exit status.
    """
    logger.error("%s: %s", type(error).__name__, error)
    click.echo(json.dumps(error.to_dict(), sort_keys=True), err=True)
    return error.exit_code


def handle_general_exception(error: Exception) -> int:
    """Handle exceptions not handled by other handlers."""
    logger.exception(error)
    click.echo(
        json.dumps({"status": "error", "error": "Internal error"}),
        err=True,
    )
    return 1


class ErrorHandlingGroup(click.Group):
    """Click group routing raised exceptions to the handlers above."""

    def invoke(self, ctx: click.Context) -> Any:
        """Run the selected command, mapping failures to exit codes."""
        try:
            return super().invoke(ctx)
        except SimulationError as error:
            ctx.exit(handle_simulation_error(error))
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as error:  # noqa: BLE001
            ctx.exit(handle_general_exception(error))
