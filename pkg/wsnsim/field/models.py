"""Value types describing where the sensors and the base station sit."""

import math
from dataclasses import dataclass
from typing import Tuple

from wsnsim.error_handlers import InvalidConfig


@dataclass(frozen=True)
class Position:
    """A point in the deployment plane, in meters."""

    x: float
    y: float

    def __post_init__(self):
        """Reject non-finite coordinates."""
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidConfig(
                f"Position coordinates must be finite, got ({self.x}, "
                f"{self.y})",
                key="position",
            )


@dataclass(frozen=True)
class Field:
    """
    A deployed sensor field.

    Node ids are the indices into ``nodes`` and never change for the
    lifetime of a simulation. The base station may sit outside the
    rectangle.
    """

    nodes: Tuple[Position, ...]
    bs: Position
    width: float
    height: float

    def __post_init__(self):
        """Check the node count and the rectangle bound."""
        if len(self.nodes) < 1:
            raise InvalidConfig("A field needs at least one node", key="nodes")
        if self.width < 0 or self.height < 0:
            raise InvalidConfig("Field dimensions must be non-negative")
        for node_id, pos in enumerate(self.nodes):
            if not (
                0 <= pos.x <= self.width and 0 <= pos.y <= self.height
            ):
                raise InvalidConfig(
                    f"Node {node_id} at ({pos.x}, {pos.y}) lies outside "
                    f"the {self.width}x{self.height} field",
                    key="nodes",
                )

    @property
    def size(self) -> int:
        """Number of deployed nodes."""
        return len(self.nodes)

    @property
    def diagonal(self) -> float:
        """Length of the field's diagonal."""
        return math.hypot(self.width, self.height)


def default_bs(width: float, height: float) -> Position:
    """Base station centered above the field's top edge."""
    return Position(width / 2.0, height * 1.25)
