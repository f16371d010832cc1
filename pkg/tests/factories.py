"""factory-boy factories for the simulator's value types."""

from typing import Iterable, Optional, Tuple

import factory

from wsnsim.cli.models import ScenarioConfig
from wsnsim.engine.models import NodeState
from wsnsim.field.models import Field, Position


class PositionFactory(factory.Factory):
    class Meta:
        model = Position

    x = 0.0
    y = 0.0


class NodeStateFactory(factory.Factory):
    class Meta:
        model = NodeState

    id = factory.Sequence(lambda n: n)
    residual = 0.5
    initial = factory.SelfAttribute("residual")


class ScenarioConfigFactory(factory.Factory):
    """A small uniform scenario that runs in well under a second."""

    class Meta:
        model = ScenarioConfig

    nodes = 20
    width = 50.0
    height = 50.0
    protocols = ("direct", "leach", "leach_modified")
    seeds = (0, 1, 2)
    max_rounds = 300
    output_dir = "results"


def make_states(count: int, residual: float = 0.5) -> list:
    """Alive nodes 0..count-1 holding ``residual`` joules each."""
    return [NodeStateFactory(id=i, residual=residual) for i in range(count)]


def make_field(
    points: Iterable[Tuple[float, float]],
    bs: Tuple[float, float],
    width: Optional[float] = None,
    height: Optional[float] = None,
) -> Field:
    """Field whose node ``i`` sits at ``points[i]``."""
    nodes = tuple(PositionFactory(x=float(x), y=float(y)) for x, y in points)
    return Field(
        nodes=nodes,
        bs=PositionFactory(x=float(bs[0]), y=float(bs[1])),
        width=width if width is not None else max(p.x for p in nodes),
        height=height if height is not None else max(p.y for p in nodes),
    )
