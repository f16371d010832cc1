"""State, per-round reports and simulation results."""

from dataclasses import dataclass
from typing import Any, List, Tuple


@dataclass
class NodeState:
    """
    Mutable state of one sensor.

    ``residual`` never drops below zero; ``alive`` turns false exactly
    once, when the node records a death event. ``initial`` is the
    budget the node started with.
    """

    id: int
    residual: float
    initial: float
    alive: bool = True
    rounds_since_head: int = 0
    served_head_in_epoch: bool = False


@dataclass(frozen=True)
class RoundReport:
    """What happened in one simulated round."""

    round: int
    energy_charged: float
    deaths: Tuple[int, ...]
    delivered_sources: int
    heads: int
    direct: int
    alive_start: int
    alive: int
    total_residual: float
    energy_forfeited: float = 0.0
    redundant_transfers: int = 0


@dataclass(frozen=True)
class SimulationResult:
    """
    Everything one (protocol, seed) run produced.

    ``config`` is the ScenarioConfig the run was started with; reports
    cover consecutive rounds starting at 0.
    """

    config: Any
    kind: str
    seed: int
    reports: Tuple[RoundReport, ...]
    final_states: Tuple[NodeState, ...]

    @property
    def n_initial(self) -> int:
        """Number of deployed nodes."""
        return len(self.final_states)

    def alive_curve(self) -> List[int]:
        """Alive count at the end of every round."""
        return [report.alive for report in self.reports]
