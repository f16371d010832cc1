"""Scenario configuration."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from wsnsim.energy.models import RadioParams
from wsnsim.error_handlers import InvalidConfig
from wsnsim.field.models import Field, Position
from wsnsim.field.services import deploy_grid, deploy_uniform
from wsnsim.protocols.enums import ProtocolKind
from wsnsim.protocols.mesh import default_radio_range
from wsnsim.protocols.models import LeachConfig

DEFAULT_PROTOCOLS = (
    ProtocolKind.DIRECT.value,
    ProtocolKind.LEACH.value,
    ProtocolKind.LEACH_C.value,
    ProtocolKind.LEACH_MODIFIED.value,
    ProtocolKind.MESH_FLOOD.value,
)
DEFAULT_SEEDS = tuple(range(20))


@dataclass(frozen=True)
class GridSpec:
    """Lattice deployment parameters."""

    nx: int
    ny: int
    spacing: float


@dataclass(frozen=True)
class ScenarioConfig:
    """
    One experiment: a field, a radio, the protocols and the seeds.

    A non-empty ``node_sweep`` repeats the experiment once per listed
    node count; ``nodes`` then holds the first count.
    """

    nodes: int = 100
    deployment: str = "uniform"
    width: float = 100.0
    height: float = 100.0
    grid: Optional[GridSpec] = None
    bs: Optional[Position] = None
    radio: RadioParams = field(default_factory=RadioParams)
    protocols: Tuple[str, ...] = DEFAULT_PROTOCOLS
    leach: LeachConfig = field(default_factory=LeachConfig)
    frames_per_round: int = 1
    max_rounds: int = 5000
    seeds: Tuple[int, ...] = DEFAULT_SEEDS
    control_energy: bool = False
    radio_range: Optional[float] = None
    output_dir: str = "results"
    node_sweep: Tuple[int, ...] = ()

    def __post_init__(self):
        """Check cross-field constraints."""
        if self.deployment == "grid" and self.grid is None:
            raise InvalidConfig(
                "A grid deployment needs grid.nx, grid.ny and grid.spacing",
                key="grid",
            )
        if not self.protocols:
            raise InvalidConfig(
                "At least one protocol is required", key="protocols"
            )
        if not self.seeds:
            raise InvalidConfig("At least one seed is required", key="seeds")
        if self.node_sweep and self.deployment == "grid":
            raise InvalidConfig(
                "A node-count sweep needs a uniform deployment", key="nodes"
            )

    @property
    def node_count(self) -> int:
        """Number of deployed nodes."""
        if self.deployment == "grid":
            return self.grid.nx * self.grid.ny
        return self.nodes

    def build_field(self, seed: int) -> Field:
        """Deploy the scenario's field for ``seed``."""
        if self.deployment == "grid":
            return deploy_grid(
                self.grid.nx, self.grid.ny, self.grid.spacing, bs=self.bs
            )
        return deploy_uniform(
            self.nodes, self.width, self.height, seed, bs=self.bs
        )

    def resolved_radio_range(self, field_: Field) -> float:
        """Configured mesh radio range, or 1.5 lattice spacings."""
        if self.radio_range is not None:
            return self.radio_range
        spacing = self.grid.spacing if self.deployment == "grid" else None
        return default_radio_range(field_, spacing)
