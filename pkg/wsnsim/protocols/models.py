"""Protocol configuration and the per-round topology plan."""

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Optional, Tuple

from wsnsim.error_handlers import InvalidConfig
from wsnsim.protocols.enums import MeshMode, ProtocolKind

# Route terminator standing for the base station.
BS_SENTINEL = -1


@dataclass(frozen=True)
class LeachConfig:
    """
    Parameters of the LEACH threshold and its variants.

    ``boost_rounds`` of None means twice the epoch length.
    """

    p: float = 0.05
    boost_rounds: Optional[int] = None
    boost_factor: float = 2.0

    def __post_init__(self):
        """Check the head fraction and boost settings."""
        if not 0 < self.p < 1:
            raise InvalidConfig("leach.p must be in (0, 1)", key="leach.p")
        if self.boost_rounds is not None and self.boost_rounds < 1:
            raise InvalidConfig(
                "leach.boost_rounds must be at least 1",
                key="leach.boost_rounds",
            )
        if not self.boost_factor >= 1:
            raise InvalidConfig(
                "leach.boost_factor must be at least 1",
                key="leach.boost_factor",
            )

    @property
    def epoch_length(self) -> int:
        """Rounds per epoch, ``1/p`` rounded half up."""
        return max(1, int(math.floor(1.0 / self.p + 0.5)))

    @property
    def effective_boost_rounds(self) -> int:
        """Rounds without headship after which the boost applies."""
        if self.boost_rounds is None:
            return 2 * self.epoch_length
        return self.boost_rounds


@dataclass(frozen=True)
class RoundPlan:
    """
    One round's topology.

    Heads, members, direct senders and mesh sources (routed or
    stranded) partition the alive nodes. A route lists the nodes that
    forward a source's report in order and ends at ``BS_SENTINEL``; a
    stranded entry lists the nodes that transmit without ever reaching
    the base station (empty when the source keeps silent). Mesh plans
    also carry the neighbor lists and the gateway, the alive node
    nearest the base station.
    """

    kind: ProtocolKind
    heads: FrozenSet[int] = frozenset()
    membership: Dict[int, int] = field(default_factory=dict)
    direct: FrozenSet[int] = frozenset()
    routes: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    stranded: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    mesh_mode: Optional[MeshMode] = None
    radio_range: Optional[float] = None
    neighbors: Dict[int, Tuple[int, ...]] = field(default_factory=dict)
    gateway: Optional[int] = None

    @property
    def participants(self) -> FrozenSet[int]:
        """Every node holding a role this round."""
        return (
            self.heads
            | frozenset(self.membership)
            | self.direct
            | frozenset(self.routes)
            | frozenset(self.stranded)
        )

    def members_of(self, head: int) -> Tuple[int, ...]:
        """Members assigned to ``head``, by id."""
        return tuple(
            sorted(m for m, h in self.membership.items() if h == head)
        )
