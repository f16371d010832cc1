"""Protocol enumerations for the simulator."""

from enum import Enum


class ProtocolKind(Enum):
    """Enumeration of the data-collection protocols under comparison."""

    DIRECT = "direct"
    LEACH = "leach"
    LEACH_ENERGY = "leach_energy"
    LEACH_BOOST = "leach_boost"
    LEACH_C = "leach_c"
    LEACH_MODIFIED = "leach_modified"
    MESH_GREEDY = "mesh_greedy"
    MESH_FLOOD = "mesh_flood"

    @property
    def is_mesh(self) -> bool:
        """True for the neighbor-relaying mesh baselines."""
        return self in (ProtocolKind.MESH_GREEDY, ProtocolKind.MESH_FLOOD)

    @property
    def uses_distributed_election(self) -> bool:
        """True for kinds electing heads with the LEACH threshold."""
        return self in (
            ProtocolKind.LEACH,
            ProtocolKind.LEACH_ENERGY,
            ProtocolKind.LEACH_BOOST,
            ProtocolKind.LEACH_MODIFIED,
        )


class MeshMode(Enum):
    """Forwarding discipline of the mesh baselines."""

    GREEDY = "greedy"
    FLOOD = "flood"


PROTOCOL_NAMES = [kind.value for kind in ProtocolKind]
