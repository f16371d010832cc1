"""Build and check the per-round topology plan."""

from typing import Optional, Sequence

import numpy as np

from wsnsim.engine.models import NodeState
from wsnsim.error_handlers import InternalConsistencyError, SimulationEnded
from wsnsim.field.models import Field
from wsnsim.field.services import bs_distances
from wsnsim.protocols.assignment import assign_modified, assign_nearest
from wsnsim.protocols.election import (
    elect_heads_leach,
    elect_heads_leach_c,
    leach_c_head_count,
    record_headship,
)
from wsnsim.protocols.enums import MeshMode, ProtocolKind
from wsnsim.protocols.mesh import (
    build_mesh_routes,
    default_radio_range,
    gateway,
    neighbor_graph,
)
from wsnsim.protocols.models import BS_SENTINEL, LeachConfig, RoundPlan


def build_round_plan(
    kind: ProtocolKind,
    states: Sequence[NodeState],
    field: Field,
    round_no: int,
    cfg: LeachConfig,
    rng: np.random.Generator,
    radio_range: Optional[float] = None,
) -> RoundPlan:
    """
    Organize one round for ``kind``.

    Raises:
        SimulationEnded: If no node is alive.
    """
    kind = ProtocolKind(kind)
    alive = frozenset(state.id for state in states if state.alive)
    if not alive:
        raise SimulationEnded(f"All nodes are dead before round {round_no}")

    if kind is ProtocolKind.DIRECT:
        plan = RoundPlan(kind=kind, direct=alive)

    elif kind.is_mesh:
        mode = (
            MeshMode.GREEDY
            if kind is ProtocolKind.MESH_GREEDY
            else MeshMode.FLOOD
        )
        if radio_range is None:
            radio_range = default_radio_range(field)
        graph = neighbor_graph(states, field, radio_range)
        routes, stranded = build_mesh_routes(
            states, field, mode, radio_range, graph=graph
        )
        plan = RoundPlan(
            kind=kind,
            routes=routes,
            stranded=stranded,
            mesh_mode=mode,
            radio_range=radio_range,
            neighbors={
                node: tuple(sorted(graph.neighbors(node)))
                for node in graph.nodes
            },
            gateway=gateway(states, bs_distances(field)),
        )

    else:
        if kind.uses_distributed_election:
            heads = elect_heads_leach(states, round_no, cfg, kind, rng)
        else:
            k = leach_c_head_count(cfg.p, len(alive))
            heads = elect_heads_leach_c(states, field, k)
            record_headship(states, heads)

        members = alive - heads
        if not heads:
            plan = RoundPlan(kind=kind, direct=alive)
        elif kind is ProtocolKind.LEACH_MODIFIED:
            membership, direct = assign_modified(members, heads, field)
            plan = RoundPlan(
                kind=kind,
                heads=heads,
                membership=membership,
                direct=frozenset(direct),
            )
        else:
            plan = RoundPlan(
                kind=kind,
                heads=heads,
                membership=assign_nearest(members, heads, field),
            )

    validate_plan(plan, states)
    return plan


def validate_plan(plan: RoundPlan, states: Sequence[NodeState]) -> None:
    """
    Check that ``plan`` partitions the alive nodes.

    Raises:
        InternalConsistencyError: On any overlap, gap, dead participant,
            dangling head reference or malformed route.
    """
    alive = {state.id for state in states if state.alive}
    roles = [
        ("heads", set(plan.heads)),
        ("members", set(plan.membership)),
        ("direct", set(plan.direct)),
        ("routed", set(plan.routes)),
        ("stranded", set(plan.stranded)),
    ]
    seen = set()
    for name, ids in roles:
        overlap = seen & ids
        if overlap:
            raise InternalConsistencyError(
                f"Nodes {sorted(overlap)} hold two roles (second: {name})"
            )
        seen |= ids
    if seen != alive:
        raise InternalConsistencyError(
            f"Plan roles cover {sorted(seen ^ alive)} incorrectly"
        )
    for member, head in plan.membership.items():
        if head not in plan.heads:
            raise InternalConsistencyError(
                f"Member {member} points at non-head {head}"
            )
    for source, route in plan.routes.items():
        if not route or route[0] != source or route[-1] != BS_SENTINEL:
            raise InternalConsistencyError(
                f"Route of {source} must start at it and end at the BS"
            )
        if any(node not in alive for node in route[:-1]):
            raise InternalConsistencyError(
                f"Route of {source} passes through a dead node"
            )
    if plan.routes and not plan.kind.is_mesh:
        raise InternalConsistencyError(
            f"{plan.kind.value} plans cannot carry mesh routes"
        )
