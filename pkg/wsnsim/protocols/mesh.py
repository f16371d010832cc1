"""
Mesh baselines: every node forwards reports to its radio neighbors.

Greedy forwarding hands the report to the neighbor closest to the base
station as long as that strictly reduces the distance. Flooding has
every node that hears a report rebroadcast it once. A node uplinks to
the base station when it lies within radio range of it; the alive node
nearest the base station (lowest id on ties) acts as gateway and always
uplinks.
"""

import math
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from wsnsim.engine.models import NodeState
from wsnsim.error_handlers import InvalidArgument
from wsnsim.extensions import logger
from wsnsim.field.models import Field
from wsnsim.field.services import bs_distances, distance
from wsnsim.protocols.enums import MeshMode
from wsnsim.protocols.models import BS_SENTINEL

RANGE_FACTOR = 1.5

Routes = Dict[int, Tuple[int, ...]]


def default_radio_range(
    field: Field, spacing: Optional[float] = None
) -> float:
    """
    Radio range of 1.5 lattice spacings.

    For a uniform deployment the spacing is that of a square lattice
    with the same node density.
    """
    if spacing is None:
        spacing = math.sqrt(field.width * field.height / field.size)
    if not spacing > 0:
        spacing = 1.0
    return RANGE_FACTOR * spacing


def neighbor_graph(
    states: Sequence[NodeState], field: Field, radio_range: float
) -> nx.Graph:
    """Graph of alive nodes joined when within ``radio_range``."""
    alive = [state.id for state in states if state.alive]
    graph = nx.Graph()
    graph.add_nodes_from(alive)
    for index, a in enumerate(alive):
        for b in alive[index + 1 :]:
            if distance(field.nodes[a], field.nodes[b]) <= radio_range:
                graph.add_edge(a, b)
    return graph


def gateway(
    states: Sequence[NodeState], to_bs: List[float]
) -> Optional[int]:
    """Alive node nearest the base station, lowest id on ties."""
    alive = [state.id for state in states if state.alive]
    if not alive:
        return None
    return min(alive, key=lambda node: (to_bs[node], node))


def build_mesh_routes(
    states: Sequence[NodeState],
    field: Field,
    mode: MeshMode,
    radio_range: float,
    graph: Optional[nx.Graph] = None,
) -> Tuple[Routes, Routes]:
    """
    Route every alive source's report over the neighbor graph.

    Returns ``(routes, stranded)``. A route lists the forwarding nodes in
    order and ends at ``BS_SENTINEL``. A greedy source stuck at a local
    minimum is stranded with an empty list (it never transmits); a
    flooded report that reaches no uplink is stranded with the order in
    which nodes would rebroadcast it.

    Raises:
        InvalidArgument: If ``radio_range`` is not positive.
    """
    if not radio_range > 0:
        raise InvalidArgument(f"radio_range must be positive: {radio_range}")
    mode = MeshMode(mode)
    if graph is None:
        graph = neighbor_graph(states, field, radio_range)
    to_bs = bs_distances(field)
    sink_node = gateway(states, to_bs)

    def can_uplink(node: int) -> bool:
        return to_bs[node] <= radio_range or node == sink_node

    routes: Routes = {}
    stranded: Routes = {}
    for source in sorted(graph.nodes):
        if mode is MeshMode.GREEDY:
            path = [source]
            current = source
            while True:
                if to_bs[current] <= radio_range:
                    routes[source] = tuple(path) + (BS_SENTINEL,)
                    break
                closer = [
                    v
                    for v in graph.neighbors(current)
                    if to_bs[v] < to_bs[current]
                ]
                if closer:
                    current = min(closer, key=lambda v: (to_bs[v], v))
                    path.append(current)
                    continue
                if current == sink_node:
                    routes[source] = tuple(path) + (BS_SENTINEL,)
                else:
                    stranded[source] = ()
                break
        else:
            edges = nx.bfs_edges(graph, source, sort_neighbors=sorted)
            order = [source] + [v for _, v in edges]
            if any(can_uplink(node) for node in order):
                routes[source] = tuple(order) + (BS_SENTINEL,)
            else:
                stranded[source] = tuple(order)

    if stranded:
        logger.debug(
            "%d mesh sources cannot reach the base station", len(stranded)
        )
    return routes, stranded
