import pytest

from tests.factories import make_field, make_states
from wsnsim.error_handlers import InvalidArgument
from wsnsim.field.models import Position
from wsnsim.field.services import deploy_grid, deploy_uniform
from wsnsim.protocols.enums import MeshMode
from wsnsim.protocols.mesh import (
    build_mesh_routes,
    default_radio_range,
    gateway,
    neighbor_graph,
)
from wsnsim.protocols.models import BS_SENTINEL


@pytest.fixture
def square():
    return deploy_grid(2, 2, 10, bs=Position(-5.0, -5.0))


def test_greedy_routes_on_two_by_two_grid(square):
    routes, stranded = build_mesh_routes(
        make_states(4), square, MeshMode.GREEDY, 12.0
    )
    assert stranded == {}
    assert routes[0] == (0, BS_SENTINEL)
    assert routes[1] == (1, 0, BS_SENTINEL)
    assert routes[2] == (2, 0, BS_SENTINEL)
    assert routes[3] == (3, 1, 0, BS_SENTINEL)


def test_greedy_takes_the_diagonal_once_it_is_in_range(square):
    # At 15 m the 14.1 m diagonal 3-0 is a link, and 0 is nearest the BS.
    routes, stranded = build_mesh_routes(
        make_states(4), square, MeshMode.GREEDY, 15.0
    )
    assert stranded == {}
    assert routes[3] == (3, 0, BS_SENTINEL)
    assert routes[1] == (1, 0, BS_SENTINEL)
    assert routes[2] == (2, 0, BS_SENTINEL)


def test_source_within_range_uplinks_in_one_hop():
    field = make_field([(0, 0), (30, 0)], bs=(0, 5))
    routes, _ = build_mesh_routes(
        make_states(2), field, MeshMode.GREEDY, 10.0
    )
    assert routes[0] == (0, BS_SENTINEL)


def test_flood_delivers_every_source_on_connected_grid():
    field = deploy_grid(3, 3, 10)
    radius = default_radio_range(field, spacing=10)
    routes, stranded = build_mesh_routes(
        make_states(9), field, MeshMode.FLOOD, radius
    )
    assert stranded == {}
    assert sorted(routes) == list(range(9))
    for source, route in routes.items():
        assert route[0] == source
        assert sorted(route[:-1]) == list(range(9))


def test_isolated_source_is_stranded():
    field = make_field([(0, 0), (100, 0)], bs=(0, 5))
    states = make_states(2)
    routes, stranded = build_mesh_routes(states, field, MeshMode.GREEDY, 10)
    assert routes == {0: (0, BS_SENTINEL)}
    assert stranded == {1: ()}
    routes, stranded = build_mesh_routes(states, field, MeshMode.FLOOD, 10)
    assert routes == {0: (0, BS_SENTINEL)}
    assert stranded == {1: (1,)}


def test_gateway_uplinks_from_local_minimum():
    field = make_field([(0, 0), (5, 0), (60, 0)], bs=(0, 80))
    routes, stranded = build_mesh_routes(
        make_states(3), field, MeshMode.GREEDY, 10
    )
    assert gateway(make_states(3), [80.0, 80.2, 100.0]) == 0
    assert routes[0] == (0, BS_SENTINEL)
    assert routes[1] == (1, 0, BS_SENTINEL)
    assert stranded == {2: ()}


def test_dead_nodes_leave_the_graph(square):
    states = make_states(4)
    states[1].alive = False
    graph = neighbor_graph(states, square, 12.0)
    assert sorted(graph.nodes) == [0, 2, 3]
    routes, _ = build_mesh_routes(states, square, MeshMode.GREEDY, 12.0)
    assert routes[3] == (3, 2, 0, BS_SENTINEL)


def test_default_radio_range():
    assert default_radio_range(deploy_grid(3, 3, 10), spacing=10) == 15.0
    field = deploy_uniform(100, 100, 100, seed=0)
    assert default_radio_range(field) == pytest.approx(15.0)


def test_radio_range_must_be_positive(square):
    with pytest.raises(InvalidArgument):
        build_mesh_routes(make_states(4), square, MeshMode.FLOOD, 0)
