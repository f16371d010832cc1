import math

import numpy as np
import pytest

from tests.factories import PositionFactory, make_field
from wsnsim.error_handlers import InvalidConfig
from wsnsim.field.models import Field, Position, default_bs
from wsnsim.field.services import (
    bs_distances,
    deploy_grid,
    deploy_uniform,
    distance,
    squared_distance_matrix,
)


def test_uniform_deployment_is_reproducible():
    first = deploy_uniform(1, 100, 100, seed=7)
    second = deploy_uniform(1, 100, 100, seed=7)
    assert first.size == 1
    assert first.nodes == second.nodes


def test_different_seeds_give_different_fields():
    assert deploy_uniform(10, 100, 100, 1).nodes != (
        deploy_uniform(10, 100, 100, 2).nodes
    )


def test_uniform_deployment_moments_and_bounds():
    field = deploy_uniform(1000, 100, 100, seed=3)
    xs = [p.x for p in field.nodes]
    ys = [p.y for p in field.nodes]
    tolerance = 100 / math.sqrt(12 * 1000) * 4
    assert abs(np.mean(xs) - 50) < tolerance
    assert abs(np.mean(ys) - 50) < tolerance
    assert all(0 <= x <= 100 for x in xs)
    assert all(0 <= y <= 100 for y in ys)


def test_uniform_deployment_default_base_station():
    field = deploy_uniform(5, 100, 80, seed=0)
    assert field.bs == Position(50.0, 100.0)
    assert default_bs(100, 100) == Position(50.0, 125.0)


def test_uniform_deployment_keeps_given_base_station():
    bs = Position(0.0, -20.0)
    assert deploy_uniform(3, 10, 10, 0, bs=bs).bs == bs


@pytest.mark.parametrize("n", [0, -1])
def test_uniform_deployment_rejects_empty_field(n):
    with pytest.raises(InvalidConfig):
        deploy_uniform(n, 100, 100, seed=0)


def test_uniform_deployment_rejects_flat_rectangle():
    with pytest.raises(InvalidConfig):
        deploy_uniform(3, 0, 100, seed=0)


def test_grid_lattice_positions():
    field = deploy_grid(2, 2, 10)
    assert [(p.x, p.y) for p in field.nodes] == [
        (0.0, 0.0),
        (10.0, 0.0),
        (0.0, 10.0),
        (10.0, 10.0),
    ]
    assert (field.width, field.height) == (10.0, 10.0)


def test_single_node_grid_sits_at_origin():
    field = deploy_grid(1, 1, 5)
    assert field.nodes == (Position(0.0, 0.0),)


def test_interior_grid_node_has_four_lattice_neighbors():
    field = deploy_grid(3, 3, 10)
    center = field.nodes[4]
    at_spacing = [
        node
        for node, pos in enumerate(field.nodes)
        if math.isclose(distance(center, pos), 10.0)
    ]
    assert at_spacing == [1, 3, 5, 7]


@pytest.mark.parametrize(
    "args", [(0, 2, 10), (2, 0, 10), (2, 2, 0), (2, 2, -1)]
)
def test_grid_rejects_bad_parameters(args):
    with pytest.raises(InvalidConfig):
        deploy_grid(*args)


def test_distance_examples():
    assert distance(Position(0, 0), Position(3, 4)) == 5.0
    assert distance(Position(1, 1), Position(1, 1)) == 0.0


def test_distance_is_a_metric_on_random_points():
    rng = np.random.default_rng(5)
    points = [Position(*xy) for xy in rng.uniform(-50, 50, (300, 2))]
    for a, b, c in zip(points, points[1:], points[2:]):
        assert distance(a, b) == distance(b, a)
        assert distance(a, b) >= 0
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12


def test_position_rejects_non_finite_coordinates():
    with pytest.raises(InvalidConfig):
        Position(float("nan"), 0.0)


def test_field_rejects_node_outside_rectangle():
    with pytest.raises(InvalidConfig):
        Field(
            nodes=(Position(11.0, 0.0),),
            bs=PositionFactory(),
            width=10.0,
            height=10.0,
        )


def test_bs_distances_and_squared_matrix():
    field = make_field([(0, 0), (3, 4), (6, 8)], bs=(0, 0))
    assert bs_distances(field) == [0.0, 5.0, 10.0]
    matrix = squared_distance_matrix(field, [0, 2], [1])
    assert matrix.shape == (2, 1)
    assert matrix[0, 0] == pytest.approx(25.0)
    assert matrix[1, 0] == pytest.approx(25.0)
