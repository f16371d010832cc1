"""Deploy sensor fields and measure distances between points."""

import math
from typing import Optional, Sequence

import numpy as np

from wsnsim.error_handlers import InvalidConfig
from wsnsim.extensions import logger
from wsnsim.field.models import Field, Position, default_bs
from wsnsim.utils.rng import seeded_generator


def deploy_uniform(
    n: int,
    width: float,
    height: float,
    seed: int,
    bs: Optional[Position] = None,
) -> Field:
    """
    Scatter ``n`` nodes uniformly over a ``width`` x ``height`` rectangle.

    Coordinates come from the PCG64 stream of ``seed``, x then y for each
    node in id order, so the same seed always yields the same field.

    Raises:
        InvalidConfig: If ``n`` is below 1 or a dimension is not positive.
    """
    if n < 1:
        raise InvalidConfig("Node count must be at least 1", key="nodes")
    if not (width > 0 and height > 0):
        raise InvalidConfig(
            "Field width and height must be positive", key="width"
        )
    rng = seeded_generator(seed)
    coords = rng.random((n, 2)) * np.array([width, height])
    nodes = tuple(Position(float(x), float(y)) for x, y in coords)
    logger.debug(
        "Deployed %d nodes uniformly over %sx%s (seed=%s)",
        n,
        width,
        height,
        seed,
    )
    return Field(
        nodes=nodes,
        bs=bs if bs is not None else default_bs(width, height),
        width=float(width),
        height=float(height),
    )


def deploy_grid(
    nx: int, ny: int, spacing: float, bs: Optional[Position] = None
) -> Field:
    """
    Place ``nx * ny`` nodes on lattice points ``(i*spacing, j*spacing)``.

    Node ids run along x first: node ``j*nx + i`` sits at column ``i``,
    row ``j``.
    """
    if nx < 1 or ny < 1:
        raise InvalidConfig("Grid counts must be at least 1", key="grid")
    if not spacing > 0:
        raise InvalidConfig(
            "Grid spacing must be positive", key="grid.spacing"
        )
    nodes = tuple(
        Position(float(i * spacing), float(j * spacing))
        for j in range(ny)
        for i in range(nx)
    )
    width = float((nx - 1) * spacing)
    height = float((ny - 1) * spacing)
    return Field(
        nodes=nodes,
        bs=bs if bs is not None else default_bs(width, height),
        width=width,
        height=height,
    )


def distance(a: Position, b: Position) -> float:
    """Euclidean distance between two positions."""
    return math.hypot(a.x - b.x, a.y - b.y)


def bs_distances(field: Field) -> list:
    """Distance from every node to the base station, indexed by node id."""
    return [distance(pos, field.bs) for pos in field.nodes]


def squared_distance_matrix(
    field: Field, rows: Sequence[int], cols: Sequence[int]
) -> np.ndarray:
    """Squared distances between node sets ``rows`` and ``cols``."""
    coords = np.array([(p.x, p.y) for p in field.nodes], dtype=float)
    diff = coords[list(rows)][:, None, :] - coords[list(cols)][None, :, :]
    return np.einsum("ijk,ijk->ij", diff, diff)
