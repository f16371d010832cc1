"""
Cluster-head election.

Distributed LEACH election uses the standard rotating threshold
``T = p / (1 - p * (r mod E))`` with E = round(1/p): a node that already
served as head in the current epoch is ineligible, and the last round
of an epoch forces every remaining eligible node to serve. LEACH-C
instead lets the base station pick heads among the nodes holding at
least the average residual energy.
"""

import itertools
import math
from typing import Iterable, List, Sequence

import numpy as np

from wsnsim.engine.models import NodeState
from wsnsim.error_handlers import InternalConsistencyError, InvalidArgument
from wsnsim.extensions import logger
from wsnsim.field.models import Field
from wsnsim.field.services import squared_distance_matrix
from wsnsim.protocols.enums import ProtocolKind
from wsnsim.protocols.models import LeachConfig

# Head subsets up to this count are searched exhaustively.
EXACT_SEARCH_LIMIT = 5000
_MAX_SWAP_PASSES = 1000
# Subsets scored per vectorized batch during the exact search.
_EXACT_CHUNK = 512

_THRESHOLD_VARIANTS = (
    ProtocolKind.LEACH,
    ProtocolKind.LEACH_MODIFIED,
    ProtocolKind.LEACH_ENERGY,
    ProtocolKind.LEACH_BOOST,
)


def leach_threshold(
    node: NodeState,
    round_no: int,
    cfg: LeachConfig,
    variant: ProtocolKind,
) -> float:
    """
    Probability that ``node`` elects itself head in ``round_no``.

    ``leach_energy`` scales the threshold by residual over initial
    energy; ``leach_boost`` multiplies it by ``boost_factor`` once the
    node has gone ``boost_rounds`` rounds without serving. The result
    is clamped to [0, 1].

    Raises:
        InvalidArgument: If the node is dead or the kind has no threshold.
    """
    if not node.alive:
        raise InvalidArgument(f"Node {node.id} is dead; it cannot be elected")
    variant = ProtocolKind(variant)
    if variant not in _THRESHOLD_VARIANTS:
        raise InvalidArgument(
            f"Protocol {variant.value} does not use the LEACH threshold"
        )
    if node.served_head_in_epoch:
        return 0.0

    denominator = 1.0 - cfg.p * (round_no % cfg.epoch_length)
    # Exact arithmetic gives T = 1 here; float rounding must not undercut it.
    if denominator <= cfg.p * (1.0 + 1e-12):
        threshold = 1.0
    else:
        threshold = cfg.p / denominator

    if variant is ProtocolKind.LEACH_ENERGY:
        ratio = node.residual / node.initial if node.initial > 0 else 0.0
        threshold *= ratio
    elif variant is ProtocolKind.LEACH_BOOST:
        if node.rounds_since_head >= cfg.effective_boost_rounds:
            threshold *= cfg.boost_factor

    return min(1.0, max(0.0, threshold))


def record_headship(states: Sequence[NodeState], heads: Iterable[int]) -> None:
    """Update the epoch flag and headship counters after an election."""
    heads = set(heads)
    for state in states:
        if not state.alive:
            continue
        if state.id in heads:
            state.served_head_in_epoch = True
            state.rounds_since_head = 0
        else:
            state.rounds_since_head += 1


def elect_heads_leach(
    states: Sequence[NodeState],
    round_no: int,
    cfg: LeachConfig,
    variant: ProtocolKind,
    rng: np.random.Generator,
) -> frozenset:
    """
    Run one distributed election.

    Every alive node draws ``u`` in [0, 1) from ``rng`` in id order
    (ineligible nodes draw too, keeping the stream aligned) and becomes
    head iff ``u`` is below its threshold. Returns an empty set when no
    node is alive.
    """
    if round_no % cfg.epoch_length == 0:
        for state in states:
            state.served_head_in_epoch = False

    alive = [state for state in states if state.alive]
    if not alive:
        return frozenset()

    draws = rng.random(len(alive))
    heads = frozenset(
        state.id
        for state, u in zip(alive, draws)
        if u < leach_threshold(state, round_no, cfg, variant)
    )
    record_headship(states, heads)
    logger.debug(
        "Round %d: %d heads elected among %d alive nodes",
        round_no,
        len(heads),
        len(alive),
    )
    return heads


def leach_c_head_count(p: float, alive: int) -> int:
    """Target head count ``max(1, round(p * alive))``."""
    return max(1, int(math.floor(p * alive + 0.5)))


def eligible_heads(states: Sequence[NodeState]) -> List[int]:
    """Alive nodes whose residual energy is at least the alive average."""
    alive = [state for state in states if state.alive]
    if not alive:
        return []
    average = math.fsum(state.residual for state in alive) / len(alive)
    eligible = [state.id for state in alive if state.residual >= average]
    if not eligible:
        # Rounding put the mean above every value; they are all equal.
        top = max(state.residual for state in alive)
        eligible = [state.id for state in alive if state.residual == top]
    return eligible


def clustering_cost(sq_dist: np.ndarray, columns: Sequence[int]) -> float:
    """Sum over rows of the squared distance to the nearest chosen column."""
    return float(sq_dist[:, list(columns)].min(axis=1).sum())


def _exhaustive_medoids(sq_dist: np.ndarray, k: int) -> List[int]:
    best, best_cost = None, math.inf
    combos = itertools.combinations(range(sq_dist.shape[1]), k)
    while True:
        chunk = np.array(
            list(itertools.islice(combos, _EXACT_CHUNK)), dtype=np.intp
        )
        if chunk.size == 0:
            break
        costs = sq_dist[:, chunk].min(axis=2).sum(axis=0)
        index = int(np.argmin(costs))
        if costs[index] < best_cost:
            best, best_cost = chunk[index].tolist(), float(costs[index])
    return best


def _greedy_medoids(sq_dist: np.ndarray, k: int) -> List[int]:
    chosen: List[int] = []
    nearest = np.full(sq_dist.shape[0], np.inf)
    for _ in range(k):
        totals = np.minimum(nearest[:, None], sq_dist).sum(axis=0)
        totals[chosen] = np.inf
        pick = int(np.argmin(totals))
        chosen.append(pick)
        nearest = np.minimum(nearest, sq_dist[:, pick])
    return chosen


def _two_nearest(sq_dist: np.ndarray, chosen: List[int]):
    """
    Nearest chosen position per row, its distance and the runner-up's.

    The runner-up distance is inf when only one column is chosen.
    """
    block = sq_dist[:, chosen]
    rows = np.arange(block.shape[0])
    order = np.argsort(block, axis=1, kind="stable")
    first = block[rows, order[:, 0]]
    if block.shape[1] > 1:
        second = block[rows, order[:, 1]]
    else:
        second = np.full(block.shape[0], np.inf)
    return order[:, 0], first, second


def swap_local_search(sq_dist: np.ndarray, start: List[int]) -> List[int]:
    """
    Improve ``start`` by best-improvement medoid swaps.

    Each pass evaluates replacing every chosen column with every other
    column and applies the single best strictly improving swap; the
    search stops at a swap-local optimum. The nearest and second-nearest
    chosen distances are cached once per pass, so dropping a column
    costs one pass over the rows instead of a fresh minimum.
    """
    chosen = list(start)
    current = clustering_cost(sq_dist, chosen)
    for _ in range(_MAX_SWAP_PASSES):
        nearest, first, second = _two_nearest(sq_dist, chosen)
        best_cost, best_move = current, None
        for position in range(len(chosen)):
            without = np.where(nearest == position, second, first)
            totals = np.minimum(without[:, None], sq_dist).sum(axis=0)
            totals[chosen] = np.inf
            candidate = int(np.argmin(totals))
            if totals[candidate] < best_cost:
                best_cost = float(totals[candidate])
                best_move = (position, candidate)
        if best_move is None:
            break
        position, candidate = best_move
        chosen[position] = candidate
        current = best_cost
    return sorted(chosen)


def elect_heads_leach_c(
    states: Sequence[NodeState], field: Field, k: int
) -> frozenset:
    """
    Choose heads centrally.

    Picks ``min(k, |eligible|)`` heads among the eligible nodes
    minimizing the summed squared distance from every alive node to its
    nearest head. Small instances are solved exactly; larger ones start
    from a greedy placement and run the swap local search.

    Raises:
        InvalidArgument: If ``k`` is below 1 or no node is alive.
        InternalConsistencyError: If no alive node is eligible.
    """
    if k < 1:
        raise InvalidArgument(f"LEACH-C needs k >= 1, got {k}")
    alive = [state.id for state in states if state.alive]
    if not alive:
        raise InvalidArgument("LEACH-C election needs an alive node")
    eligible = eligible_heads(states)
    if not eligible:
        raise InternalConsistencyError(
            "No node reaches the average residual energy"
        )

    k = min(k, len(eligible))
    if k == len(eligible):
        return frozenset(eligible)

    sq_dist = squared_distance_matrix(field, alive, eligible)
    if math.comb(len(eligible), k) <= EXACT_SEARCH_LIMIT:
        columns = _exhaustive_medoids(sq_dist, k)
    else:
        columns = swap_local_search(sq_dist, _greedy_medoids(sq_dist, k))
    return frozenset(eligible[column] for column in columns)
