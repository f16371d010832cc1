"""
The round loop.

Each round builds a plan from the alive nodes, then charges every
transmission, reception and aggregation in a fixed order: members by
id, heads by id, direct senders by id, then mesh sources by id along
their routes. A node that cannot afford an action dies before
performing it; its residual is forfeited and every report depending on
that action is lost for the round.
"""

import math
from collections import defaultdict, deque
from dataclasses import replace
from typing import Callable, Dict, List, Optional, Sequence, Set

from wsnsim.energy.models import RadioParams
from wsnsim.energy.services import aggregate_cost, rx_cost, tx_cost
from wsnsim.engine.models import NodeState, RoundReport, SimulationResult
from wsnsim.error_handlers import InternalConsistencyError, InvalidConfig
from wsnsim.extensions import logger
from wsnsim.field.models import Field
from wsnsim.field.services import bs_distances, distance
from wsnsim.protocols.assignment import redundant_members
from wsnsim.protocols.enums import MeshMode, ProtocolKind
from wsnsim.protocols.models import RoundPlan
from wsnsim.protocols.services import build_round_plan, validate_plan
from wsnsim.utils.rng import ELECTION_STREAM, seeded_generator

PlanObserver = Callable[[int, Sequence[NodeState], RoundPlan, Field], None]


class _Ledger:
    """Debits node budgets and remembers what each round cost."""

    def __init__(self, states: Sequence[NodeState]):
        self.states = states
        self.charges: List[float] = []
        self.forfeits: List[float] = []
        self.deaths: List[int] = []

    def spend(self, node: int, cost: float) -> bool:
        """Charge ``cost`` to ``node``; kill it if it cannot pay."""
        state = self.states[node]
        if not state.alive:
            return False
        if state.residual >= cost:
            state.residual -= cost
            self.charges.append(cost)
            return True
        self.kill(state)
        return False

    def kill(self, state: NodeState) -> None:
        """Record a death, forfeiting whatever residual is left."""
        self.charges.append(state.residual)
        self.forfeits.append(state.residual)
        state.residual = 0.0
        state.alive = False
        self.deaths.append(state.id)


def retire_exhausted(states: Sequence[NodeState]) -> List[int]:
    """Mark alive nodes with no energy left as dead; return their ids."""
    retired = []
    for state in states:
        if state.alive and state.residual <= 0:
            state.residual = 0.0
            state.alive = False
            retired.append(state.id)
    return retired


def _check_plan(states: Sequence[NodeState], plan: RoundPlan) -> None:
    for node in plan.participants:
        if not 0 <= node < len(states):
            raise InternalConsistencyError(f"Plan names unknown node {node}")
    validate_plan(plan, states)


def _charge_setup(
    ledger: _Ledger, plan: RoundPlan, params: RadioParams, field: Field
) -> None:
    """Control traffic: location reports, advertisements and joins."""
    bits = params.ctrl_bits
    alive = [s.id for s in ledger.states if s.alive]
    if plan.kind is ProtocolKind.LEACH_C:
        to_bs = bs_distances(field)
        for node in alive:
            ledger.spend(node, tx_cost(bits, to_bs[node], params))

    advertised = [
        head
        for head in sorted(plan.heads)
        if ledger.spend(head, tx_cost(bits, field.diagonal, params))
    ]
    for node in alive:
        if node in plan.heads:
            continue
        for _ in advertised:
            if not ledger.spend(node, rx_cost(bits, params)):
                break

    joined: Dict[int, int] = defaultdict(int)
    for member in sorted(plan.membership):
        head = plan.membership[member]
        d = distance(field.nodes[member], field.nodes[head])
        if ledger.spend(member, tx_cost(bits, d, params)):
            joined[head] += 1
    for head in sorted(joined):
        for _ in range(joined[head]):
            if not ledger.spend(head, rx_cost(bits, params)):
                break


def _run_frame(
    ledger: _Ledger,
    plan: RoundPlan,
    params: RadioParams,
    field: Field,
    to_bs: List[float],
) -> Set[int]:
    """Collect one data frame; return the sources that reached the BS."""
    bits = params.data_bits
    delivered: Set[int] = set()

    sent: Set[int] = set()
    for member in sorted(plan.membership):
        head = plan.membership[member]
        d = distance(field.nodes[member], field.nodes[head])
        if ledger.spend(member, tx_cost(bits, d, params)):
            sent.add(member)

    for head in sorted(plan.heads):
        if not ledger.states[head].alive:
            continue
        received = []
        for member in plan.members_of(head):
            if member not in sent:
                continue
            if not ledger.spend(head, rx_cost(bits, params)):
                break
            received.append(member)
        if not ledger.states[head].alive:
            continue
        fused = aggregate_cost(bits, len(received) + 1, params)
        if not ledger.spend(head, fused):
            continue
        if ledger.spend(head, tx_cost(bits, to_bs[head], params)):
            delivered.update(received)
            delivered.add(head)

    for node in sorted(plan.direct):
        if ledger.spend(node, tx_cost(bits, to_bs[node], params)):
            delivered.add(node)

    if plan.mesh_mode is MeshMode.GREEDY:
        for source in sorted(plan.routes):
            if _relay_greedy(ledger, plan.routes[source], params, field):
                delivered.add(source)
    elif plan.mesh_mode is MeshMode.FLOOD:
        for source in sorted(set(plan.routes) | set(plan.stranded)):
            if _relay_flood(ledger, plan, source, params, to_bs):
                delivered.add(source)
    return delivered


def _relay_greedy(
    ledger: _Ledger, route, params: RadioParams, field: Field
) -> bool:
    """Forward along ``route``; every relay receives, then transmits."""
    bits = params.data_bits
    hops = route[:-1]
    for index, node in enumerate(hops):
        if index > 0 and not ledger.spend(node, rx_cost(bits, params)):
            return False
        if index + 1 < len(hops):
            d = distance(field.nodes[node], field.nodes[hops[index + 1]])
        else:
            d = distance(field.nodes[node], field.bs)
        if not ledger.spend(node, tx_cost(bits, d, params)):
            return False
    return True


def _relay_flood(
    ledger: _Ledger,
    plan: RoundPlan,
    source: int,
    params: RadioParams,
    to_bs: List[float],
) -> bool:
    """
    Flood one report.

    Every node holding the report rebroadcasts it once at radio range,
    in the order it was received, and every alive neighbor pays to hear
    each broadcast. The base station hears a broadcast sent from within
    radio range; the gateway, when out of range, spends one extra
    long-range uplink.
    """
    bits = params.data_bits
    holding = {source}
    queue = deque([source])
    delivered = False
    while queue:
        node = queue.popleft()
        if not ledger.spend(node, tx_cost(bits, plan.radio_range, params)):
            continue
        if to_bs[node] <= plan.radio_range:
            delivered = True
        for neighbor in plan.neighbors.get(node, ()):
            if ledger.spend(neighbor, rx_cost(bits, params)):
                if neighbor not in holding:
                    holding.add(neighbor)
                    queue.append(neighbor)
        if not delivered and node == plan.gateway:
            delivered = ledger.spend(
                node, tx_cost(bits, to_bs[node], params)
            )
    return delivered


def run_round(
    states: Sequence[NodeState],
    plan: RoundPlan,
    params: RadioParams,
    field: Field,
    frames_per_round: int = 1,
    control_energy: bool = False,
    round_no: int = 0,
) -> RoundReport:
    """
    Charge one round's traffic and report what it cost and delivered.

    Raises:
        InternalConsistencyError: If the plan does not match ``states``.
    """
    _check_plan(states, plan)
    alive_start = sum(1 for state in states if state.alive)
    ledger = _Ledger(states)
    to_bs = bs_distances(field)

    if control_energy and not plan.kind.is_mesh and plan.heads:
        _charge_setup(ledger, plan, params, field)

    delivered: Set[int] = set()
    for _ in range(frames_per_round):
        delivered |= _run_frame(ledger, plan, params, field, to_bs)

    for node in retire_exhausted(states):
        ledger.deaths.append(node)

    return RoundReport(
        round=round_no,
        energy_charged=math.fsum(ledger.charges),
        deaths=tuple(ledger.deaths),
        delivered_sources=len(delivered),
        heads=len(plan.heads),
        direct=len(plan.direct),
        alive_start=alive_start,
        alive=sum(1 for state in states if state.alive),
        total_residual=math.fsum(state.residual for state in states),
        energy_forfeited=math.fsum(ledger.forfeits),
        redundant_transfers=len(redundant_members(plan.membership, field)),
    )


def run_simulation(
    cfg,
    kind: Optional[str] = None,
    seed: Optional[int] = None,
    on_plan: Optional[PlanObserver] = None,
) -> SimulationResult:
    """
    Simulate one protocol on one seeded field until every node is dead.

    ``kind`` and ``seed`` default to the first entries of the scenario.
    ``on_plan`` is called with every plan before it is executed.

    Raises:
        InvalidConfig: If the protocol or seed is not usable.
    """
    kind = ProtocolKind(kind or cfg.protocols[0])
    seed = cfg.seeds[0] if seed is None else seed
    if seed < 0:
        raise InvalidConfig(f"Seeds must be non-negative: {seed}", "seeds")

    field = cfg.build_field(seed)
    e_init = cfg.radio.e_init
    states = [
        NodeState(id=node, residual=e_init, initial=e_init)
        for node in range(field.size)
    ]
    rng = seeded_generator(seed, ELECTION_STREAM)
    radio_range = cfg.resolved_radio_range(field) if kind.is_mesh else None
    logger.info(
        "Simulating %s on %d nodes (seed=%s)", kind.value, field.size, seed
    )

    reports: List[RoundReport] = []
    for round_no in range(cfg.max_rounds):
        alive_start = sum(1 for state in states if state.alive)
        retired = retire_exhausted(states)
        if len(retired) == alive_start:
            reports.append(
                RoundReport(
                    round=round_no,
                    energy_charged=0.0,
                    deaths=tuple(retired),
                    delivered_sources=0,
                    heads=0,
                    direct=0,
                    alive_start=alive_start,
                    alive=0,
                    total_residual=math.fsum(s.residual for s in states),
                )
            )
            break

        plan = build_round_plan(
            kind, states, field, round_no, cfg.leach, rng, radio_range
        )
        if on_plan is not None:
            on_plan(round_no, states, plan, field)
        report = run_round(
            states,
            plan,
            cfg.radio,
            field,
            frames_per_round=cfg.frames_per_round,
            control_energy=cfg.control_energy,
            round_no=round_no,
        )
        if retired:
            report = replace(
                report,
                deaths=tuple(retired) + report.deaths,
                alive_start=alive_start,
            )
        reports.append(report)
        if report.alive == 0:
            break

    logger.info(
        "%s (seed=%s) finished after %d rounds, %d nodes alive",
        kind.value,
        seed,
        len(reports),
        sum(1 for state in states if state.alive),
    )
    return SimulationResult(
        config=cfg,
        kind=kind.value,
        seed=seed,
        reports=tuple(reports),
        final_states=tuple(replace(state) for state in states),
    )
