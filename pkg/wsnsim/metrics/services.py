"""Compute lifetime, energy and reliability figures from results."""

import math
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from wsnsim.cli.schemas import ScenarioConfigSchema
from wsnsim.engine.models import SimulationResult
from wsnsim.error_handlers import InvalidComparison
from wsnsim.extensions import logger
from wsnsim.metrics.models import (
    ComparisonRow,
    ComparisonTable,
    LifetimeSummary,
    NodeCountMilestones,
)
from wsnsim.protocols.enums import ProtocolKind

MODIFIED = ProtocolKind.LEACH_MODIFIED.value

# Metrics where a larger value is better; the rest are costs.
_LIFETIME_METRICS = ("fnd", "hnd", "lnd")
_COST_METRICS = ("total_energy", "energy_per_delivered_bit")


def lifetime_summary(result: SimulationResult) -> LifetimeSummary:
    """
    Summarize first, half and last node death and the energy totals.

    HND is the first round ending with at most ceil(n/2) nodes alive.
    """
    never = result.config.max_rounds + 1
    half = math.ceil(result.n_initial / 2)
    fnd = hnd = lnd = never
    for report in result.reports:
        if fnd == never and report.deaths:
            fnd = report.round
        if hnd == never and report.alive <= half:
            hnd = report.round
        if report.alive == 0:
            lnd = report.round
            break

    total_energy = math.fsum(r.energy_charged for r in result.reports)
    total_delivered = sum(r.delivered_sources for r in result.reports)
    if total_delivered:
        per_bit = total_energy / (
            total_delivered * result.config.radio.data_bits
        )
    else:
        per_bit = None
        logger.warning(
            "%s (seed=%s) delivered nothing", result.kind, result.seed
        )
    return LifetimeSummary(
        fnd=fnd,
        hnd=hnd,
        lnd=lnd,
        total_energy=total_energy,
        total_delivered=total_delivered,
        energy_per_delivered_bit=per_bit,
        rounds=len(result.reports),
        redundant_transfers=sum(
            r.redundant_transfers for r in result.reports
        ),
    )


def reliability_curve(
    result: SimulationResult, n_initial: int
) -> List[float]:
    """Per-round fraction of the initial nodes whose report arrived."""
    if n_initial <= 0:
        return [0.0 for _ in result.reports]
    return [r.delivered_sources / n_initial for r in result.reports]


def cumulative_reliability(
    result: SimulationResult, n_initial: int, upto_round: int
) -> float:
    """
    Delivered reports through ``upto_round`` over all reports expected.

    Rounds after the run ended count as delivering nothing.
    """
    if n_initial <= 0 or upto_round < 0:
        return 0.0
    delivered = sum(
        r.delivered_sources for r in result.reports if r.round <= upto_round
    )
    return delivered / (n_initial * (upto_round + 1))


def _mean(values: Sequence[float]) -> Optional[float]:
    """Order-independent mean; None for no values."""
    values = [v for v in values if v is not None]
    if not values:
        return None
    return math.fsum(sorted(values)) / len(values)


def _median_iqr(values: Sequence[float]):
    points = np.percentile(np.array(values, dtype=float), [25, 50, 75])
    q1, median, q3 = points
    return float(median), float(q3 - q1)


def improvement(modified: float, baseline: float, larger_is_better: bool):
    """Percentage gain of ``modified`` over ``baseline``."""
    if modified is None or baseline is None or baseline == 0:
        return None
    if larger_is_better:
        return (modified - baseline) / baseline * 100.0
    return (baseline - modified) / baseline * 100.0


def scenario_key(config: Any) -> Dict[str, Any]:
    """Config fields that must agree for results to be comparable."""
    if not isinstance(config, dict):
        config = ScenarioConfigSchema().dump(config)
    return {
        key: value
        for key, value in config.items()
        if key not in ("protocols", "seeds", "output_dir")
    }


def compare_summaries(
    summaries: Mapping[str, Sequence[LifetimeSummary]],
    scenarios: Optional[Mapping[str, Any]] = None,
) -> ComparisonTable:
    """
    Tabulate per-protocol summaries.

    Raises:
        InvalidComparison: With fewer than two protocols, a protocol
            without runs, or scenarios that differ between protocols.
    """
    if len(summaries) < 2:
        raise InvalidComparison("A comparison needs at least two protocols")
    if scenarios:
        keys = {name: scenario_key(cfg) for name, cfg in scenarios.items()}
        reference_name = sorted(keys)[0]
        for name, key in keys.items():
            if key != keys[reference_name]:
                raise InvalidComparison(
                    f"Scenario of {name} differs from {reference_name}",
                    payload={"protocols": [reference_name, name]},
                )

    rows = []
    for protocol in sorted(summaries):
        runs = list(summaries[protocol])
        if not runs:
            raise InvalidComparison(f"No runs recorded for {protocol}")
        fnd = _median_iqr([s.fnd for s in runs])
        hnd = _median_iqr([s.hnd for s in runs])
        lnd = _median_iqr([s.lnd for s in runs])
        rows.append(
            ComparisonRow(
                protocol=protocol,
                runs=len(runs),
                fnd_median=fnd[0],
                fnd_iqr=fnd[1],
                hnd_median=hnd[0],
                hnd_iqr=hnd[1],
                lnd_median=lnd[0],
                lnd_iqr=lnd[1],
                total_energy_mean=_mean([s.total_energy for s in runs]),
                energy_per_delivered_bit_mean=_mean(
                    [s.energy_per_delivered_bit for s in runs]
                ),
                delivered_mean=_mean([s.total_delivered for s in runs]),
            )
        )

    table = ComparisonTable(rows=rows)
    if MODIFIED in summaries:
        modified = table.row(MODIFIED)
        for row in rows:
            if row.protocol == MODIFIED:
                continue
            gains = {
                metric: improvement(
                    getattr(modified, f"{metric}_median"),
                    getattr(row, f"{metric}_median"),
                    larger_is_better=True,
                )
                for metric in _LIFETIME_METRICS
            }
            gains.update(
                {
                    metric: improvement(
                        getattr(modified, f"{metric}_mean"),
                        getattr(row, f"{metric}_mean"),
                        larger_is_better=False,
                    )
                    for metric in _COST_METRICS
                }
            )
            table.improvements[row.protocol] = gains
    return table


def compare(
    results: Mapping[str, Sequence[SimulationResult]],
) -> ComparisonTable:
    """Summarize every run and tabulate the protocols side by side."""
    summaries = {
        ProtocolKind(kind).value: [lifetime_summary(r) for r in runs]
        for kind, runs in results.items()
    }
    scenarios = {
        ProtocolKind(kind).value: runs[0].config
        for kind, runs in results.items()
        if runs
    }
    for kind, runs in results.items():
        for run in runs[1:]:
            if scenario_key(run.config) != scenario_key(runs[0].config):
                raise InvalidComparison(
                    f"Runs of {ProtocolKind(kind).value} mix scenarios"
                )
    return compare_summaries(summaries, scenarios)


def median_energy_saving(
    modified: Sequence[LifetimeSummary], baseline: Sequence[LifetimeSummary]
) -> Optional[float]:
    """Median per-seed saving in energy per delivered bit, in percent."""
    savings = [
        improvement(
            m.energy_per_delivered_bit,
            b.energy_per_delivered_bit,
            larger_is_better=False,
        )
        for m, b in zip(modified, baseline)
    ]
    savings = [s for s in savings if s is not None]
    if not savings:
        return None
    return float(np.median(savings))


def node_count_milestones(
    node_count: int, results: Mapping[str, Sequence[SimulationResult]]
) -> List[NodeCountMilestones]:
    """
    Median milestones per protocol for one size of a node-count sweep.

    Unlike ``compare`` this needs no second protocol.
    """
    rows = []
    for kind in sorted(results):
        summaries = [lifetime_summary(r) for r in results[kind]]
        if not summaries:
            continue
        rows.append(
            NodeCountMilestones(
                node_count=node_count,
                protocol=ProtocolKind(kind).value,
                runs=len(summaries),
                fnd_median=_median_iqr([s.fnd for s in summaries])[0],
                hnd_median=_median_iqr([s.hnd for s in summaries])[0],
                lnd_median=_median_iqr([s.lnd for s in summaries])[0],
                energy_per_delivered_bit_mean=_mean(
                    [s.energy_per_delivered_bit for s in summaries]
                ),
                delivered_mean=_mean([s.total_delivered for s in summaries]),
            )
        )
    return rows
