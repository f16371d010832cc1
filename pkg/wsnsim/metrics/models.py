"""Metric summaries and the comparison table."""

from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass(frozen=True)
class LifetimeSummary:
    """
    Lifetime milestones and totals of one run.

    Milestones that never happened hold ``max_rounds + 1``;
    ``energy_per_delivered_bit`` is None when nothing was delivered.
    """

    fnd: int
    hnd: int
    lnd: int
    total_energy: float
    total_delivered: int
    energy_per_delivered_bit: Optional[float]
    rounds: int = 0
    redundant_transfers: int = 0


@dataclass(frozen=True)
class ComparisonRow:
    """Aggregate of every seed run for one protocol."""

    protocol: str
    runs: int
    fnd_median: float
    fnd_iqr: float
    hnd_median: float
    hnd_iqr: float
    lnd_median: float
    lnd_iqr: float
    total_energy_mean: float
    energy_per_delivered_bit_mean: Optional[float]
    delivered_mean: float


@dataclass(frozen=True)
class ComparisonTable:
    """
    One row per protocol plus the modified protocol's improvements.

    ``improvements`` maps each baseline to the percentage gain of
    ``leach_modified`` on every metric; positive is better.
    """

    rows: List[ComparisonRow]
    improvements: Dict[str, Dict[str, Optional[float]]] = field(
        default_factory=dict
    )

    def row(self, protocol: str) -> ComparisonRow:
        """Return the row of ``protocol``."""
        for candidate in self.rows:
            if candidate.protocol == protocol:
                return candidate
        raise KeyError(protocol)


@dataclass(frozen=True)
class NodeCountMilestones:
    """Median lifetime milestones of one protocol at one network size."""

    node_count: int
    protocol: str
    runs: int
    fnd_median: float
    hnd_median: float
    lnd_median: float
    energy_per_delivered_bit_mean: Optional[float]
    delivered_mean: float
