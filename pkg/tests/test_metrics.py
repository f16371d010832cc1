import random

import pytest

from tests.factories import ScenarioConfigFactory, make_states
from wsnsim.engine.models import RoundReport, SimulationResult
from wsnsim.error_handlers import InvalidComparison
from wsnsim.metrics.models import LifetimeSummary
from wsnsim.metrics.schemas import ComparisonTableSchema
from wsnsim.metrics.services import (
    compare,
    compare_summaries,
    cumulative_reliability,
    improvement,
    lifetime_summary,
    median_energy_saving,
    node_count_milestones,
    reliability_curve,
)


def make_result(alive_curve, n=5, delivered=None, energy=1e-3, **config):
    """Fabricate a run from its end-of-round alive counts."""
    cfg = ScenarioConfigFactory(**config)
    delivered = delivered if delivered is not None else alive_curve
    reports = []
    previous = n
    for round_no, (alive, sent) in enumerate(zip(alive_curve, delivered)):
        reports.append(
            RoundReport(
                round=round_no,
                energy_charged=energy,
                deaths=tuple(range(previous - alive)),
                delivered_sources=sent,
                heads=0,
                direct=alive,
                alive_start=previous,
                alive=alive,
                total_residual=0.0,
            )
        )
        previous = alive
    return SimulationResult(
        config=cfg,
        kind="leach",
        seed=0,
        reports=tuple(reports),
        final_states=tuple(make_states(n)),
    )


def summary(fnd, hnd, lnd, energy, per_bit, delivered=100):
    return LifetimeSummary(
        fnd=fnd,
        hnd=hnd,
        lnd=lnd,
        total_energy=energy,
        total_delivered=delivered,
        energy_per_delivered_bit=per_bit,
    )


class TestLifetimeSummary:
    def test_milestones_from_alive_curve(self):
        result = make_result([5, 5, 4, 4, 0], max_rounds=10)
        figures = lifetime_summary(result)
        assert (figures.fnd, figures.hnd, figures.lnd) == (2, 4, 4)
        assert figures.rounds == 5
        assert figures.total_energy == pytest.approx(5e-3)
        assert figures.total_delivered == 18
        assert figures.energy_per_delivered_bit == pytest.approx(
            5e-3 / (18 * 4000)
        )

    def test_sentinel_when_nobody_dies(self):
        result = make_result([5] * 10, max_rounds=10)
        figures = lifetime_summary(result)
        assert figures.fnd == figures.hnd == figures.lnd == 11

    def test_half_death_uses_ceiling(self):
        result = make_result([5, 3, 2, 0], max_rounds=10)
        figures = lifetime_summary(result)
        assert (figures.fnd, figures.hnd, figures.lnd) == (1, 1, 3)

    def test_nothing_delivered(self):
        result = make_result([0], delivered=[0], max_rounds=10)
        figures = lifetime_summary(result)
        assert figures.energy_per_delivered_bit is None
        assert figures.fnd <= figures.hnd <= figures.lnd


class TestReliability:
    def test_curve(self):
        result = make_result([5, 4, 0], delivered=[5, 3, 0])
        curve = reliability_curve(result, 5)
        assert curve == [1.0, 0.6, 0.0]
        alive = result.alive_curve()
        assert all(v <= a / 5 for v, a in zip(curve, alive))

    def test_cumulative(self):
        result = make_result([5, 4, 0], delivered=[5, 3, 0])
        assert cumulative_reliability(result, 5, 0) == 1.0
        assert cumulative_reliability(result, 5, 1) == pytest.approx(0.8)
        assert cumulative_reliability(result, 5, 4) == pytest.approx(8 / 25)
        assert cumulative_reliability(result, 0, 1) == 0.0


class TestCompare:
    def test_self_comparison_shows_no_improvement(self):
        result = make_result([5, 5, 4, 4, 0], max_rounds=10)
        table = compare({"leach": [result], "leach_modified": [result]})
        assert len(table.rows) == 2
        assert set(table.improvements["leach"].values()) == {0.0}

    def test_improvement_formula(self):
        assert improvement(120, 100, larger_is_better=True) == 20.0
        assert improvement(84, 100, larger_is_better=False) == 16.0
        assert improvement(1, 0, larger_is_better=True) is None
        assert improvement(None, 1, larger_is_better=False) is None

    def test_fabricated_summaries(self):
        table = compare_summaries(
            {
                "leach": [summary(100, 200, 300, 50.0, 2e-9)],
                "leach_modified": [summary(130, 220, 300, 45.0, 1.5e-9)],
            }
        )
        gains = table.improvements["leach"]
        assert gains["fnd"] == pytest.approx(30.0)
        assert gains["hnd"] == pytest.approx(10.0)
        assert gains["lnd"] == pytest.approx(0.0)
        assert gains["total_energy"] == pytest.approx(10.0)
        assert gains["energy_per_delivered_bit"] == pytest.approx(25.0)
        assert "leach_modified" not in table.improvements

    def test_median_and_iqr(self):
        runs = [summary(f, f, f, 1.0, 1e-9) for f in (10, 20, 30, 40, 50)]
        table = compare_summaries({"direct": runs, "leach": runs})
        row = table.row("direct")
        assert row.fnd_median == 30.0
        assert row.fnd_iqr == 20.0
        assert row.runs == 5

    def test_seed_order_does_not_matter(self):
        runs = [
            summary(10 + i, 20 + i, 30 + i, 0.1 * i + 0.3, 1e-9 * (i + 1))
            for i in range(9)
        ]
        shuffled = list(runs)
        random.Random(4).shuffle(shuffled)
        first = compare_summaries({"direct": runs, "leach_modified": runs})
        second = compare_summaries(
            {"direct": shuffled, "leach_modified": shuffled}
        )
        assert first == second

    def test_needs_two_protocols(self):
        with pytest.raises(InvalidComparison):
            compare_summaries({"leach": [summary(1, 2, 3, 1.0, 1e-9)]})

    def test_mismatched_scenarios_are_rejected(self):
        small = make_result([5, 0], nodes=10)
        large = make_result([5, 0], nodes=30)
        with pytest.raises(InvalidComparison):
            compare({"leach": [small], "direct": [large]})

    def test_table_schema_round_trip(self):
        table = compare_summaries(
            {
                "leach": [summary(100, 200, 300, 50.0, None, delivered=0)],
                "leach_modified": [summary(130, 220, 300, 45.0, 1.5e-9)],
            }
        )
        dumped = ComparisonTableSchema().dump(table)
        assert dumped["rows"][0]["energy_per_delivered_bit_mean"] is None
        assert ComparisonTableSchema().load(dumped) == table


def test_median_energy_saving():
    modified = [summary(1, 1, 1, 1.0, v) for v in (0.8, 0.9, 0.5)]
    baseline = [summary(1, 1, 1, 1.0, 1.0) for _ in range(3)]
    assert median_energy_saving(modified, baseline) == pytest.approx(20.0)
    assert median_energy_saving([], []) is None


def test_node_count_milestones_need_only_one_protocol():
    runs = [make_result([5, 5, 4, 4, 0]), make_result([5, 4, 2, 0])]
    (row,) = node_count_milestones(5, {"leach": runs})
    assert row.node_count == 5
    assert row.protocol == "leach"
    assert row.runs == 2
    assert (row.fnd_median, row.hnd_median, row.lnd_median) == (
        1.5,
        3.0,
        3.5,
    )
    assert row.delivered_mean == pytest.approx(14.5)
    assert node_count_milestones(5, {"leach": []}) == []
