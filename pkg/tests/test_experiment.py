"""
Full-size comparative runs on the default scenario.

These take minutes; run them with ``pytest -m slow``.

On the default field the modified join rule extends the half-death round
but not the first death, and its energy-per-bit and reliability figures
stay within one percent of plain LEACH. Those three orderings are kept as
strict expected failures so a model change that flips them is noticed.
"""

import numpy as np
import pytest

from wsnsim.cli.models import ScenarioConfig
from wsnsim.cli.services import run_sweep
from wsnsim.engine.services import run_simulation
from wsnsim.metrics.services import (
    cumulative_reliability,
    lifetime_summary,
    median_energy_saving,
)
from wsnsim.protocols.assignment import modified_join_violations

pytestmark = pytest.mark.slow


@pytest.fixture(scope="module")
def sweep():
    cfg = ScenarioConfig(protocols=("leach", "leach_modified", "mesh_flood"))
    return run_sweep(cfg, workers=4)


def _median(values):
    return float(np.median(values))


def _milestone(sweep, kind, name):
    return _median([getattr(lifetime_summary(r), name) for r in sweep[kind]])


def _reliability_at_leach_hnd(sweep):
    hnd = int(_milestone(sweep, "leach", "hnd"))
    return {
        kind: _median(
            [cumulative_reliability(r, r.n_initial, hnd) for r in runs]
        )
        for kind, runs in sweep.items()
    }


def test_modified_rule_outlives_leach_at_half_death(sweep):
    assert _milestone(sweep, "leach_modified", "hnd") > _milestone(
        sweep, "leach", "hnd"
    )


@pytest.mark.xfail(
    strict=True,
    reason="heads nearest the BS drain first: median FND 825.5 vs 858.5",
)
def test_modified_rule_delays_first_death(sweep):
    assert _milestone(sweep, "leach_modified", "fnd") > _milestone(
        sweep, "leach", "fnd"
    )


@pytest.mark.xfail(
    strict=True,
    reason="longer member links offset direct sends: saving is 0.54%",
)
def test_modified_rule_saves_energy_per_bit(sweep):
    saving = median_energy_saving(
        [lifetime_summary(r) for r in sweep["leach_modified"]],
        [lifetime_summary(r) for r in sweep["leach"]],
    )
    assert saving >= 5.0


def test_modified_rule_stays_within_a_percent_of_leach(sweep):
    saving = median_energy_saving(
        [lifetime_summary(r) for r in sweep["leach_modified"]],
        [lifetime_summary(r) for r in sweep["leach"]],
    )
    medians = _reliability_at_leach_hnd(sweep)
    assert saving > -1.0
    assert medians["leach_modified"] >= medians["leach"] - 0.01


def test_clustering_delivers_more_than_flooding(sweep):
    medians = _reliability_at_leach_hnd(sweep)
    assert medians["leach"] >= medians["mesh_flood"]


@pytest.mark.xfail(
    strict=True,
    reason="earlier deaths near the BS: reliability 0.954 vs 0.961",
)
def test_modified_rule_delivers_at_least_as_much_as_leach(sweep):
    medians = _reliability_at_leach_hnd(sweep)
    assert medians["leach_modified"] >= medians["leach"]


def test_no_join_violation_across_default_runs():
    cfg = ScenarioConfig(protocols=("leach_modified",))
    violations = []

    def audit(round_no, states, plan, field):
        violations.extend(
            modified_join_violations(
                plan.membership, plan.direct, plan.heads, field
            )
        )

    for seed in cfg.seeds:
        run_simulation(cfg, seed=seed, on_plan=audit)
    assert violations == []


def test_energy_conserved_across_default_runs(sweep):
    for runs in sweep.values():
        for result in runs:
            initial = sum(s.initial for s in result.final_states)
            final = sum(s.residual for s in result.final_states)
            charged = sum(r.energy_charged for r in result.reports)
            assert abs(charged - (initial - final)) / initial <= 1e-9
