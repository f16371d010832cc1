"""Parse scenarios, run seed sweeps and write the result files."""

import csv
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
)

import click
import numpy as np
from marshmallow import ValidationError

from wsnsim.cli.models import ScenarioConfig
from wsnsim.cli.schemas import ScenarioConfigSchema
from wsnsim.engine.models import SimulationResult
from wsnsim.engine.services import run_simulation
from wsnsim.error_handlers import InvalidConfig, OutputError
from wsnsim.extensions import logger
from wsnsim.metrics.models import (
    ComparisonTable,
    LifetimeSummary,
    NodeCountMilestones,
)
from wsnsim.metrics.schemas import (
    COMPARISON_CSV_COLUMNS,
    NODE_SWEEP_CSV_COLUMNS,
    ComparisonDocumentSchema,
    ComparisonRowSchema,
    LifetimeSummarySchema,
    NodeCountMilestonesSchema,
    NodeSweepDocumentSchema,
    ProtocolSummaryDocumentSchema,
)
from wsnsim.metrics.services import (
    compare,
    compare_summaries,
    cumulative_reliability,
    lifetime_summary,
    median_energy_saving,
    node_count_milestones,
    reliability_curve,
)
from wsnsim.protocols.enums import ProtocolKind
from wsnsim.utils.common_schema import RESULT_SCHEMA_VERSION

ROUND_CSV_HEADER = [
    "round",
    "alive",
    "heads",
    "direct",
    "delivered",
    "energy_charged_j",
    "total_residual_j",
]
# Energy saving reported for the modified rule, used as a reference line.
REFERENCE_SAVING_PERCENT = 16.0


def _flatten_errors(
    messages: Any, prefix: str = ""
) -> List[Tuple[str, str]]:
    """Turn nested marshmallow messages into (dotted key, message) pairs."""
    if isinstance(messages, dict):
        flat = []
        for key in sorted(messages, key=str):
            if key == "_schema":
                path = prefix
            else:
                path = f"{prefix}.{key}" if prefix else str(key)
            flat.extend(_flatten_errors(messages[key], path))
        return flat
    if isinstance(messages, (list, tuple)):
        flat = []
        for item in messages:
            flat.extend(_flatten_errors(item, prefix))
        return flat
    return [(prefix or "config", str(messages))]


def _coerce(raw: str) -> Any:
    """Read a flag value as JSON when possible, else as a string."""
    try:
        return json.loads(raw)
    except ValueError:
        return raw


def apply_overrides(
    document: Dict[str, Any], overrides: Iterable[str]
) -> Dict[str, Any]:
    """
    Apply ``key.path=value`` overrides to a config document.

    Raises:
        InvalidConfig: If an override is not of the form key=value or
            descends into a non-object value.
    """
    document = json.loads(json.dumps(document))
    for item in overrides:
        if "=" not in item:
            raise InvalidConfig(
                f"Override must look like key=value, got {item!r}",
                key=item,
            )
        path, raw = item.split("=", 1)
        keys = [part for part in path.strip().split(".") if part]
        if not keys:
            raise InvalidConfig(f"Override has an empty key: {item!r}")
        target = document
        for part in keys[:-1]:
            target = target.setdefault(part, {})
            if not isinstance(target, dict):
                raise InvalidConfig(
                    f"{path} descends into a non-object value", key=path
                )
        target[keys[-1]] = _coerce(raw)
    return document


def parse_seeds(spec: str) -> List[int]:
    """Parse ``a..b`` (inclusive) or a comma-separated seed list."""
    try:
        if ".." in spec:
            start, end = (int(part) for part in spec.split("..", 1))
            if end < start:
                raise ValueError
            return list(range(start, end + 1))
        return [int(part) for part in spec.split(",") if part.strip()]
    except ValueError:
        raise InvalidConfig(
            f"Seeds must look like a..b or a,b,c; got {spec!r}", key="seeds"
        )


def load_config_document(path: Optional[str]) -> Dict[str, Any]:
    """Read a JSON config file; no path or an empty file means {}."""
    if path is None:
        return {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise InvalidConfig(
            f"Cannot read config file {path}: {err.strerror}", key="config"
        )
    if not text.strip():
        return {}
    try:
        document = json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidConfig(
            f"Config file {path} is not valid JSON: {err.msg} "
            f"(line {err.lineno})",
            key="config",
        )
    if not isinstance(document, dict):
        raise InvalidConfig("Config file must hold a JSON object", "config")
    return document


def parse_config(
    path: Optional[str] = None,
    overrides: Iterable[str] = (),
    document: Optional[Dict[str, Any]] = None,
) -> ScenarioConfig:
    """
    Build a validated ScenarioConfig from a file and flag overrides.

    Flags win over the file. Errors name every offending dotted key.

    Raises:
        InvalidConfig: On unreadable input, unknown keys or bad values.
    """
    if document is None:
        document = load_config_document(path)
    document = apply_overrides(document, overrides)
    try:
        return ScenarioConfigSchema().load(document)
    except ValidationError as err:
        problems = _flatten_errors(err.messages)
        message = "; ".join(f"{key}: {text}" for key, text in problems)
        raise InvalidConfig(
            f"Invalid configuration: {message}",
            key=problems[0][0] if problems else None,
            payload={"errors": {key: text for key, text in problems}},
        )


def serialize_config(cfg: ScenarioConfig) -> Dict[str, Any]:
    """Dump ``cfg`` to a JSON-ready document that parses back equal."""
    return ScenarioConfigSchema().dump(cfg)


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def write_round_csv(result: SimulationResult, path: Path) -> None:
    """Write one row per simulated round."""
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(ROUND_CSV_HEADER)
        for report in result.reports:
            writer.writerow(
                [
                    report.round,
                    report.alive,
                    report.heads,
                    report.direct,
                    report.delivered_sources,
                    _fmt(report.energy_charged),
                    _fmt(report.total_residual),
                ]
            )


def _write_json(path: Path, document: Dict[str, Any]) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(document, handle, indent=2, sort_keys=True)
        handle.write("\n")


def write_comparison_csv(table: ComparisonTable, handle) -> None:
    """Write the comparison rows as CSV to an open text handle."""
    writer = csv.DictWriter(
        handle, fieldnames=COMPARISON_CSV_COLUMNS, lineterminator="\n"
    )
    writer.writeheader()
    for row in ComparisonRowSchema(many=True).dump(table.rows):
        writer.writerow(
            {
                key: _fmt(value) if isinstance(value, float) else value
                for key, value in row.items()
            }
        )


def comparison_document(table: ComparisonTable) -> Dict[str, Any]:
    """Wrap the comparison table in the standard envelope."""
    return ComparisonDocumentSchema().dump(
        {
            "status": "success",
            "message": f"Comparison of {len(table.rows)} protocols.",
            "data": table,
        }
    )


def _simulate_job(job: Tuple[ScenarioConfig, str, int]) -> SimulationResult:
    cfg, kind, seed = job
    return run_simulation(cfg, kind, seed)


def run_sweep(
    cfg: ScenarioConfig, workers: int = 1
) -> Dict[str, List[SimulationResult]]:
    """
    Run every (protocol, seed) pair of ``cfg``.

    Runs are independent; with more than one worker they execute on a
    process pool. Results come back in (protocol, seed) order whatever
    the worker count.
    """
    jobs = [(cfg, kind, seed) for kind in cfg.protocols for seed in cfg.seeds]
    logger.info("Running %d simulations on %d worker(s)", len(jobs), workers)
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_simulate_job, jobs))
    else:
        outcomes = [_simulate_job(job) for job in jobs]

    results: Dict[str, List[SimulationResult]] = {
        kind: [] for kind in cfg.protocols
    }
    for result in outcomes:
        results[result.kind].append(result)
    return results


def _ensure_directory(path: Path) -> None:
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as err:
        raise OutputError(
            f"Cannot create output directory {path}: {err.strerror}"
        )
    if not os.access(path, os.W_OK):
        raise OutputError(f"Output directory {path} is not writable")


def _prepare_output(out_dir: Path) -> Path:
    _ensure_directory(out_dir)
    rounds_dir = out_dir / "rounds"
    _ensure_directory(rounds_dir)
    _ensure_directory(out_dir / "summaries")
    return rounds_dir


def write_results(
    cfg: ScenarioConfig,
    results: Mapping[str, List[SimulationResult]],
    table: ComparisonTable,
) -> Path:
    """
    Write round CSVs, per-protocol summaries and the comparison table.

    Raises:
        OutputError: If any file cannot be written.
    """
    out_dir = Path(cfg.output_dir)
    rounds_dir = _prepare_output(out_dir)
    scenario = serialize_config(cfg)
    try:
        for kind in cfg.protocols:
            runs = []
            for result in results[kind]:
                write_round_csv(
                    result, rounds_dir / f"{kind}_seed{result.seed:03d}.csv"
                )
                curve = reliability_curve(result, result.n_initial)
                runs.append(
                    {
                        "seed": result.seed,
                        "summary": lifetime_summary(result),
                        "final_reliability": curve[-1] if curve else 0.0,
                    }
                )
            document = ProtocolSummaryDocumentSchema().dump(
                {
                    "status": "success",
                    "message": f"{len(runs)} runs of {kind}.",
                    "data": {
                        "protocol": kind,
                        "scenario": scenario,
                        "runs": runs,
                    },
                }
            )
            _write_json(out_dir / "summaries" / f"{kind}.json", document)
        with open(
            out_dir / "comparison.csv", "w", newline="", encoding="utf-8"
        ) as handle:
            write_comparison_csv(table, handle)
        _write_json(out_dir / "scenario.json", scenario)
    except OSError as err:
        raise OutputError(f"Cannot write results to {out_dir}: {err}")
    logger.info("Results written to %s", out_dir)
    return out_dir


def load_summaries(
    in_dir: str,
) -> Tuple[Dict[str, List[LifetimeSummary]], Dict[str, Dict[str, Any]]]:
    """
    Read the per-protocol summary documents of a previous run.

    Raises:
        OutputError: If the directory holds no readable summaries.
    """
    summary_dir = Path(in_dir) / "summaries"
    paths = sorted(summary_dir.glob("*.json"))
    if not paths:
        raise OutputError(f"No summary files found under {summary_dir}")
    summaries: Dict[str, List[LifetimeSummary]] = {}
    scenarios: Dict[str, Dict[str, Any]] = {}
    schema = LifetimeSummarySchema()
    for path in paths:
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
            version = document.get("schema_version")
            if version != RESULT_SCHEMA_VERSION:
                raise OutputError(
                    f"Summary {path} has format version {version}, "
                    f"expected {RESULT_SCHEMA_VERSION}"
                )
            data = document["data"]
            protocol = data["protocol"]
            summaries[protocol] = [
                schema.load(run["summary"]) for run in data["runs"]
            ]
            scenarios[protocol] = data["scenario"]
        except (
            OSError,
            ValueError,
            KeyError,
            TypeError,
            AttributeError,
        ) as err:
            raise OutputError(f"Cannot read summary {path}: {err}")
    return summaries, scenarios


def compare_directory(in_dir: str) -> ComparisonTable:
    """Rebuild the comparison table from a previous run's summaries."""
    summaries, scenarios = load_summaries(in_dir)
    return compare_summaries(summaries, scenarios)


def _fmt_cell(value: Optional[float], pattern: str = "{:.1f}") -> str:
    return "n/a" if value is None else pattern.format(value)


def format_report(
    cfg: ScenarioConfig,
    results: Mapping[str, List[SimulationResult]],
    table: ComparisonTable,
) -> str:
    """Render the one-screen experiment summary."""
    lines = [
        f"{cfg.node_count} nodes, {len(cfg.seeds)} seeds, "
        f"p={cfg.leach.p}, max_rounds={cfg.max_rounds}",
        "",
        f"{'protocol':<16}{'FND':>9}{'HND':>9}{'LND':>9}"
        f"{'energy J':>11}{'J/bit':>12}",
    ]
    for row in table.rows:
        lines.append(
            f"{row.protocol:<16}{row.fnd_median:>9.1f}{row.hnd_median:>9.1f}"
            f"{row.lnd_median:>9.1f}{row.total_energy_mean:>11.3f}"
            f"{_fmt_cell(row.energy_per_delivered_bit_mean, '{:.3e}'):>12}"
        )

    modified = ProtocolKind.LEACH_MODIFIED.value
    baseline = ProtocolKind.LEACH.value
    if table.improvements:
        lines.append("")
        lines.append(f"{modified} vs baselines (% improvement):")
        for name, gains in sorted(table.improvements.items()):
            lines.append(
                f"  {name:<14} FND {_fmt_cell(gains['fnd'])}  "
                f"HND {_fmt_cell(gains['hnd'])}  "
                f"J/bit {_fmt_cell(gains['energy_per_delivered_bit'])}"
            )
    if modified in results and baseline in results:
        saving = median_energy_saving(
            [lifetime_summary(r) for r in results[modified]],
            [lifetime_summary(r) for r in results[baseline]],
        )
        lines.append(
            f"Energy per delivered bit saved vs {baseline}: "
            f"{_fmt_cell(saving)}% (reference {REFERENCE_SAVING_PERCENT}%)"
        )
        hnd = int(table.row(baseline).hnd_median)
        reliability = {
            kind: float(
                np.median(
                    [cumulative_reliability(r, r.n_initial, hnd) for r in runs]
                )
            )
            for kind, runs in results.items()
        }
        lines.append(
            f"Cumulative reliability at round {hnd}: "
            + ", ".join(
                f"{kind} {value:.3f}"
                for kind, value in reliability.items()
            )
        )
    return "\n".join(lines)


def write_node_sweep_csv(rows: Sequence[NodeCountMilestones], handle) -> None:
    """Write node-count milestone rows as CSV to an open text handle."""
    writer = csv.DictWriter(
        handle, fieldnames=NODE_SWEEP_CSV_COLUMNS, lineterminator="\n"
    )
    writer.writeheader()
    for row in NodeCountMilestonesSchema(many=True).dump(rows):
        writer.writerow(
            {
                key: _fmt(value) if isinstance(value, float) else value
                for key, value in row.items()
            }
        )


def format_node_sweep(rows: Sequence[NodeCountMilestones]) -> str:
    """Render the lifetime milestones of every swept node count."""
    lines = [
        f"{'nodes':>7}  {'protocol':<16}{'FND':>9}{'HND':>9}{'LND':>9}",
    ]
    for row in rows:
        lines.append(
            f"{row.node_count:>7}  {row.protocol:<16}"
            f"{row.fnd_median:>9.1f}{row.hnd_median:>9.1f}"
            f"{row.lnd_median:>9.1f}"
        )
    return "\n".join(lines)


def run_node_sweep(cfg: ScenarioConfig, workers: int = 1) -> int:
    """
    Repeat the experiment once per node count of ``cfg.node_sweep``.

    Each count writes the usual result files under ``nodes_<NNNN>/``.
    The median milestones of every count and protocol are collected in
    ``node_sweep.csv`` and ``node_sweep.json``.

    Raises:
        OutputError: If the output directory is not writable.
    """
    out_dir = Path(cfg.output_dir)
    _ensure_directory(out_dir)
    rows: List[NodeCountMilestones] = []
    for count in cfg.node_sweep:
        sized = replace(
            cfg,
            nodes=count,
            node_sweep=(),
            output_dir=str(out_dir / f"nodes_{count:04d}"),
        )
        logger.info("Node-count sweep: %d nodes", count)
        results = _experiment(sized, workers)
        rows.extend(node_count_milestones(count, results))
        click.echo("")
    document = NodeSweepDocumentSchema().dump(
        {
            "status": "success",
            "message": f"Lifetime milestones for {len(cfg.node_sweep)} "
            "node counts.",
            "data": {"scenario": serialize_config(cfg), "rows": rows},
        }
    )
    try:
        with open(
            out_dir / "node_sweep.csv", "w", newline="", encoding="utf-8"
        ) as handle:
            write_node_sweep_csv(rows, handle)
        _write_json(out_dir / "node_sweep.json", document)
    except OSError as err:
        raise OutputError(f"Cannot write results to {out_dir}: {err}")
    click.echo(format_node_sweep(rows))
    return 0


def _experiment(
    cfg: ScenarioConfig, workers: int
) -> Dict[str, List[SimulationResult]]:
    _prepare_output(Path(cfg.output_dir))
    results = run_sweep(cfg, workers)
    if len(results) > 1:
        table = compare(results)
    else:
        logger.warning("Only one protocol simulated; comparison is empty")
        table = ComparisonTable(rows=[])
    write_results(cfg, results, table)
    click.echo(format_report(cfg, results, table))
    return results


def run_experiment(cfg: ScenarioConfig, workers: int = 1) -> int:
    """
    Run the whole sweep, write every result file and print the summary.

    A scenario with a node-count sweep runs once per count. Returns the
    process exit status.

    Raises:
        OutputError: If the output directory is not writable.
    """
    if cfg.node_sweep:
        return run_node_sweep(cfg, workers)
    _experiment(cfg, workers)
    return 0
