"""Parameter-grid sweeps persisted as append-only JSON lines."""

import asyncio
import logging
import time
from collections import Counter, defaultdict
from collections.abc import Awaitable
from concurrent.futures import Executor, ProcessPoolExecutor
from pathlib import Path
from typing import Any

from dotenv import dotenv_values
from pydantic import ValidationError

from src.algebra.combinatorics import binomial
from src.algebra.fields import field_from_descriptor
from src.config.settings import Settings, parse_primes
from src.errors import ConfigError, WaringError
from src.models.specs import SpecializedSpec, SystemSpec
from src.models.sweep import IntRange, Mode, RunConfig, SweepCell, SweepRecord
from src.services.interpolation import random_member, sample_config, specialized_dim
from src.services.probes.secant import veronese_secant_dim
from src.services.probes.singularity import singularity_report

logger = logging.getLogger(__name__)

CONFIG_KEYS = ("COMMAND", "D", "N", "L", "H", "K", "TRIALS", "PRIMES", "SEED", "MODE", "OUTPUT", "WORKERS")


def load_run_config(path: str | Path, settings: Settings | None = None) -> RunConfig:
    """Parse a flat ``KEY=value`` sweep file into a validated RunConfig.

    Keys missing from the file (TRIALS, PRIMES, SEED, WORKERS) fall back to
    ``settings``, then to the built-in defaults.

    Raises:
        ConfigError: for unreadable files, unknown keys or invalid values
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Sweep config {path} does not exist", operation="load_run_config")
    values = {key.upper(): value for key, value in dotenv_values(path).items() if value is not None}
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"Unknown sweep keys: {sorted(unknown)}", operation="load_run_config")
    defaults = settings or Settings()
    try:
        data: dict[str, Any] = {
            "command": values.get("COMMAND", "dims"),
            "d": IntRange.parse(values["D"]),
            "n": IntRange.parse(values["N"]),
            "trials": int(values.get("TRIALS") or defaults.trials),
            "primes": parse_primes(values["PRIMES"]) if values.get("PRIMES") else defaults.primes,
            "seed": int(values.get("SEED") or defaults.seed),
            "mode": values.get("MODE", "prime"),
            "output": Path(values["OUTPUT"]),
            "workers": int(values.get("WORKERS") or defaults.workers),
        }
        for key in ("L", "H", "K"):
            if values.get(key):
                data[key.lower()] = IntRange.parse(values[key])
        return RunConfig(**data)
    except KeyError as e:
        raise ConfigError(f"Missing sweep key {e.args[0]}", operation="load_run_config") from e
    except (ValueError, ValidationError) as e:
        raise ConfigError(f"Invalid sweep config {path}: {e}", operation="load_run_config") from e


def l_scan_range(d: int, n: int) -> range:
    """Every l >= 0 whose expected dimension is at least -(n+1)."""
    return range(0, (binomial(n + d, n) + n) // (n + 1) + 1)


def k_scan_range(d: int, n: int) -> range:
    """Every k >= 0 with (k+1)(n+1) <= binomial(n+d,n)."""
    return range(0, binomial(n + d, n) // (n + 1))


def _fields(config: RunConfig) -> list[str]:
    descriptors = []
    if config.mode is not Mode.RATIONAL:
        descriptors.extend(str(p) for p in config.primes)
    if config.mode is not Mode.PRIME:
        descriptors.append("rational")
    return descriptors


def expand_cells(config: RunConfig) -> list[SweepCell]:
    """The grid in a fixed order: command cells by (d, n, l or k, h, field)."""
    cells = []
    for d in config.d.values():
        for n in config.n.values():
            if config.command == "secant":
                ks = config.k.values() if config.k else k_scan_range(d, n)
                points = [{"k": k} for k in ks]
            else:
                ls = config.l.values() if config.l else l_scan_range(d, n)
                hs = config.h.values() if config.h else range(0, 1)
                points = [{"l": l, "h": h} for l in ls for h in hs if h <= l]  # noqa: E741
            for point in points:
                for field in _fields(config):
                    cells.append(
                        SweepCell(
                            command=config.command,
                            d=d,
                            n=n,
                            field=field,
                            seed=config.seed,
                            trials=config.trials,
                            **point,
                        )
                    )
    return cells


def _flat(values: list[Any]) -> str:
    return ",".join(str(v) for v in values)


def _outcome(cell: SweepCell) -> dict[str, Any]:
    field = field_from_descriptor(cell.field)
    if cell.command == "dims":
        spec = SpecializedSpec.of(cell.d, cell.n, cell.l or 0, cell.h or 0)
        report = specialized_dim(spec, field, cell.trials, cell.seed)
        return {
            "expected": report.expected,
            "actual": report.actual,
            "predicted": report.predicted,
            "prediction_tag": report.prediction_tag,
            "agreement": report.agreement,
            "ranks": _flat(report.ranks),
            "arbiter_used": report.arbiter_used,
        }
    if cell.command == "secant":
        secant = veronese_secant_dim(cell.d, cell.n, cell.k or 0, field, cell.trials, cell.seed)
        return {
            "measured_dim": secant.measured_dim,
            "expected_dim": secant.expected_dim,
            "defect": secant.defect,
            "interpolation_dim": secant.interpolation_dim,
            "duality_holds": secant.duality_holds,
        }
    spec = SystemSpec(d=cell.d, n=cell.n, l=cell.l or 0)
    config = sample_config(spec, field, cell.seed)
    member = random_member(spec, config, cell.seed)
    singularity = singularity_report(member, config.points, seed=cell.seed)
    return {
        "locus": singularity.locus.value,
        "all_nodes": singularity.all_nodes,
        "hessian_ranks": _flat(singularity.hessian_ranks),
    }


def _record(cell: SweepCell, outcome: dict[str, Any], wall_ms: float) -> SweepRecord:
    return SweepRecord(
        command=cell.command,
        d=cell.d,
        n=cell.n,
        l=cell.l,
        h=cell.h,
        k=cell.k,
        field=cell.field,
        seed=cell.seed,
        outcome=outcome,
        wall_ms=wall_ms,
    )


def run_cell(cell: SweepCell) -> SweepRecord:
    """Compute one cell; failures become an ``error`` outcome instead of raising."""
    start = time.perf_counter()
    try:
        outcome = _outcome(cell)
    except (WaringError, ValidationError, ValueError, ZeroDivisionError) as e:
        logger.error(f"Sweep cell {cell.key} failed: {e}")
        outcome = {"error": f"{type(e).__name__}: {e}"}
    return _record(cell, outcome, (time.perf_counter() - start) * 1000)


def read_records(path: Path) -> list[SweepRecord]:
    """Every record in a JSON-lines file; a missing file has none."""
    if not path.exists():
        return []
    records = []
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                records.append(SweepRecord.model_validate_json(line))
            except ValidationError as e:
                logger.warning(f"Skipping malformed line {number} of {path}: {e}")
    return records


async def _guarded(cell: SweepCell, future: Awaitable[SweepRecord]) -> SweepRecord:
    try:
        return await future
    except Exception as e:
        logger.error(f"Worker failed on {cell.key}: {e}")
        return _record(cell, {"error": f"{type(e).__name__}: {e}"}, 0.0)


async def run_sweep(config: RunConfig, executor: Executor | None = None) -> dict[str, int]:
    """Run every missing cell of the grid, appending each record as it completes.

    Records are written in completion order and flushed one at a time.

    Raises:
        OSError: if the output file cannot be written
    """
    output = config.output
    output.parent.mkdir(parents=True, exist_ok=True)
    existing = {record.key for record in read_records(output)}
    cells = [cell for cell in expand_cells(config) if cell.key not in existing]
    skipped = len(expand_cells(config)) - len(cells)
    logger.info(f"Sweep {config.command}: {len(cells)} cells to run, {skipped} already recorded")
    errors = 0
    with open(output, "a", encoding="utf-8") as sink:
        own_executor = executor is None and config.workers > 1
        pool = ProcessPoolExecutor(max_workers=config.workers) if own_executor else executor
        loop = asyncio.get_running_loop()
        try:
            tasks = [_guarded(cell, loop.run_in_executor(pool, run_cell, cell)) for cell in cells]
            for finished in asyncio.as_completed(tasks):
                record = await finished
                if "error" in record.outcome:
                    errors += 1
                sink.write(record.model_dump_json() + "\n")
                sink.flush()
        finally:
            if own_executor and pool is not None:
                pool.shutdown(cancel_futures=True)
    return {"new": len(cells), "skipped": skipped, "errors": errors}


def summarize(records: list[SweepRecord]) -> dict[str, dict[str, int]]:
    """Per-command counts of records, agreements, disagreements and errors."""
    summary: dict[str, Counter[str]] = defaultdict(Counter)
    for record in records:
        counts = summary[record.command]
        counts["records"] += 1
        outcome = record.outcome
        if "error" in outcome:
            counts["errors"] += 1
            continue
        verdict = outcome.get("agreement", outcome.get("duality_holds"))
        if verdict is True:
            counts["agreements"] += 1
        elif verdict is False:
            counts["disagreements"] += 1
    return {
        command: {key: counts[key] for key in ("records", "agreements", "disagreements", "errors")}
        for command, counts in sorted(summary.items())
    }

