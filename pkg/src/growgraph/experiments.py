"""The 32-configuration experiment sweep and its CSV report.

The configuration table is built in code (two network sizes, two community
counts, two triad probabilities, four inter-cluster probabilities; m=2
throughout) so it cannot drift; a custom table can be supplied as CSV.
Replicate seeds derive deterministically from (base seed, key, replicate)
via SHA-256, so a fixed base seed reproduces the sweep byte for byte.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .community import detect_communities
from .generate import GenParams, generate
from .metrics import (avg_clustering, avg_path_length, fit_alpha, modularity,
                      relative_density)

__all__ = ["TableRow", "ExperimentRow", "build_table", "load_table",
           "replicate_seed", "run_experiment", "rows_to_csv", "CSV_COLUMNS"]


@dataclass(frozen=True)
class TableRow:
    key: int
    n: int
    m: int
    c: int
    p_t: float
    p_c: float


@dataclass
class ExperimentRow:
    """Aggregated result for one table row (means over replicates)."""

    config: TableRow
    replicates: int
    apl: float | None = None
    cc: float | None = None
    alpha: float | None = None
    q: float | None = None
    rd: float | None = None
    q_truth: float | None = None
    rd_truth: float | None = None
    status: str = "ok"


def build_table() -> list[TableRow]:
    """The default 32-row sweep: n in {1000, 10000}, c in {10, 20},
    p_t in {0.5, 1.0}, p_c in {0.01, 0.1, 0.5, 1.0}, m=2."""
    rows = []
    key = 1
    for n in (1000, 10000):
        for c in (10, 20):
            for p_t in (0.5, 1.0):
                for p_c in (0.01, 0.1, 0.5, 1.0):
                    rows.append(TableRow(key=key, n=n, m=2, c=c, p_t=p_t, p_c=p_c))
                    key += 1
    return rows


def load_table(text: str) -> list[TableRow]:
    """Parse a custom table from CSV with columns key,n,m,c,p_t,p_c."""
    reader = csv.DictReader(_io.StringIO(text))
    rows = []
    for record in reader:
        rows.append(TableRow(
            key=int(record["key"]),
            n=int(record["n"]),
            m=int(record.get("m") or 2),
            c=int(record["c"]),
            p_t=float(record["p_t"]),
            p_c=float(record["p_c"]),
        ))
    if not rows:
        raise ValueError("table file contains no rows")
    return rows


def replicate_seed(base_seed: int, key: int, replicate: int) -> int:
    """Deterministic 63-bit seed for one replicate of one configuration."""
    blob = f"{base_seed}:{key}:{replicate}".encode()
    return int.from_bytes(hashlib.sha256(blob).digest()[:8], "big") & (2**63 - 1)


def _run_replicate(task: tuple[TableRow, int, int]) -> tuple[int, int, dict]:
    row, replicate, base_seed = task
    seed = replicate_seed(base_seed, row.key, replicate)
    params = GenParams(n=row.n, m=row.m, c=row.c, p_t=row.p_t, p_c=row.p_c,
                       seed=seed)
    g, _ = generate(params, keep_trace=False)
    truth = g.ground_truth_partition()
    detected, _ = detect_communities(g)
    values = {
        "apl": avg_path_length(g, "exact"),
        "cc": avg_clustering(g),
        "alpha": fit_alpha(g.degrees(), x_min=row.m),
        "q": modularity(g, detected),
        "rd": relative_density(g, detected),
        "q_truth": modularity(g, truth) if truth else None,
        "rd_truth": relative_density(g, truth) if truth else None,
    }
    return row.key, replicate, values


def run_experiment(table: list[TableRow], replicates: int = 5,
                   base_seed: int = 0, jobs: int = 1,
                   log=None) -> list[ExperimentRow]:
    """Run every configuration x replicate and aggregate means per key.

    A failing replicate is recorded in the row's status and excluded from
    the means; the sweep always continues.
    """
    if replicates < 1:
        raise ValueError(f"replicates must be >= 1, got {replicates}")
    tasks = [(row, rep, base_seed) for row in table for rep in range(replicates)]
    results: dict[tuple[int, int], dict | str] = {}

    def note(msg: str) -> None:
        if log is not None:
            log(msg)

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for (row, rep, _), outcome in zip(
                    tasks, pool.map(_run_replicate_safe, tasks)):
                results[(row.key, rep)] = outcome
                note(_describe(row, rep, outcome))
    else:
        for task in tasks:
            row, rep, _ = task
            outcome = _run_replicate_safe(task)
            results[(row.key, rep)] = outcome
            note(_describe(row, rep, outcome))

    rows = []
    for row in sorted(table, key=lambda r: r.key):
        values = []
        errors = []
        for rep in range(replicates):
            outcome = results[(row.key, rep)]
            if isinstance(outcome, str):
                errors.append(f"replicate {rep}: {outcome}")
            else:
                values.append(outcome)
        agg = ExperimentRow(config=row, replicates=len(values))
        for name in ("apl", "cc", "alpha", "q", "rd", "q_truth", "rd_truth"):
            present = [v[name] for v in values if v.get(name) is not None]
            if present:
                setattr(agg, name, sum(present) / len(present))
        agg.status = "ok" if not errors else "; ".join(errors)
        rows.append(agg)
    return rows


def _run_replicate_safe(task: tuple[TableRow, int, int]) -> dict | str:
    try:
        _, _, values = _run_replicate(task)
        return values
    except Exception as exc:  # recorded per-row, sweep continues
        return f"{type(exc).__name__}: {exc}"


def _describe(row: TableRow, rep: int, outcome: dict | str) -> str:
    if isinstance(outcome, str):
        return f"key={row.key} replicate={rep} FAILED ({outcome})"
    return (f"key={row.key} replicate={rep} n={row.n} c={row.c} "
            f"p_t={row.p_t} p_c={row.p_c} done")


CSV_COLUMNS = ["key", "n", "m", "c", "p_t", "p_c", "replicates",
               "apl", "cc", "alpha", "q", "rd", "q_truth", "rd_truth",
               "status"]


def rows_to_csv(rows: list[ExperimentRow]) -> str:
    """Stable CSV rendering: one row per key, means to 6 decimals."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)

    def fmt(x: float | None) -> str:
        return "" if x is None else f"{x:.6f}"

    for row in rows:
        cfg = row.config
        writer.writerow([cfg.key, cfg.n, cfg.m, cfg.c, cfg.p_t, cfg.p_c,
                         row.replicates, fmt(row.apl), fmt(row.cc),
                         fmt(row.alpha), fmt(row.q), fmt(row.rd),
                         fmt(row.q_truth), fmt(row.rd_truth), row.status])
    return buf.getvalue()
