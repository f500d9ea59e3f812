"""Command-line interface: generate, analyze, detect, experiment, bench.

The GROWGRAPH_SEED environment variable supplies a default seed where no
flag is given; a flag always wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import __version__
from .community import compare_partitions, detect_communities
from .experiments import build_table, load_table, rows_to_csv, run_experiment
from .generate import GenParams, generate
from .graph import GROUND_TRUTH, Graph, Partition
from .io import (build_manifest, read_edge_list, read_partition,
                 write_dot, write_edge_list, write_graphml, write_partition)
from .metrics import DEFAULT_X_MIN, build_report, per_community_stats
from .sampling import RngStream

ENV_SEED = "GROWGRAPH_SEED"


def _env_seed() -> int | None:
    raw = os.environ.get(ENV_SEED)
    if raw is None or raw.strip() == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"error: {ENV_SEED} must be an integer, got {raw!r}")


def _probability(flag: str):
    def parse(raw: str) -> float:
        value = float(raw)
        if not 0.0 <= value <= 1.0:
            raise argparse.ArgumentTypeError(
                f"{flag} must lie in [0, 1], got {raw}")
        return value
    return parse


def _positive_int(flag: str):
    def parse(raw: str) -> int:
        value = int(raw)
        if value < 1:
            raise argparse.ArgumentTypeError(f"{flag} must be >= 1, got {raw}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growgraph",
        description="Generate growing networks with tunable communities and "
                    "analyze graphs (path length, clustering, power-law "
                    "exponent, modularity, relative density).")
    parser.add_argument("--version", action="version",
                        version=f"growgraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="grow one network and write it out")
    p.add_argument("--n", type=_positive_int("--n"), required=True,
                   help="target node count (must be >= 3*c)")
    p.add_argument("--m", type=_positive_int("--m"), default=2,
                   help="edges per new node (default 2)")
    p.add_argument("--c", type=_positive_int("--c"), default=1,
                   help="number of seed communities (default 1)")
    p.add_argument("--pt", type=_probability("--pt"), default=0.5,
                   help="triad formation probability (default 0.5)")
    p.add_argument("--pc", type=_probability("--pc"), default=0.01,
                   help="inter-cluster edge probability (default 0.01)")
    p.add_argument("--seed", type=int, default=None,
                   help=f"RNG seed (default: ${ENV_SEED} or OS entropy)")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--format", choices=["edgelist", "graphml", "dot", "all"],
                   default="edgelist",
                   help="extra export format beside the canonical edge list")

    p = sub.add_parser("analyze", help="compute the full metrics report")
    p.add_argument("--in", dest="infile", required=True,
                   help="edge-list file to analyze")
    p.add_argument("--labels", default=None,
                   help="ground-truth partition TSV (default: labels.tsv "
                        "next to the input, when present)")
    p.add_argument("--apl-mode", choices=["auto", "exact", "sampled"],
                   default="auto",
                   help="auto = exact up to 20000 nodes, sampled above")
    p.add_argument("--apl-sources", type=_positive_int("--apl-sources"),
                   default=1000, help="source count for sampled mode")
    p.add_argument("--xmin", type=_positive_int("--xmin"),
                   default=DEFAULT_X_MIN,
                   help="degree floor for the power-law fit (default 2)")
    p.add_argument("--top-k", type=_positive_int("--top-k"), default=10,
                   help="communities in the per-community breakdown")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for sampled path-length sources")
    p.add_argument("--out", default=None,
                   help="write the JSON report here instead of stdout")

    p = sub.add_parser("detect", help="detect communities, write partition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out", required=True, help="partition TSV output path")
    p.add_argument("--compare", default=None,
                   help="partition TSV to score against (prints NMI/ARI)")

    p = sub.add_parser(
        "experiment",
        help="run the 32-configuration sweep (or a custom table)",
        description="Each configuration is generated `--replicates` times "
                    "with seeds derived from (base seed, key, replicate) and "
                    "the metric means are written as CSV with columns: "
                    "key,n,m,c,p_t,p_c,replicates,apl,cc,alpha,q,rd,"
                    "q_truth,rd_truth,status. q/rd come from the detected "
                    "partition, q_truth/rd_truth from the generator labels.")
    p.add_argument("--table", default=None,
                   help="custom table CSV (key,n,m,c,p_t,p_c); default: "
                        "the built-in 32 configurations")
    p.add_argument("--replicates", type=_positive_int("--replicates"),
                   default=5)
    p.add_argument("--jobs", type=_positive_int("--jobs"), default=1,
                   help="parallel worker processes")
    p.add_argument("--base-seed", type=int, default=None,
                   help=f"base seed (default: ${ENV_SEED} or 0)")
    p.add_argument("--out-csv", required=True, help="CSV output path")
    p.add_argument("--quiet", action="store_true",
                   help="suppress the per-job log lines")

    p = sub.add_parser("bench", help="time network generation per size")
    p.add_argument("--sizes", required=True,
                   help="comma-separated node counts, e.g. 1000,10000")
    p.add_argument("--m", type=_positive_int("--m"), default=2)
    p.add_argument("--c", type=_positive_int("--c"), default=10)
    p.add_argument("--pt", type=_probability("--pt"), default=1.0)
    p.add_argument("--pc", type=_probability("--pc"), default=0.01)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--repeats", type=_positive_int("--repeats"), default=1,
                   help="generations per size; the median time is reported")
    p.add_argument("--out-csv", default=None,
                   help="write timings here instead of stdout")
    return parser


def _read_graph(path: str) -> Graph:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SystemExit(f"error: cannot read {path}: {exc}")
    return read_edge_list(text)


def _find_labels(infile: str, flag: str | None) -> Partition | None:
    path = Path(flag) if flag else Path(infile).parent / "labels.tsv"
    if not path.exists():
        if flag:
            raise SystemExit(f"error: labels file not found: {flag}")
        return None
    return read_partition(path.read_text(encoding="utf-8"), kind=GROUND_TRUTH)


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _env_seed()
    if seed is None:
        seed = RngStream().seed  # fresh entropy, recorded in every output
    try:
        params = GenParams(n=args.n, m=args.m, c=args.c, p_t=args.pt,
                           p_c=args.pc, seed=seed)
    except ValueError as exc:
        print(f"error: --n/--c: {exc}" if "3*c" in str(exc) else f"error: {exc}",
              file=sys.stderr)
        return 2
    g, _ = generate(params, keep_trace=False)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    files = {"edges": "edges.tsv", "labels": "labels.tsv",
             "manifest": "manifest.json"}
    (out / "edges.tsv").write_text(write_edge_list(g, params), encoding="utf-8")
    truth = g.ground_truth_partition()
    assert truth is not None
    (out / "labels.tsv").write_text(write_partition(truth), encoding="utf-8")
    if args.format in ("graphml", "all"):
        files["graphml"] = "graph.graphml"
        (out / "graph.graphml").write_text(write_graphml(g, truth),
                                           encoding="utf-8")
    if args.format in ("dot", "all"):
        files["dot"] = "graph.dot"
        (out / "graph.dot").write_text(write_dot(g, truth), encoding="utf-8")
    (out / "manifest.json").write_text(
        build_manifest(params, seed, g, files), encoding="utf-8")
    print(f"wrote {g.node_count} nodes / {g.edge_count} edges to {out} "
          f"(seed {seed})")
    return 0


def cmd_analyze(args) -> int:
    g = _read_graph(args.infile)
    truth = _find_labels(args.infile, args.labels)
    if truth is not None and len(truth) != g.node_count:
        raise SystemExit("error: labels file does not match the graph")
    if not g.is_connected():
        print("error: graph is disconnected; path-length metrics are "
              "undefined", file=sys.stderr)
        return 1
    detected, _ = detect_communities(g)
    report = build_report(
        g,
        partition=detected,
        x_min=args.xmin,
        apl_mode=args.apl_mode,
        rng=RngStream(args.seed),
    )
    doc = report.to_dict()
    doc["detected_groups"] = detected.group_count
    basis = truth if truth is not None else detected
    doc["per_community"] = [
        s.to_dict() for s in per_community_stats(g, basis, args.top_k,
                                                 x_min=args.xmin)]
    doc["per_community_basis"] = basis.kind
    if truth is not None:
        from .metrics import modularity, relative_density
        nmi, ari = compare_partitions(truth, detected)
        doc["ground_truth"] = {
            "groups": truth.group_count,
            "modularity": modularity(g, truth),
            "relative_density": relative_density(g, truth),
            "nmi_vs_detected": nmi,
            "ari_vs_detected": ari,
        }
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_detect(args) -> int:
    g = _read_graph(args.infile)
    if not g.is_connected():
        print("error: graph is disconnected; detection requires a connected "
              "graph", file=sys.stderr)
        return 1
    partition, dendrogram = detect_communities(g)
    Path(args.out).write_text(write_partition(partition), encoding="utf-8")
    line = f"groups={partition.group_count} q={dendrogram.best_q:.6f}"
    if args.compare:
        other = read_partition(Path(args.compare).read_text(encoding="utf-8"))
        nmi, ari = compare_partitions(other, partition)
        line += f" nmi={nmi:.6f} ari={ari:.6f}"
    print(line)
    return 0


def cmd_experiment(args) -> int:
    if args.table:
        table = load_table(Path(args.table).read_text(encoding="utf-8"))
    else:
        table = build_table()
    base_seed = args.base_seed
    if base_seed is None:
        base_seed = _env_seed() or 0
    log = None if args.quiet else (lambda msg: print(msg, file=sys.stderr))
    rows = run_experiment(table, replicates=args.replicates,
                          base_seed=base_seed, jobs=args.jobs, log=log)
    Path(args.out_csv).write_text(rows_to_csv(rows), encoding="utf-8")
    failed = [r.config.key for r in rows if r.status != "ok"]
    print(f"wrote {len(rows)} rows to {args.out_csv} (base seed {base_seed})"
          + (f"; failures in keys {failed}" if failed else ""))
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise SystemExit(f"error: --sizes must be comma-separated integers, "
                         f"got {args.sizes!r}")
    if not sizes:
        raise SystemExit("error: --sizes is empty")
    seed = args.seed if args.seed is not None else (_env_seed() or 0)
    lines = ["n,seconds,repeats"]
    for n in sizes:
        times = []
        for rep in range(args.repeats):
            params = GenParams(n=n, m=args.m, c=args.c, p_t=args.pt,
                               p_c=args.pc, seed=seed + rep)
            start = time.perf_counter()
            generate(params, keep_trace=False)
            times.append(time.perf_counter() - start)
        times.sort()
        median = times[len(times) // 2]
        lines.append(f"{n},{median:.4f},{args.repeats}")
        print(f"n={n}: {median:.4f}s (median of {args.repeats})",
              file=sys.stderr)
    text = "\n".join(lines) + "\n"
    if args.out_csv:
        Path(args.out_csv).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "generate": cmd_generate,
        "analyze": cmd_analyze,
        "detect": cmd_detect,
        "experiment": cmd_experiment,
        "bench": cmd_bench,
    }
    try:
        return handlers[args.command](args)
    except SystemExit:
        raise
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
