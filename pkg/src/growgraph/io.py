"""Graph, partition and report serialization.

The tab-separated edge list is the canonical format (round-trip safe,
byte-identical for identical graphs); GraphML and DOT are export-only for
external tooling. All documents are UTF-8 with LF line endings.
"""

from __future__ import annotations

import json
import warnings

from .graph import DETECTED, Graph, Partition

__all__ = [
    "EdgeListError",
    "CompactionWarning",
    "write_edge_list",
    "read_edge_list",
    "write_partition",
    "read_partition",
    "write_graphml",
    "write_dot",
    "build_manifest",
    "DOT_PALETTE",
    "DOT_FALLBACK_COLOR",
]

FORMAT_TAG = "# growgraph edge-list v1"


class EdgeListError(ValueError):
    """Malformed edge-list document; message names the offending line."""


class CompactionWarning(UserWarning):
    """Input ids were not dense; carries the old-id -> new-id table."""

    def __init__(self, message: str, remap: dict[int, int]):
        super().__init__(message)
        self.remap = remap


def write_edge_list(g: Graph, params=None) -> str:
    """Canonical edge list: `#` header lines, then `u<TAB>v` rows with
    u < v sorted by (u, v). Identical graphs produce identical bytes."""
    lines = [FORMAT_TAG, f"# nodes: {g.node_count}"]
    if params is not None:
        blob = json.dumps(params.to_dict(), sort_keys=True, separators=(", ", ": "))
        lines.append(f"# params: {blob}")
    for u, v in g.edges():
        lines.append(f"{u}\t{v}")
    return "\n".join(lines) + "\n"


def read_edge_list(text: str) -> Graph:
    """Parse an edge-list document back into a graph.

    Self-loops, duplicate edges and malformed rows are rejected with their
    line number. Ids must be dense 0..N-1; sparse ids are compacted in
    sorted order with a CompactionWarning carrying the remap table.
    """
    declared_nodes: int | None = None
    rows: list[tuple[int, int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if body.startswith("nodes:"):
                try:
                    declared_nodes = int(body.split(":", 1)[1])
                except ValueError:
                    raise EdgeListError(f"line {lineno}: bad nodes header: {raw!r}")
            continue
        parts = line.split("\t")
        if len(parts) == 1:
            parts = line.split()
        if len(parts) != 2:
            raise EdgeListError(f"line {lineno}: expected two fields, got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListError(f"line {lineno}: non-integer node id in {raw!r}")
        if u < 0 or v < 0:
            raise EdgeListError(f"line {lineno}: negative node id in {raw!r}")
        if u == v:
            raise EdgeListError(f"line {lineno}: self-loop {u}-{v}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise EdgeListError(f"line {lineno}: duplicate edge {u}-{v}")
        seen.add(key)
        rows.append((lineno, u, v))

    ids = {u for _, u, v in rows} | {v for _, u, v in rows}
    if declared_nodes is not None:
        for lineno, u, v in rows:
            if u >= declared_nodes or v >= declared_nodes:
                raise EdgeListError(
                    f"line {lineno}: node id beyond declared count {declared_nodes}")
        n = declared_nodes
        remap = None
    else:
        n = (max(ids) + 1) if ids else 0
        if len(ids) != n:
            ordered = sorted(ids)
            remap = {old: new for new, old in enumerate(ordered)}
            n = len(ordered)
            warnings.warn(CompactionWarning(
                f"ids are not dense; compacted {len(ids)} ids into 0..{n - 1}",
                remap))
        else:
            remap = None

    g = Graph()
    for _ in range(n):
        g.add_node()
    for _, u, v in rows:
        if remap is not None:
            u, v = remap[u], remap[v]
        g.add_edge(u, v)
    return g


def write_partition(p: Partition) -> str:
    """Two-column `node_id<TAB>group_id` rows, sorted by node id."""
    lines = [f"{node}\t{group}" for node, group in enumerate(p.assignment)]
    return "\n".join(lines) + "\n"


def read_partition(text: str, kind: str = DETECTED) -> Partition:
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected `node<TAB>group`, got {raw!r}")
        pairs.append((int(parts[0]), int(parts[1])))
    pairs.sort()
    for expect, (node, _) in enumerate(pairs):
        if node != expect:
            raise ValueError(f"partition rows must cover dense ids; missing {expect}")
    return Partition([group for _, group in pairs], kind=kind)


def write_graphml(g: Graph, p: Partition | None = None) -> str:
    """Standard GraphML; community labels become a node attribute when a
    partition is supplied."""
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">']
    if p is not None:
        out.append('  <key id="community" for="node" attr.name="community"'
                   ' attr.type="int"/>')
    out.append('  <graph id="G" edgedefault="undirected">')
    for u in range(g.node_count):
        if p is not None:
            out.append(f'    <node id="n{u}">')
            out.append(f'      <data key="community">{p.group_of(u)}</data>')
            out.append('    </node>')
        else:
            out.append(f'    <node id="n{u}"/>')
    for k, (u, v) in enumerate(g.edges()):
        out.append(f'    <edge id="e{k}" source="n{u}" target="n{v}"/>')
    out.append('  </graph>')
    out.append('</graphml>')
    return "\n".join(out) + "\n"


# Fill colors for the ten largest groups, in size rank order; every other
# group gets the fallback, mirroring the usual "big communities colored,
# small ones yellow" rendering.
DOT_PALETTE = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#42d4f4", "#f032e6", "#9a6324", "#800000", "#469990",
]
DOT_FALLBACK_COLOR = "#ffe119"  # yellow


def write_dot(g: Graph, p: Partition | None = None) -> str:
    """Graphviz DOT export; communities map to node fill colors."""
    out = ["graph G {"]
    if p is not None:
        out.append("  node [style=filled];")
        color_of = {gid: DOT_PALETTE[rank]
                    for rank, gid in enumerate(p.top_groups(len(DOT_PALETTE)))}
        for u in range(g.node_count):
            color = color_of.get(p.group_of(u), DOT_FALLBACK_COLOR)
            out.append(f'  {u} [fillcolor="{color}"];')
    else:
        for u in range(g.node_count):
            out.append(f"  {u};")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


def build_manifest(params, seed: int, g: Graph, files: dict[str, str]) -> str:
    """Provenance document for a generated artifact (JSON)."""
    from . import __version__

    doc = {
        "tool": "growgraph",
        "version": __version__,
        "params": params.to_dict(),
        "effective_seed": seed,
        "node_count": g.node_count,
        "edge_count": g.edge_count,
        "files": files,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
