"""Network statistics: path length, clustering, power-law exponent,
modularity and relative density, with per-community breakdowns.

All operations are read-only over an immutable graph. Average path length
is exact (all-pairs BFS) up to EXACT_APL_MAX_NODES nodes and switches to a
sampled-source estimate above that; the chosen mode is always disclosed in
the report.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, Partition, induced_subgraph
from .sampling import RngStream

__all__ = [
    "MetricsReport",
    "CommunityStats",
    "avg_clustering",
    "transitivity",
    "avg_path_length",
    "fit_alpha",
    "modularity",
    "relative_density",
    "per_community_stats",
    "build_report",
    "EXACT_APL_MAX_NODES",
    "SAMPLED_APL_SOURCES",
]

EXACT_APL_MAX_NODES = 20_000
SAMPLED_APL_SOURCES = 1_000

# Degree floor of the fit tail. The generated networks have a hard floor at
# m (2 in the reference experiments), below which the tail is not power-law.
DEFAULT_X_MIN = 2


def _local_clustering(g: Graph) -> np.ndarray:
    indptr, indices = g.to_csr()
    tri = kernels.triangle_counts(indptr, indices)
    deg = indptr[1:] - indptr[:-1]
    pairs = deg * (deg - 1) / 2.0
    return np.where(deg >= 2, tri / np.maximum(pairs, 1.0), 0.0)


def avg_clustering(g: Graph) -> float:
    """Mean local clustering over all nodes; degree < 2 contributes 0."""
    if g.node_count == 0:
        raise ValueError("clustering is undefined on an empty graph")
    return float(_local_clustering(g).mean())


def transitivity(g: Graph) -> float:
    """Global transitivity: closed triplets over all connected triplets."""
    if g.node_count == 0:
        raise ValueError("transitivity is undefined on an empty graph")
    indptr, indices = g.to_csr()
    tri = kernels.triangle_counts(indptr, indices)
    deg = indptr[1:] - indptr[:-1]
    triplets = int((deg * (deg - 1) // 2).sum())
    if triplets == 0:
        return 0.0
    return float(tri.sum() / triplets)


def avg_path_length(g: Graph, mode: str = "exact",
                    sources: int = SAMPLED_APL_SOURCES,
                    rng: RngStream | None = None) -> float:
    """Mean shortest-path hop count; raises on disconnected graphs.

    mode="exact" averages over all node pairs; mode="sampled" averages
    over ``sources`` uniformly chosen distinct source nodes against all
    targets (with sources >= node count it degenerates to exact).
    """
    n = g.node_count
    if n < 2:
        raise ValueError("path length needs at least 2 nodes")
    indptr, indices = g.to_csr()
    if mode == "exact":
        src = np.arange(n, dtype=np.int64)
    elif mode == "sampled":
        if sources >= n:
            src = np.arange(n, dtype=np.int64)
        else:
            if rng is None:
                rng = RngStream(0)
            src = np.array(sorted(rng.sample(range(n), sources)), dtype=np.int64)
    else:
        raise ValueError(f"unknown APL mode {mode!r}")
    total, reached = kernels.pairwise_distance_total(indptr, indices, src)
    expected = len(src) * (n - 1)
    if reached != expected:
        raise ValueError("graph is disconnected; average path length undefined")
    return total / expected


def fit_alpha(degrees, x_min: int, offset: float = 0.5) -> float:
    """Power-law exponent of the degree tail by maximum likelihood.

    Uses alpha = 1 + n_tail / sum(ln(x_i / (x_min - offset))) over the
    tail x_i >= x_min. offset=0.5 is the discrete-distribution correction;
    offset=0 gives the continuous estimator (useful as a cross-check).
    """
    if x_min < 1:
        raise ValueError(f"x_min must be a positive integer, got {x_min}")
    tail = np.asarray([d for d in degrees if d >= x_min], dtype=np.float64)
    if tail.size < 2:
        raise ValueError(f"need at least 2 degrees >= x_min={x_min}, got {tail.size}")
    if np.all(tail == x_min):
        raise ValueError("degenerate tail: every value equals x_min")
    denom = float(np.log(tail / (x_min - offset)).sum())
    return 1.0 + tail.size / denom


def modularity(g: Graph, p: Partition) -> float:
    """Newman modularity Q of a partition: within-group edge fraction
    minus the expectation under a degree-preserving random model."""
    m = g.edge_count
    if m == 0:
        raise ValueError("modularity is undefined on an edgeless graph")
    if len(p) != g.node_count:
        raise ValueError(
            f"partition covers {len(p)} nodes but graph has {g.node_count}")
    assign = p.dense_assignment()
    k = p.group_count
    intra = [0] * k
    degsum = [0] * k
    for u in range(g.node_count):
        gu = assign[u]
        degsum[gu] += g.degree(u)
        for v in g.adjacent(u):
            if u < v and assign[v] == gu:
                intra[gu] += 1
    q = 0.0
    for i in range(k):
        q += intra[i] / m - (degsum[i] / (2 * m)) ** 2
    return q


def relative_density(g: Graph, p: Partition) -> float:
    """Mean over groups of internal / (internal + boundary) edge counts."""
    if len(p) != g.node_count:
        raise ValueError(
            f"partition covers {len(p)} nodes but graph has {g.node_count}")
    assign = p.dense_assignment()
    k = p.group_count
    internal = [0] * k
    boundary = [0] * k
    for u in range(g.node_count):
        gu = assign[u]
        for v in g.adjacent(u):
            if u < v:
                gv = assign[v]
                if gu == gv:
                    internal[gu] += 1
                else:
                    boundary[gu] += 1
                    boundary[gv] += 1
    total = 0.0
    for i in range(k):
        inc = internal[i] + boundary[i]
        if inc == 0:
            raise ValueError(f"group {i} has no incident edges")
        total += internal[i] / inc
    return total / k


@dataclass(slots=True)
class CommunityStats:
    size: int
    alpha: float | None
    clustering: float

    def to_dict(self) -> dict:
        return {"size": self.size, "alpha": self.alpha,
                "clustering": self.clustering}


def per_community_stats(g: Graph, p: Partition, top_k: int,
                        x_min: int = DEFAULT_X_MIN) -> list[CommunityStats]:
    """Induced-subgraph clustering and degree exponent for the top_k
    largest groups, descending by size.

    Alpha is fitted on degrees counted inside the group; groups too small
    or too uniform for a fit report alpha as None.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    out = []
    for gid in p.top_groups(top_k):
        members = p.groups[gid]
        sub = induced_subgraph(g, members)
        try:
            alpha: float | None = fit_alpha(sub.degrees(), x_min)
        except ValueError:
            alpha = None
        cc = avg_clustering(sub) if sub.node_count else 0.0
        out.append(CommunityStats(size=len(members), alpha=alpha, clustering=cc))
    return out


@dataclass
class MetricsReport:
    """Full statistics bundle; serializes to a stable JSON document."""

    node_count: int
    edge_count: int
    avg_path_length: float
    avg_clustering: float
    alpha: float | None
    modularity: float | None
    relative_density: float | None
    apl_method: str
    per_community: list[CommunityStats] | None = None
    transitivity: float | None = None

    def to_dict(self) -> dict:
        d = {
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "avg_path_length": self.avg_path_length,
            "avg_clustering": self.avg_clustering,
            "alpha": self.alpha,
            "modularity": self.modularity,
            "relative_density": self.relative_density,
            "apl_method": self.apl_method,
        }
        if self.per_community is not None:
            d["per_community"] = [c.to_dict() for c in self.per_community]
        if self.transitivity is not None:
            d["transitivity"] = self.transitivity
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def build_report(g: Graph, partition: Partition | None = None,
                 x_min: int = DEFAULT_X_MIN, top_k: int | None = None,
                 apl_mode: str = "auto",
                 rng: RngStream | None = None) -> MetricsReport:
    """Assemble a MetricsReport.

    ``partition`` supplies the modularity / relative-density fields and the
    per-community breakdown (top_k groups). apl_mode "auto" is exact up to
    EXACT_APL_MAX_NODES nodes and sampled with SAMPLED_APL_SOURCES sources
    beyond that.
    """
    n = g.node_count
    if apl_mode == "auto":
        apl_mode = "exact" if n <= EXACT_APL_MAX_NODES else "sampled"
    if apl_mode == "sampled":
        k = min(SAMPLED_APL_SOURCES, n)
        apl = avg_path_length(g, "sampled", sources=k, rng=rng)
        method = f"sampled({k} sources)"
    else:
        apl = avg_path_length(g, "exact")
        method = "exact"
    try:
        alpha: float | None = fit_alpha(g.degrees(), x_min)
    except ValueError:
        alpha = None
    q = rd = None
    per = None
    if partition is not None:
        q = modularity(g, partition)
        rd = relative_density(g, partition)
        if top_k:
            per = per_community_stats(g, partition, top_k, x_min=x_min)
    return MetricsReport(
        node_count=n,
        edge_count=g.edge_count,
        avg_path_length=apl,
        avg_clustering=avg_clustering(g),
        alpha=alpha,
        modularity=q,
        relative_density=rd,
        apl_method=method,
        per_community=per,
        transitivity=transitivity(g),
    )
