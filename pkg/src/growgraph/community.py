"""Greedy agglomerative modularity maximization and partition comparison.

Detection starts from singleton groups and repeatedly applies the merge
with the largest modularity gain (ties broken by the lexicographically
smallest group-id pair, which makes the whole merge sequence
deterministic), then cuts the merge sequence at its modularity maximum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from heapq import heappop, heappush
from typing import NamedTuple

from .graph import DETECTED, Graph, Partition, induced_subgraph

__all__ = ["MergeDendrogram", "SubclusterResult", "detect_communities",
           "subcluster", "compare_partitions"]


@dataclass
class MergeDendrogram:
    """Pairwise merge sequence with modularity after each merge.

    ``merges[k] = (i, j, q)``: group j was absorbed into group i and the
    partition modularity became q. ``cut`` is the number of merges applied
    at the modularity maximum.
    """

    merges: list[tuple[int, int, float]]
    initial_q: float
    cut: int

    @property
    def best_q(self) -> float:
        if self.cut == 0:
            return self.initial_q
        return self.merges[self.cut - 1][2]

    def levels(self) -> list[float]:
        """Modularity at every recorded level (index = merges applied)."""
        return [self.initial_q] + [q for _, _, q in self.merges]


class SubclusterResult(NamedTuple):
    community: int          # dense group id in the parent partition
    members: list[int]      # parent-graph node ids, local id = position
    partition: Partition    # over local ids


def _greedy_merge(g: Graph) -> MergeDendrogram:
    """Run the full agglomeration; callers decide connectivity policy."""
    n = g.node_count
    m = g.edge_count
    if m == 0:
        raise ValueError("community detection needs at least one edge")
    two_m = 2.0 * m
    a = [g.degree(u) / two_m for u in range(n)]
    # e[i][j]: fraction (over 2m directed half-edges) of edges between
    # groups i and j; symmetric, self entries not stored.
    e: list[dict[int, float]] = [
        {v: 1.0 / two_m for v in sorted(g.adjacent(u))} for u in range(n)
    ]
    alive = [True] * n
    stamp = [0] * n
    q = -sum(x * x for x in a)
    initial_q = q

    heap: list[tuple[float, int, int, int, int]] = []
    for u in range(n):
        for v in e[u]:
            if u < v:
                dq = 2.0 * (e[u][v] - a[u] * a[v])
                heappush(heap, (-dq, u, v, 0, 0))

    merges: list[tuple[int, int, float]] = []
    while heap:
        ndq, i, j, si, sj = heappop(heap)
        if not (alive[i] and alive[j]) or stamp[i] != si or stamp[j] != sj:
            continue
        q += -ndq
        for x, w in e[j].items():
            if x == i:
                continue
            e[i][x] = e[i].get(x, 0.0) + w
            del e[x][j]
            e[x][i] = e[i][x]
        e[i].pop(j, None)
        e[j] = {}
        a[i] += a[j]
        alive[j] = False
        stamp[i] += 1
        merges.append((i, j, q))
        for x, w in e[i].items():
            dq = 2.0 * (w - a[i] * a[x])
            u, v = (i, x) if i < x else (x, i)
            heappush(heap, (-dq, u, v, stamp[u], stamp[v]))

    levels = [initial_q] + [mq for _, _, mq in merges]
    cut = max(range(len(levels)), key=lambda k: (levels[k], -k))
    return MergeDendrogram(merges=merges, initial_q=initial_q, cut=cut)


def _partition_at_cut(n: int, dendrogram: MergeDendrogram) -> Partition:
    redirect: dict[int, int] = {}
    for i, j, _ in dendrogram.merges[:dendrogram.cut]:
        redirect[j] = i

    def resolve(u: int) -> int:
        path = []
        while u in redirect:
            path.append(u)
            u = redirect[u]
        for p in path:
            redirect[p] = u
        return u

    return Partition([resolve(u) for u in range(n)], kind=DETECTED)


def detect_communities(g: Graph) -> tuple[Partition, MergeDendrogram]:
    """Detect communities by greedy modularity maximization.

    Requires a connected graph with at least one edge; returns the
    partition at the maximum-modularity cut plus the full dendrogram.
    """
    if g.edge_count == 0:
        raise ValueError("community detection needs at least one edge")
    if not g.is_connected():
        raise ValueError("community detection requires a connected graph")
    dendrogram = _greedy_merge(g)
    return _partition_at_cut(g.node_count, dendrogram), dendrogram


def subcluster(g: Graph, p: Partition, top_k: int) -> list[SubclusterResult]:
    """Re-cluster the induced subgraph of each of the top_k largest groups.

    Groups too small or edgeless to cluster yield a single sub-group.
    """
    if top_k < 1:
        raise ValueError(f"top_k must be >= 1, got {top_k}")
    results = []
    for gid in p.top_groups(top_k):
        members = p.groups[gid]
        sub = induced_subgraph(g, members)
        if sub.edge_count == 0 or sub.node_count < 2:
            part = Partition([0] * sub.node_count, kind=DETECTED)
        else:
            dendrogram = _greedy_merge(sub)
            part = _partition_at_cut(sub.node_count, dendrogram)
        results.append(SubclusterResult(gid, members, part))
    return results


def _entropy(counts: Counter, n: int) -> float:
    return -sum((c / n) * math.log(c / n) for c in counts.values())


def compare_partitions(a: Partition, b: Partition) -> tuple[float, float]:
    """Normalized mutual information and adjusted Rand index of two
    partitions over the same node set. Both are label-permutation
    invariant; NMI uses arithmetic-mean normalization."""
    if len(a) != len(b):
        raise ValueError(
            f"partitions cover different node sets ({len(a)} vs {len(b)} nodes)")
    n = len(a)
    if n == 0:
        raise ValueError("partitions are empty")
    la = a.dense_assignment()
    lb = b.dense_assignment()
    ca = Counter(la)
    cb = Counter(lb)
    joint = Counter(zip(la, lb))

    ha = _entropy(ca, n)
    hb = _entropy(cb, n)
    if ha == 0.0 and hb == 0.0:
        nmi = 1.0
    elif ha == 0.0 or hb == 0.0:
        nmi = 0.0
    else:
        mi = 0.0
        for (i, j), nij in joint.items():
            mi += (nij / n) * math.log(n * nij / (ca[i] * cb[j]))
        nmi = mi / ((ha + hb) / 2.0)
        nmi = min(1.0, max(0.0, nmi))

    def c2(x: int) -> int:
        return x * (x - 1) // 2

    sum_ij = sum(c2(nij) for nij in joint.values())
    sum_a = sum(c2(x) for x in ca.values())
    sum_b = sum(c2(x) for x in cb.values())
    total = c2(n)
    expected = sum_a * sum_b / total if total else 0.0
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        ari = 1.0
    else:
        ari = (sum_ij - expected) / (max_index - expected)
    return nmi, ari
