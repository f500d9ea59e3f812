"""Pure-numpy fallback kernels over CSR adjacency.

Same contracts as the numba backend; selected when GROWGRAPH_BACKEND=numpy
or when numba is unavailable. BFS is level-synchronous with vectorized
frontier expansion; triangle counting intersects sorted neighbor rows.
"""

from __future__ import annotations

import numpy as np


def _gather_rows(indptr: np.ndarray, indices: np.ndarray,
                 rows: np.ndarray) -> np.ndarray:
    """Concatenate the CSR rows for ``rows`` without a Python loop."""
    starts = indptr[rows]
    counts = indptr[rows + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=indices.dtype)
    before = np.concatenate(([0], np.cumsum(counts)[:-1]))
    positions = np.arange(total, dtype=np.int64) + np.repeat(starts - before, counts)
    return indices[positions]


def bfs_distances(indptr: np.ndarray, indices: np.ndarray,
                  source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable nodes get -1."""
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    frontier = np.array([source], dtype=np.int64)
    d = 0
    while frontier.size:
        nbrs = _gather_rows(indptr, indices, frontier)
        nbrs = nbrs[dist[nbrs] < 0]
        if nbrs.size == 0:
            break
        frontier = np.unique(nbrs)
        d += 1
        dist[frontier] = d
    return dist


def pairwise_distance_total(indptr: np.ndarray, indices: np.ndarray,
                            sources: np.ndarray) -> tuple[int, int]:
    """Sum of hop distances and count of reached targets over all sources.

    Returns (total_distance, reached_pairs) where reached_pairs counts
    ordered (source, target) pairs with target != source.
    """
    total = 0
    reached = 0
    for s in sources:
        dist = bfs_distances(indptr, indices, int(s))
        hit = dist > 0
        total += int(dist[hit].sum())
        reached += int(hit.sum())
    return total, reached


def triangle_counts(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Number of triangles through each node (rows must be sorted)."""
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for u in range(n):
        nb = indices[indptr[u]:indptr[u + 1]]
        if nb.size < 2:
            continue
        t = 0
        for v in nb:
            row = indices[indptr[v]:indptr[v + 1]]
            t += np.intersect1d(nb, row, assume_unique=True).size
        out[u] = t // 2
    return out
