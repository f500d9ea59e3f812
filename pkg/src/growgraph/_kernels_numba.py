"""Numba-compiled kernels over CSR adjacency (hot paths of the metrics)."""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _bfs_into(indptr, indices, source, dist, queue):
    """BFS from source into a pre-allocated dist (-1) and queue buffer.

    Returns (sum of distances to reached nodes, number reached).
    """
    head = 0
    tail = 0
    dist[source] = 0
    queue[tail] = source
    tail += 1
    total = 0
    reached = 0
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du + 1
                total += du + 1
                reached += 1
                queue[tail] = v
                tail += 1
    return total, reached


@njit(cache=True)
def bfs_distances(indptr, indices, source):
    n = indptr.shape[0] - 1
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    _bfs_into(indptr, indices, source, dist, queue)
    return dist


@njit(cache=True)
def pairwise_distance_total(indptr, indices, sources):
    n = indptr.shape[0] - 1
    dist = np.empty(n, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    total = 0
    reached = 0
    for i in range(sources.shape[0]):
        dist[:] = -1
        t, r = _bfs_into(indptr, indices, sources[i], dist, queue)
        total += t
        reached += r
    return total, reached


@njit(cache=True)
def triangle_counts(indptr, indices):
    n = indptr.shape[0] - 1
    out = np.zeros(n, dtype=np.int64)
    for u in range(n):
        s = indptr[u]
        e = indptr[u + 1]
        t = 0
        for k in range(s, e):
            v = indices[k]
            i = s
            j = indptr[v]
            jend = indptr[v + 1]
            while i < e and j < jend:
                a = indices[i]
                b = indices[j]
                if a == b:
                    t += 1
                    i += 1
                    j += 1
                elif a < b:
                    i += 1
                else:
                    j += 1
        out[u] = t // 2
    return out
