"""Shared graph builders for the test suite."""

from __future__ import annotations

import pytest

from growgraph.graph import Graph


def make_graph(n: int, edges, labels=None) -> Graph:
    g = Graph()
    for i in range(n):
        g.add_node(labels[i] if labels else None)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def triangle(label=None) -> Graph:
    labels = [label] * 3 if label is not None else None
    return make_graph(3, [(0, 1), (0, 2), (1, 2)], labels)


def path_graph(k: int) -> Graph:
    return make_graph(k, [(i, i + 1) for i in range(k - 1)])


def star_graph(k: int) -> Graph:
    """Hub 0 plus k-1 leaves."""
    return make_graph(k, [(0, i) for i in range(1, k)])


def diamond() -> Graph:
    """4-cycle 0-1-2-3 plus diagonal 0-2."""
    return make_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def two_triangles_bridge() -> Graph:
    """Two triangles {0,1,2} and {3,4,5} joined by edge 2-3."""
    return make_graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    """Compile the numba kernels once up front so timings stay honest."""
    import numpy as np

    from growgraph import kernels

    indptr = np.array([0, 2, 4, 6], dtype=np.int64)
    indices = np.array([1, 2, 0, 2, 0, 1], dtype=np.int64)
    kernels.triangle_counts(indptr, indices)
    kernels.pairwise_distance_total(indptr, indices,
                                    np.arange(3, dtype=np.int64))
    kernels.bfs_distances(indptr, indices, 0)
