"""Undirected simple graph with optional per-node community labels.

Nodes are dense integer ids assigned in insertion order. Adjacency is kept
as per-node sets so duplicate-edge checks during generation are O(1); the
CSR view used by the metric kernels is built lazily once the graph stops
mutating.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["Graph", "Partition", "induced_subgraph", "GROUND_TRUTH", "DETECTED"]

GROUND_TRUTH = "ground-truth"
DETECTED = "detected"


class Graph:
    """Undirected simple graph (no self-loops, no parallel edges)."""

    __slots__ = ("_adj", "_labels", "edge_count", "_csr")

    def __init__(self) -> None:
        self._adj: list[set[int]] = []
        self._labels: list[int | None] = []
        self.edge_count: int = 0
        self._csr: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def node_count(self) -> int:
        return len(self._adj)

    def add_node(self, label: int | None = None) -> int:
        """Add a node and return its id (sequential, never reused)."""
        self._adj.append(set())
        self._labels.append(label)
        self._csr = None
        return len(self._adj) - 1

    def add_edge(self, u: int, v: int) -> bool:
        """Insert edge u-v; returns False if it already exists.

        Raises ValueError for self-loops and unknown ids.
        """
        if u == v:
            raise ValueError(f"self-loop rejected: {u}")
        n = len(self._adj)
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"unknown node id in edge ({u}, {v}); graph has {n} nodes")
        if v in self._adj[u]:
            return False
        self._adj[u].add(v)
        self._adj[v].add(u)
        self.edge_count += 1
        self._csr = None
        return True

    def has_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        return v in self._adj[u]

    def degree(self, u: int) -> int:
        self._check(u)
        return len(self._adj[u])

    def neighbors(self, u: int) -> list[int]:
        """Neighbors of u in ascending id order."""
        self._check(u)
        return sorted(self._adj[u])

    def adjacent(self, u: int) -> set[int]:
        """Raw adjacency set of u (do not mutate)."""
        self._check(u)
        return self._adj[u]

    def label(self, u: int) -> int | None:
        self._check(u)
        return self._labels[u]

    def labels(self) -> list[int | None]:
        return list(self._labels)

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(s) for s in self._adj), dtype=np.int64,
                           count=len(self._adj))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        out = []
        for u, adj in enumerate(self._adj):
            for v in adj:
                if u < v:
                    out.append((u, v))
        out.sort()
        return out

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR adjacency: (indptr int64, indices int64), rows sorted."""
        if self._csr is None:
            n = len(self._adj)
            indptr = np.zeros(n + 1, dtype=np.int64)
            for u, adj in enumerate(self._adj):
                indptr[u + 1] = indptr[u] + len(adj)
            indices = np.empty(indptr[-1], dtype=np.int64)
            for u, adj in enumerate(self._adj):
                row = sorted(adj)
                indices[indptr[u]:indptr[u + 1]] = row
            self._csr = (indptr, indices)
        return self._csr

    def is_connected(self) -> bool:
        n = len(self._adj)
        if n == 0:
            return True
        seen = bytearray(n)
        seen[0] = 1
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v in self._adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    stack.append(v)
        return count == n

    def ground_truth_partition(self) -> "Partition | None":
        """Partition from node labels, or None if any node is unlabeled."""
        if not self._labels or any(l is None for l in self._labels):
            return None
        return Partition(list(self._labels), kind=GROUND_TRUTH)  # type: ignore[arg-type]

    def check_invariants(self) -> None:
        """Assert structural invariants; used by tests and debug paths."""
        total = 0
        for u, adj in enumerate(self._adj):
            if u in adj:
                raise AssertionError(f"self-loop at {u}")
            for v in adj:
                if u not in self._adj[v]:
                    raise AssertionError(f"asymmetric edge ({u}, {v})")
            total += len(adj)
        if total != 2 * self.edge_count:
            raise AssertionError(
                f"degree sum {total} != 2 * edge_count {2 * self.edge_count}")

    def _check(self, u: int) -> None:
        if not (0 <= u < len(self._adj)):
            raise ValueError(f"unknown node id {u}; graph has {len(self._adj)} nodes")

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"


def induced_subgraph(g: Graph, nodes: list[int]) -> Graph:
    """Subgraph on ``nodes``; local ids follow the order given.

    Labels are preserved. The caller keeps the local->global mapping
    (``nodes`` itself).
    """
    local = {u: i for i, u in enumerate(nodes)}
    sub = Graph()
    for u in nodes:
        sub.add_node(g.label(u))
    for u in nodes:
        lu = local[u]
        for v in g.adjacent(u):
            lv = local.get(v)
            if lv is not None and lu < lv:
                sub.add_edge(lu, lv)
    return sub


@dataclass
class Partition:
    """Assignment of every node to exactly one group.

    ``groups`` is derived from ``assignment``: member lists indexed by a
    dense group id 0..k-1, preserving the order of first appearance of the
    original group values.
    """

    assignment: list[int]
    kind: str = DETECTED
    groups: list[list[int]] = field(init=False, repr=False)
    _dense: list[int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        remap: dict[int, int] = {}
        dense = []
        groups: list[list[int]] = []
        for node, g in enumerate(self.assignment):
            gid = remap.setdefault(g, len(remap))
            if gid == len(groups):
                groups.append([])
            groups[gid].append(node)
            dense.append(gid)
        self.groups = groups
        self._dense = dense

    @property
    def group_count(self) -> int:
        return len(self.groups)

    def group_of(self, node: int) -> int:
        return self._dense[node]

    def dense_assignment(self) -> list[int]:
        """Assignment using the dense 0..k-1 group ids."""
        return list(self._dense)

    def sizes(self) -> list[int]:
        return [len(g) for g in self.groups]

    def top_groups(self, k: int) -> list[int]:
        """Dense ids of the k largest groups, size-descending (ties by id)."""
        order = sorted(range(len(self.groups)),
                       key=lambda i: (-len(self.groups[i]), i))
        return order[:k]

    def __len__(self) -> int:
        return len(self.assignment)
