"""Seeded randomness and degree-proportional (preferential) selection.

Node selection probability is degree(u) / sum of degrees over the eligible
pool. The pool is realized as a token multiset: node u appears degree(u)
times, so a uniform token draw is an exact degree-proportional draw in
O(1), maintained globally and per community. Constrained draws (exclusion
sets, neighbor restriction) first try rejection sampling with a bounded
attempt budget, then fall back to exact enumeration of the eligible
candidates weighted by degree, so the sampled distribution is identical
either way.
"""

from __future__ import annotations

import random
import secrets
from bisect import bisect_right
from itertools import accumulate
from typing import Iterable, Sequence

from .graph import Graph

__all__ = [
    "RngStream",
    "DegreeIndex",
    "NoCandidateError",
    "bernoulli",
    "pa_select_global",
    "pa_select_in_community",
    "pa_select_neighbor",
]

# Attempt budgets before switching to exact enumeration.
REJECT_CAP_PER_CANDIDATE = 50
ANCHOR_REDRAW_CAP = 10_000
# Below this neighbor count, enumerating the adjacency beats rejection.
NEIGHBOR_ENUM_THRESHOLD = 64


class NoCandidateError(Exception):
    """Raised when a constrained selection has no eligible candidate."""


class RngStream:
    """Deterministic pseudo-random source (MT19937 via random.Random).

    The same seed reproduces the identical draw sequence on every platform
    and Python 3.x release. If no seed is given one is drawn from OS
    entropy and kept in ``seed`` so callers can record it.
    """

    __slots__ = ("seed", "_r")

    def __init__(self, seed: int | None = None) -> None:
        if seed is None:
            seed = secrets.randbits(63)
        self.seed = int(seed)
        self._r = random.Random(self.seed)

    def random(self) -> float:
        return self._r.random()

    def randrange(self, n: int) -> int:
        return self._r.randrange(n)

    def sample(self, population: Sequence[int] | range, k: int) -> list[int]:
        return self._r.sample(population, k)

    def spawn(self, salt: int) -> "RngStream":
        """Independent stream derived from this stream's seed and a salt."""
        return RngStream((self.seed * 0x9E3779B97F4A7C15 + salt) & (2**63 - 1))


def bernoulli(p: float, rng: RngStream) -> bool:
    """True with probability p. p must lie in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range: {p}")
    return rng.random() < p


def _weighted_pick(candidates: list[int], weights: list[int], rng: RngStream) -> int:
    cum = list(accumulate(weights))
    total = cum[-1]
    if total <= 0:
        raise NoCandidateError("all candidate weights are zero")
    r = rng.random() * total
    return candidates[bisect_right(cum, r)]


class DegreeIndex:
    """Token multiset tracking degrees globally and per community.

    Every edge insertion appends one token per endpoint, so the token count
    of a node always equals its degree and a uniform token draw is an exact
    degree-proportional draw. Community membership and degrees are mirrored
    here so constrained draws never need to rescan the graph.
    """

    __slots__ = ("tokens", "community_tokens", "members", "node_degree",
                 "node_community")

    def __init__(self, community_count: int) -> None:
        self.tokens: list[int] = []
        self.community_tokens: list[list[int]] = [[] for _ in range(community_count)]
        self.members: list[list[int]] = [[] for _ in range(community_count)]
        self.node_degree: list[int] = []
        self.node_community: list[int] = []

    @property
    def community_count(self) -> int:
        return len(self.community_tokens)

    def add_node(self, node: int, community: int) -> None:
        if node != len(self.node_degree):
            raise ValueError(f"nodes must be registered in id order, got {node}")
        self.node_degree.append(0)
        self.node_community.append(community)
        self.members[community].append(node)

    def add_edge(self, u: int, v: int) -> None:
        self.tokens.append(u)
        self.tokens.append(v)
        self.community_tokens[self.node_community[u]].append(u)
        self.community_tokens[self.node_community[v]].append(v)
        self.node_degree[u] += 1
        self.node_degree[v] += 1

    def total_tokens(self) -> int:
        return len(self.tokens)

    def select_global(self, rng: RngStream) -> int:
        if not self.tokens:
            raise NoCandidateError("degree index is empty (no edges yet)")
        return self.tokens[rng.randrange(len(self.tokens))]

    def select_global_excluding_community(self, forbidden: int | None,
                                          rng: RngStream) -> int:
        """Degree-proportional draw over all nodes outside ``forbidden``.

        Rejection-samples the global pool up to a fixed budget, then falls
        back to the exact two-stage draw (community by token mass, then
        token within), which realizes the same conditional distribution.
        """
        if forbidden is None:
            return self.select_global(rng)
        if not self.tokens:
            raise NoCandidateError("degree index is empty (no edges yet)")
        for _ in range(ANCHOR_REDRAW_CAP):
            node = self.tokens[rng.randrange(len(self.tokens))]
            if self.node_community[node] != forbidden:
                return node
        pools = [t for c, t in enumerate(self.community_tokens)
                 if c != forbidden and t]
        if not pools:
            raise NoCandidateError(
                f"no community other than {forbidden} has positive degree")
        counts = [len(t) for t in pools]
        cum = list(accumulate(counts))
        r = rng.randrange(cum[-1])
        pool = pools[bisect_right(cum, r)]
        return pool[rng.randrange(len(pool))]

    def select_in_community(self, community: int, exclude: set[int],
                            rng: RngStream) -> int:
        pool = self.community_tokens[community]
        if not pool:
            raise NoCandidateError(f"community {community} has no positive-degree node")
        if not exclude:
            return pool[rng.randrange(len(pool))]
        cap = REJECT_CAP_PER_CANDIDATE * max(1, len(self.members[community]))
        for _ in range(cap):
            node = pool[rng.randrange(len(pool))]
            if node not in exclude:
                return node
        candidates = []
        weights = []
        for node in self.members[community]:
            d = self.node_degree[node]
            if d > 0 and node not in exclude:
                candidates.append(node)
                weights.append(d)
        if not candidates:
            raise NoCandidateError(
                f"community {community} has no eligible node outside the exclusion set")
        return _weighted_pick(candidates, weights, rng)

    def audit(self, g: Graph) -> None:
        """Verify token counts against actual graph degrees (test support)."""
        from collections import Counter

        counts = Counter(self.tokens)
        for u in range(g.node_count):
            if counts[u] != g.degree(u):
                raise AssertionError(
                    f"token count {counts[u]} != degree {g.degree(u)} for node {u}")
        if len(self.tokens) != 2 * g.edge_count:
            raise AssertionError("global token total != 2 * edge_count")
        for c, pool in enumerate(self.community_tokens):
            for u, k in Counter(pool).items():
                if self.node_community[u] != c or k != g.degree(u):
                    raise AssertionError(f"community token mismatch for node {u}")


def pa_select_global(index: DegreeIndex, rng: RngStream) -> int:
    """Degree-proportional draw over every node with positive degree."""
    return index.select_global(rng)


def pa_select_in_community(index: DegreeIndex, community: int,
                           exclude: set[int], rng: RngStream) -> int:
    """Degree-proportional draw restricted to one community.

    Raises NoCandidateError if no community member with positive degree
    survives the exclusion set.
    """
    return index.select_in_community(community, exclude, rng)


def pa_select_neighbor(g: Graph, u: int, community: int, exclude: set[int],
                       rng: RngStream, index: DegreeIndex | None = None) -> int:
    """Degree-proportional draw over u's neighbors within ``community``.

    For low-degree u the adjacency set is enumerated directly and drawn by
    degree weight. For hubs (where enumeration is the generator's hot
    path) and with a DegreeIndex available, a degree-weighted community
    token is drawn and accepted iff it is an eligible neighbor of u, which
    samples the identical conditional distribution; the enumeration
    fallback still applies if the attempt budget runs out.
    """
    adj = g.adjacent(u)
    if index is not None and len(adj) > NEIGHBOR_ENUM_THRESHOLD:
        pool = index.community_tokens[community]
        if pool:
            for _ in range(REJECT_CAP_PER_CANDIDATE * len(adj)):
                v = pool[rng.randrange(len(pool))]
                if v in adj and v not in exclude:
                    return v
    candidates = []
    weights = []
    if index is not None:
        node_degree = index.node_degree
        node_community = index.node_community
        for v in adj:
            if v not in exclude and node_community[v] == community:
                candidates.append(v)
                weights.append(node_degree[v])
    else:
        for v in adj:
            if v not in exclude and g.label(v) == community:
                candidates.append(v)
                weights.append(g.degree(v))
    if not candidates:
        raise NoCandidateError(
            f"node {u} has no eligible neighbor in community {community}")
    return _weighted_pick(candidates, weights, rng)
