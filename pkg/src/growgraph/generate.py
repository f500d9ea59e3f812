"""Growing network model with tunable communities, triads and shortcuts.

The growth process: seed with c mutually connected triangles (one per
community), then repeatedly attach a new node to a degree-proportionally
chosen anchor (inheriting its community), wire m-1 further intra-community
edges that close a triangle with probability p_t, and with probability p_c
bridge the two communities that received the last two nodes. Consecutive
new nodes always land in different communities (when c > 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph
from .sampling import (
    DegreeIndex,
    NoCandidateError,
    RngStream,
    bernoulli,
    pa_select_in_community,
    pa_select_neighbor,
)

__all__ = ["GenParams", "GenTrace", "AttachRecord", "seed_phase",
           "attach_new_node", "inter_cluster_step", "generate",
           "generate_holme_kim", "replay_trace"]

# Re-pick budget for an inter-community edge that already exists.
INTER_RESELECT_CAP = 100

_EMPTY: set[int] = set()


@dataclass(frozen=True)
class GenParams:
    """Model parameters: target size, edges per node, communities, p_t, p_c.

    ``seed`` may be None, in which case the run draws one from OS entropy;
    the effective seed is recorded on the returned trace.
    """

    n: int
    m: int = 2
    c: int = 1
    p_t: float = 0.5
    p_c: float = 0.01
    seed: int | None = None

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"c must be >= 1, got {self.c}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if self.n < 3 * self.c:
            raise ValueError(
                f"n must be >= 3*c (seed phase creates {3 * self.c} nodes), got {self.n}")
        if not 0.0 <= self.p_t <= 1.0:
            raise ValueError(f"p_t must lie in [0, 1], got {self.p_t}")
        if not 0.0 <= self.p_c <= 1.0:
            raise ValueError(f"p_c must lie in [0, 1], got {self.p_c}")

    def to_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "c": self.c, "p_t": self.p_t,
                "p_c": self.p_c, "seed": self.seed}


@dataclass(slots=True)
class AttachRecord:
    """One node-attachment iteration: who joined, where, and how."""

    node: int
    anchor: int
    community: int
    extra_targets: list[int]
    branches: list[str]  # per extra edge: "triad" | "pa" | "triad-fallback"
    shortfall: int       # extra edges dropped for lack of eligible targets


@dataclass
class GenTrace:
    """Record of every stochastic choice, sufficient to rebuild the graph."""

    params: GenParams | None = None
    seed: int | None = None
    seed_edges: list[tuple[int, int]] = field(default_factory=list)
    attaches: list[AttachRecord] = field(default_factory=list)
    # Aligned with attaches: None (no attempt or declined), (u, v), or
    # "skipped" when the re-pick budget ran out.
    inter_edges: list[tuple[int, int] | str | None] = field(default_factory=list)

    @property
    def dropped_edges(self) -> int:
        return sum(rec.shortfall for rec in self.attaches)

    @property
    def skipped_inter(self) -> int:
        return sum(1 for e in self.inter_edges if e == "skipped")


def seed_phase(params: GenParams, g: Graph, rng: RngStream,
               index: DegreeIndex, trace: GenTrace | None = None) -> None:
    """Create c labeled triangles and one random edge per community pair.

    Leaves the graph with 3c nodes and 3c + c(c-1)/2 edges, connected.
    """
    if g.node_count != 0:
        raise ValueError("seed_phase requires an empty graph")
    c = params.c
    for k in range(c):
        base = g.add_node(k)
        index.add_node(base, k)
        for _ in range(2):
            node = g.add_node(k)
            index.add_node(node, k)
        for u, v in ((base, base + 1), (base, base + 2), (base + 1, base + 2)):
            g.add_edge(u, v)
            index.add_edge(u, v)
            if trace is not None:
                trace.seed_edges.append((u, v))
    for a in range(c):
        for b in range(a + 1, c):
            u = 3 * a + rng.randrange(3)
            v = 3 * b + rng.randrange(3)
            g.add_edge(u, v)
            index.add_edge(u, v)
            if trace is not None:
                trace.seed_edges.append((u, v))


def attach_new_node(g: Graph, params: GenParams,
                    forbidden_community: int | None, rng: RngStream,
                    index: DegreeIndex,
                    trace: GenTrace | None = None) -> tuple[int, int]:
    """Add one node: anchor edge plus m-1 triad/community edges.

    The anchor is drawn degree-proportionally over the whole graph,
    re-drawn while its community equals ``forbidden_community``. Each of
    the m-1 extra edges goes, with probability p_t, to a degree-weighted
    same-community neighbor of the anchor (closing a triangle), otherwise
    to a degree-weighted same-community node not yet adjacent to the new
    node. When a tiny community cannot supply enough distinct targets the
    shortfall is recorded rather than violating the simple-graph invariant.
    """
    anchor = index.select_global_excluding_community(forbidden_community, rng)
    community = g.label(anchor)
    assert community is not None
    node = g.add_node(community)
    index.add_node(node, community)
    g.add_edge(node, anchor)
    index.add_edge(node, anchor)

    extra_targets: list[int] = []
    branches: list[str] = []
    shortfall = 0
    for _ in range(params.m - 1):
        exclude = set(g.adjacent(node))
        exclude.add(node)
        target: int | None = None
        branch = "pa"
        if bernoulli(params.p_t, rng):
            branch = "triad"
            try:
                target = pa_select_neighbor(g, anchor, community, exclude, rng,
                                            index=index)
            except NoCandidateError:
                branch = "triad-fallback"
        if target is None:
            try:
                target = pa_select_in_community(index, community, exclude, rng)
            except NoCandidateError:
                shortfall += 1
                continue
        g.add_edge(node, target)
        index.add_edge(node, target)
        extra_targets.append(target)
        branches.append(branch)

    if trace is not None:
        trace.attaches.append(AttachRecord(node, anchor, community,
                                           extra_targets, branches, shortfall))
    return node, community


def inter_cluster_step(g: Graph, c_a: int, c_b: int, p_c: float,
                       rng: RngStream, index: DegreeIndex,
                       trace: GenTrace | None = None) -> bool:
    """With probability p_c, bridge communities c_a and c_b.

    Both endpoints are degree-proportional draws within their community;
    if the pair is already connected both are re-drawn, up to a fixed
    budget, after which the step is skipped (and logged on the trace).
    """
    if c_a == c_b:
        raise ValueError("inter_cluster_step needs two distinct communities")
    if not bernoulli(p_c, rng):
        if trace is not None:
            trace.inter_edges.append(None)
        return False
    for _ in range(INTER_RESELECT_CAP):
        u = pa_select_in_community(index, c_a, _EMPTY, rng)
        v = pa_select_in_community(index, c_b, _EMPTY, rng)
        if not g.has_edge(u, v):
            g.add_edge(u, v)
            index.add_edge(u, v)
            if trace is not None:
                trace.inter_edges.append((u, v))
            return True
    if trace is not None:
        trace.inter_edges.append("skipped")
    return False


def generate(params: GenParams,
             keep_trace: bool = True) -> tuple[Graph, GenTrace | None]:
    """Grow a network to n nodes under the five-parameter model.

    Returns the graph and, unless ``keep_trace`` is False, a trace that
    replays to the identical graph. Identical params (including seed)
    produce identical graphs.
    """
    rng = RngStream(params.seed)
    g = Graph()
    index = DegreeIndex(params.c)
    trace = GenTrace(params=params, seed=rng.seed) if keep_trace else None

    seed_phase(params, g, rng, index, trace)

    prev_community: int | None = None
    while g.node_count < params.n:
        forbidden = prev_community if params.c > 1 else None
        _, community = attach_new_node(g, params, forbidden, rng, index, trace)
        if prev_community is not None and params.c > 1:
            inter_cluster_step(g, community, prev_community, params.p_c,
                               rng, index, trace)
        elif trace is not None:
            trace.inter_edges.append(None)
        prev_community = community
    return g, trace


def generate_holme_kim(n: int, m: int, p_t: float,
                       seed: int | None = None) -> Graph:
    """Single-community reduction: scale-free growth with triad formation."""
    g, _ = generate(GenParams(n=n, m=m, c=1, p_t=p_t, p_c=0.0, seed=seed),
                    keep_trace=False)
    return g


def replay_trace(trace: GenTrace) -> Graph:
    """Rebuild the exact graph a trace was recorded from, without RNG."""
    if trace.params is None:
        raise ValueError("trace carries no parameters")
    c = trace.params.c
    g = Graph()
    for k in range(c):
        for _ in range(3):
            g.add_node(k)
    for u, v in trace.seed_edges:
        g.add_edge(u, v)
    for pos, rec in enumerate(trace.attaches):
        node = g.add_node(rec.community)
        if node != rec.node:
            raise ValueError(f"trace out of order at node {rec.node}")
        g.add_edge(node, rec.anchor)
        for target in rec.extra_targets:
            g.add_edge(node, target)
        inter = trace.inter_edges[pos] if pos < len(trace.inter_edges) else None
        if isinstance(inter, tuple):
            g.add_edge(*inter)
    return g
