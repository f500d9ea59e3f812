import math
from collections import Counter

import pytest

from growgraph.generate import GenParams, generate
from growgraph.graph import Graph
from growgraph.sampling import (DegreeIndex, NoCandidateError, RngStream,
                                bernoulli, pa_select_global,
                                pa_select_in_community, pa_select_neighbor)

from conftest import make_graph

N_DRAWS = 100_000


def three_sigma(p: float, n: int = N_DRAWS) -> float:
    return 3 * math.sqrt(p * (1 - p) / n)


def indexed(g: Graph, communities) -> DegreeIndex:
    index = DegreeIndex(max(communities) + 1)
    for u in range(g.node_count):
        index.add_node(u, communities[u])
    for u, v in g.edges():
        index.add_edge(u, v)
    return index


def test_bernoulli_degenerate_probabilities():
    rng = RngStream(1)
    assert not any(bernoulli(0.0, rng) for _ in range(1000))
    assert all(bernoulli(1.0, rng) for _ in range(1000))


def test_bernoulli_rejects_out_of_range():
    rng = RngStream(1)
    for bad in (-0.1, 1.5, 2.0):
        with pytest.raises(ValueError):
            bernoulli(bad, rng)


def test_bernoulli_frequency():
    rng = RngStream(7)
    hits = sum(bernoulli(0.5, rng) for _ in range(N_DRAWS))
    assert abs(hits / N_DRAWS - 0.5) < 0.01


def test_rng_replay_is_identical():
    a = RngStream(123)
    b = RngStream(123)
    assert [a.randrange(1000) for _ in range(50)] == \
           [b.randrange(1000) for _ in range(50)]
    assert a.seed == 123


def test_rng_entropy_seed_is_recorded():
    stream = RngStream()
    clone = RngStream(stream.seed)
    assert stream.random() == clone.random()


def test_pa_select_global_triangle_uniform():
    g = make_graph(3, [(0, 1), (0, 2), (1, 2)])
    index = indexed(g, [0, 0, 0])
    rng = RngStream(3)
    counts = Counter(pa_select_global(index, rng) for _ in range(N_DRAWS))
    for node in range(3):
        assert abs(counts[node] / N_DRAWS - 1 / 3) < three_sigma(1 / 3)


def test_pa_select_global_star_hub_weight():
    # hub degree 4, leaves degree 1: hub probability 4/8
    g = make_graph(5, [(0, i) for i in range(1, 5)])
    index = indexed(g, [0] * 5)
    rng = RngStream(4)
    hub = sum(pa_select_global(index, rng) == 0 for _ in range(N_DRAWS))
    assert abs(hub / N_DRAWS - 0.5) < 0.005


def test_pa_select_global_empty_index():
    index = DegreeIndex(1)
    index.add_node(0, 0)
    with pytest.raises(NoCandidateError):
        pa_select_global(index, RngStream(0))


def test_pa_select_in_community_symmetry_and_exclusion():
    g = make_graph(3, [(0, 1), (0, 2), (1, 2)])
    index = indexed(g, [0, 0, 0])
    rng = RngStream(5)
    counts = Counter(pa_select_in_community(index, 0, set(), rng)
                     for _ in range(N_DRAWS))
    for node in range(3):
        assert abs(counts[node] / N_DRAWS - 1 / 3) < three_sigma(1 / 3)
    counts = Counter(pa_select_in_community(index, 0, {0}, rng)
                     for _ in range(N_DRAWS))
    assert counts[0] == 0
    for node in (1, 2):
        assert abs(counts[node] / N_DRAWS - 0.5) < three_sigma(0.5)


def test_pa_select_in_community_degree_weighted():
    # community 0: node 0 with degree 3, node 1 with degree 1
    g = make_graph(5, [(0, 2), (0, 3), (0, 4), (1, 2)])
    index = indexed(g, [0, 0, 1, 1, 1])
    rng = RngStream(6)
    hits = sum(pa_select_in_community(index, 0, set(), rng) == 0
               for _ in range(N_DRAWS))
    assert abs(hits / N_DRAWS - 0.75) < three_sigma(0.75)


def test_pa_select_in_community_exhausted():
    g = make_graph(3, [(0, 1), (0, 2), (1, 2)])
    index = indexed(g, [0, 0, 0])
    with pytest.raises(NoCandidateError):
        pa_select_in_community(index, 0, {0, 1, 2}, RngStream(0))


def test_pa_select_in_community_single_survivor():
    g = make_graph(4, [(0, 1), (0, 2), (0, 3), (1, 2)])
    index = indexed(g, [0] * 4)
    rng = RngStream(9)
    for _ in range(200):
        assert pa_select_in_community(index, 0, {0, 1, 2}, rng) == 3


def test_pa_select_neighbor_basics():
    g = make_graph(4, [(0, 1), (1, 2), (1, 3), (2, 3)],
                   labels=[0, 0, 0, 0])
    rng = RngStream(8)
    # node 0's only neighbor is 1
    for _ in range(50):
        assert pa_select_neighbor(g, 0, 0, set(), rng) == 1
    # node 1's neighbors 2 and 3 both have degree 2: split evenly
    counts = Counter(pa_select_neighbor(g, 1, 0, {0}, rng)
                     for _ in range(N_DRAWS))
    assert abs(counts[2] / N_DRAWS - 0.5) < three_sigma(0.5)


def test_pa_select_neighbor_degree_weighted():
    # u=0 adjacent to 1 (degree 1+...) and 2; engineer degrees 1 vs 3
    g = make_graph(5, [(0, 1), (0, 2), (2, 3), (2, 4)],
                   labels=[0, 0, 0, 0, 0])
    rng = RngStream(11)
    counts = Counter(pa_select_neighbor(g, 0, 0, set(), rng)
                     for _ in range(N_DRAWS))
    assert abs(counts[2] / N_DRAWS - 0.75) < three_sigma(0.75)


def test_pa_select_neighbor_respects_labels_and_exclusion():
    g = make_graph(3, [(0, 1), (0, 2)], labels=[0, 0, 1])
    rng = RngStream(12)
    assert pa_select_neighbor(g, 0, 0, set(), rng) == 1
    with pytest.raises(NoCandidateError):
        pa_select_neighbor(g, 0, 0, {1}, rng)
    with pytest.raises(NoCandidateError):
        pa_select_neighbor(g, 1, 1, set(), rng)


def test_pa_select_neighbor_hub_rejection_path_distribution():
    # Hub with enough neighbors to trip the rejection-sampling path; the
    # sampled distribution must stay degree-proportional.
    leaves = 80
    edges = [(0, i) for i in range(1, leaves + 1)]
    edges += [(1, i) for i in range(2, 12)]  # node 1: degree 11
    g = make_graph(leaves + 1, edges, labels=[0] * (leaves + 1))
    index = indexed(g, [0] * (leaves + 1))
    rng = RngStream(13)
    counts = Counter(pa_select_neighbor(g, 0, 0, set(), rng, index=index)
                     for _ in range(N_DRAWS))
    total_weight = sum(g.degree(v) for v in range(1, leaves + 1))
    expect_1 = g.degree(1) / total_weight
    assert abs(counts[1] / N_DRAWS - expect_1) < three_sigma(expect_1)
    expect_leaf = g.degree(20) / total_weight
    assert abs(counts[20] / N_DRAWS - expect_leaf) < 3 * three_sigma(expect_leaf)


def test_degree_index_audit_against_generated_graph():
    params = GenParams(n=150, m=3, c=4, p_t=0.6, p_c=0.3, seed=21)
    g, _ = generate(params)
    index = DegreeIndex(params.c)
    for u in range(g.node_count):
        index.add_node(u, g.label(u))
    for u, v in g.edges():
        index.add_edge(u, v)
    index.audit(g)
    assert index.total_tokens() == 2 * g.edge_count


def test_select_global_excluding_community():
    g = make_graph(6, [(0, 1), (0, 2), (3, 4), (3, 5), (0, 3)])
    index = indexed(g, [0, 0, 0, 1, 1, 1])
    rng = RngStream(17)
    draws = {index.select_global_excluding_community(0, rng)
             for _ in range(500)}
    assert draws <= {3, 4, 5}
    # conditional distribution renormalizes within the eligible community:
    # node 3 holds 3 of community 1's 5 degree tokens
    hits = sum(index.select_global_excluding_community(0, rng) == 3
               for _ in range(N_DRAWS))
    assert abs(hits / N_DRAWS - 3 / 5) < three_sigma(3 / 5)
