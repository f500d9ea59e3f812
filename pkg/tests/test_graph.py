import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growgraph.graph import Graph, Partition, induced_subgraph

from conftest import make_graph, path_graph, triangle


def test_add_node_sequential_ids():
    g = Graph()
    assert g.add_node() == 0
    assert g.degree(0) == 0
    for _ in range(3):
        g.add_node()
    assert g.add_node() == 4
    assert g.node_count == 5


def test_label_round_trip():
    g = Graph()
    g.add_node()
    g.add_node(2)
    assert g.label(0) is None
    assert g.label(1) == 2


def test_add_edge_insert_and_duplicate():
    g = make_graph(2, [])
    assert g.add_edge(0, 1) is True
    assert g.edge_count == 1
    assert g.add_edge(0, 1) is False
    assert g.add_edge(1, 0) is False
    assert g.edge_count == 1


def test_add_edge_rejects_self_loop_and_unknown():
    g = make_graph(2, [])
    with pytest.raises(ValueError, match="self-loop"):
        g.add_edge(0, 0)
    with pytest.raises(ValueError, match="unknown"):
        g.add_edge(0, 7)


def test_degree_examples():
    g = make_graph(1, [])
    assert g.degree(0) == 0
    assert triangle().degree(0) == 2
    star = make_graph(5, [(0, i) for i in range(1, 5)])
    assert star.degree(0) == 4
    with pytest.raises(ValueError):
        star.degree(99)


def test_neighbors_sorted_and_exact():
    t = triangle()
    assert t.neighbors(0) == [1, 2]
    assert make_graph(1, []).neighbors(0) == []
    p = path_graph(3)
    assert p.neighbors(1) == [0, 2]
    g = make_graph(4, [(2, 0), (2, 3), (2, 1)])
    assert g.neighbors(2) == [0, 1, 3]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 11), st.integers(0, 11)), max_size=60))
def test_invariants_hold_after_any_edge_sequence(pairs):
    g = Graph()
    for _ in range(12):
        g.add_node()
    for u, v in pairs:
        if u != v:
            g.add_edge(u, v)
        g.check_invariants()
    assert sum(g.degree(u) for u in range(12)) == 2 * g.edge_count


def test_edges_sorted_and_csr_consistent():
    g = make_graph(4, [(3, 1), (0, 2), (1, 0)])
    assert g.edges() == [(0, 1), (0, 2), (1, 3)]
    indptr, indices = g.to_csr()
    assert indptr.tolist() == [0, 2, 4, 5, 6]
    assert indices.tolist() == [1, 2, 0, 3, 0, 1]
    assert indptr.dtype == np.int64


def test_is_connected():
    assert triangle().is_connected()
    assert not make_graph(4, [(0, 1), (2, 3)]).is_connected()
    assert Graph().is_connected()


def test_induced_subgraph_preserves_structure_and_labels():
    g = make_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)],
                   labels=[0, 0, 0, 1, 1])
    sub = induced_subgraph(g, [0, 1, 2])
    assert sub.node_count == 3
    assert sub.edges() == [(0, 1), (0, 2), (1, 2)]
    assert [sub.label(i) for i in range(3)] == [0, 0, 0]


def test_ground_truth_partition():
    g = make_graph(4, [(0, 1), (2, 3)], labels=[0, 0, 1, 1])
    p = g.ground_truth_partition()
    assert p is not None and p.kind == "ground-truth"
    assert p.groups == [[0, 1], [2, 3]]
    assert make_graph(2, []).ground_truth_partition() is None


def test_partition_consistency_and_top_groups():
    p = Partition([5, 5, 9, 5, 9, 7])
    assert p.group_count == 3
    assert p.groups == [[0, 1, 3], [2, 4], [5]]
    assert p.sizes() == [3, 2, 1]
    assert [p.group_of(i) for i in range(6)] == [0, 0, 1, 0, 1, 2]
    assert p.top_groups(2) == [0, 1]
    # ties broken by group id
    q = Partition([0, 0, 1, 1, 2])
    assert q.top_groups(3) == [0, 1, 2]
