import numpy as np
import pytest
from numpy.testing import assert_array_equal

from ctqw import graph
from ctqw.errors import GraphError


def test_add_edge_real_weight():
    g = graph.Graph(2)
    g = graph.add_edge(g, 0, 1, 1)
    a = g.adjacency()
    assert a[0, 1] == 1 and a[1, 0] == 1


def test_add_edge_imaginary_weight_hermitian():
    g = graph.add_edge(graph.Graph(2), 0, 1, 1j)
    a = g.adjacency()
    assert a[0, 1] == 1j and a[1, 0] == -1j


def test_self_loop_rejected():
    with pytest.raises(GraphError):
        graph.add_edge(graph.Graph(1), 0, 0, 1)


def test_duplicate_edge_rejected():
    g = graph.add_edge(graph.Graph(2), 0, 1, 1)
    with pytest.raises(GraphError):
        graph.add_edge(g, 1, 0, 1j)


def test_bad_weight_rejected():
    with pytest.raises(GraphError):
        graph.add_edge(graph.Graph(2), 0, 1, 2.0)


def test_adjacency_exactly_hermitian():
    g = graph.Graph.from_edges(4, [(0, 1, 1j), (1, 2, -1j), (2, 3, 1), (3, 0, 1j)])
    a = g.adjacency()
    assert_array_equal(a, a.conj().T)


def test_conjugate_flips_weights():
    g = graph.Graph.from_edges(2, [(0, 1, 1j)])
    gc = g.conjugate()
    assert gc.adjacency()[0, 1] == -1j


def test_conjugate_involution():
    g = graph.Graph.from_edges(3, [(0, 1, 1j), (1, 2, -1j)])
    assert g.conjugate().conjugate().edges == g.edges


def test_conjugate_fixes_real_graph():
    g = graph.Graph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert g.conjugate().edges == g.edges


@pytest.mark.parametrize("variant,n,m", [(1, 6, 3), (2, 7, 4), (3, 7, 4)])
def test_roundabout_sizes(variant, n, m):
    r = graph.roundabout_region(variant, "left")
    assert r.n_terminals == 3
    assert len(r.internal) == m
    assert r.region.num_vertices == n


@pytest.mark.parametrize("variant", [1, 2, 3])
def test_roundabout_right_is_elementwise_conjugate(variant):
    left = graph.roundabout_region(variant, "left").region.adjacency()
    right = graph.roundabout_region(variant, "right").region.adjacency()
    assert_array_equal(right, left.conj())


def test_roundabout_unknown_variant():
    with pytest.raises(GraphError):
        graph.roundabout_region(4, "left")


@pytest.mark.parametrize("variant", [1, 2, 3])
def test_partition_blocks_hermitian_and_reassemble(variant):
    r = graph.roundabout_region(variant, "left")
    A, B, D = graph.partition(r)
    assert_array_equal(A, A.conj().T)
    assert_array_equal(D, D.conj().T)
    order = list(r.terminals) + list(r.internal)
    assert_array_equal(graph.assemble(A, B, D), r.region.adjacency()[np.ix_(order, order)])


def test_partition_no_internal():
    r = graph.ScatteringRegion(graph.Graph.from_edges(2, [(0, 1, 1)]), (0, 1))
    A, B, D = graph.partition(r)
    assert B.shape == (0, 2) and D.shape == (0, 0)


def test_json_round_trip():
    r = graph.roundabout_region(2, "left")
    text = graph.to_json(r.region, r.terminals)
    g2, terms = graph.from_json(text)
    assert terms == (0, 1, 2)
    assert g2.edges == r.region.edges
    assert "0.0" not in text  # weights serialized as exact integer pairs
