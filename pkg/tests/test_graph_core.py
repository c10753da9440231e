"""
Test Weighted Graph Core
========================
"""

import pytest

from tropmod.modules.graph_core import (
    WeightedGraph,
    check_stability_range,
    connected_components,
    degree,
    expected_counts,
    genus,
    handshake_total,
    is_connected,
    is_regular_tropicalization,
    is_stable,
    named_graph,
    relabel,
    spanning_subgraph,
    stats,
    vertex_graph,
)
from tropmod.utils.errors import DomainError


def test_theta_invariants(theta):
    s = stats(theta)
    assert (s.num_vertices, s.num_edges, s.num_components, s.betti, s.genus) == (2, 3, 1, 2, 2)
    assert degree(theta, "a") == 3


def test_loops_count_twice_and_leaves_once(dumbbell, loop_with_two_leaves):
    assert degree(dumbbell, "a") == 3
    assert degree(loop_with_two_leaves, "b") == 3
    assert degree(loop_with_two_leaves, "a") == 3


def test_degree_sum_matches_handshake(theta, dumbbell, loop_with_two_leaves, cycle_with_two_leaves):
    for g in (theta, dumbbell, loop_with_two_leaves, cycle_with_two_leaves):
        assert sum(degree(g, v) for v in g.vertex_ids) == handshake_total(g)


def test_unknown_vertex_is_a_domain_error(theta):
    with pytest.raises(DomainError):
        degree(theta, "z")


def test_genus_adds_weights():
    g = WeightedGraph.build({"a": 1, "b": 2}, [("e", "a", "b")])
    assert genus(g) == 3


def test_disconnected_graph():
    g = WeightedGraph.build({"a": 0, "b": 0}, [])
    assert not is_connected(g)
    assert connected_components(g) == [frozenset({"a"}), frozenset({"b"})]


def test_empty_graph_has_genus_zero():
    g = WeightedGraph.build({}, [])
    assert genus(g) == 0
    assert is_connected(g)


def test_regular_predicate(theta, dumbbell, loop_with_two_leaves, cycle_with_two_leaves):
    assert is_regular_tropicalization(theta, 2, 0)
    assert is_regular_tropicalization(dumbbell, 2, 0)
    assert is_regular_tropicalization(loop_with_two_leaves, 1, 2)
    assert is_regular_tropicalization(cycle_with_two_leaves, 1, 2)
    assert not is_regular_tropicalization(theta, 2, 1)
    assert not is_regular_tropicalization(vertex_graph(2), 2, 0)


def test_regular_predicate_rejects_unstable_type(theta):
    with pytest.raises(DomainError):
        is_regular_tropicalization(theta, 1, 0)


@pytest.mark.parametrize("g, n, counts", [(0, 3, (1, 0)), (2, 0, (2, 3)), (1, 2, (2, 2)), (0, 4, (2, 1))])
def test_expected_counts(g, n, counts):
    assert expected_counts(g, n) == counts


@pytest.mark.parametrize("g, n", [(0, 0), (0, 2), (1, 0), (-1, 5)])
def test_stability_range(g, n):
    with pytest.raises(DomainError):
        check_stability_range(g, n)


def test_stability():
    assert is_stable(vertex_graph(2))
    assert is_stable(vertex_graph(1, 1))
    assert not is_stable(vertex_graph(0, 2))
    assert not is_stable(vertex_graph(1))
    bridge = WeightedGraph.build({"a": 0, "b": 1}, [("e", "a", "b")])
    assert not is_stable(bridge)


def test_invalid_graphs_are_rejected():
    with pytest.raises(DomainError):
        WeightedGraph.build({"a": -1}, [])
    with pytest.raises(DomainError):
        WeightedGraph.build({"a": 0}, [("e", "a", "z")])
    with pytest.raises(DomainError):
        WeightedGraph.build({"a": 0}, [], {2: "a"})
    with pytest.raises(DomainError):
        WeightedGraph.build({"a": 0}, [("e", "a", "a"), ("e", "a", "a")])


def test_spanning_subgraph_keeps_vertices(theta):
    sub = spanning_subgraph(theta, ["e1"])
    assert sub.vertex_ids == ["a", "b"]
    assert sub.edge_ids == ["e1"]


def test_relabel_preserves_invariants(dumbbell):
    renamed = relabel(dumbbell, {"a": "x", "b": "y"}, {"bridge": "m", "la": "p", "lb": "q"})
    assert stats(renamed) == stats(dumbbell)
    assert renamed.edges["p"].ends == ("x", "x")


def test_named_graphs():
    assert named_graph("theta").edge_ids == ["e1", "e2", "e3"]
    assert named_graph("vertex:2").weights == {"v": 2}
    assert named_graph("vertex:0:3").n_leaves == 3
    assert named_graph("some/file.json") is None
    with pytest.raises(DomainError):
        named_graph("vertex:x")
