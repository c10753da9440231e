"""
Test Isomorphism and Automorphisms
==================================
"""

import itertools
import json
from pathlib import Path

import pytest

from oracles import brute_force_automorphism_count, brute_force_isomorphic
from tropmod.modules.contraction import contract
from tropmod.modules.generation import enumerate_regular, enumerate_stable_weighted
from tropmod.modules.graph_core import WeightedGraph, relabel, vertex_graph
from tropmod.modules.isomorphism import (
    are_isomorphic,
    automorphisms,
    canonical_form,
    cycle_notation,
    identity_isomorphism,
    is_isomorphism,
)
from tropmod.utils.errors import ScaleLimitError

GOLDEN = Path(__file__).parent / "golden"


ORACLE_TYPES = [(0, 3), (0, 4), (0, 5), (0, 6), (1, 1), (1, 2), (1, 3), (1, 4), (2, 0), (2, 1), (2, 2), (3, 0)]


def _corpus():
    """Up to two differently labeled witnesses of every contraction class over the regular graphs of each type."""
    graphs = []
    for g, n in ORACLE_TYPES:
        seen = {}
        for base in enumerate_regular(g, n):
            for size in range(len(base.edges) + 1):
                for q in itertools.combinations(base.edge_ids, size):
                    result = contract(base, q).result
                    witnesses = seen.setdefault(canonical_form(result), [])
                    if len(witnesses) < 2 and result not in witnesses:
                        witnesses.append(result)
        graphs.extend(graph for witnesses in seen.values() for graph in witnesses)
    return graphs


@pytest.mark.parametrize("name, fixture", [("theta", "theta"), ("dumbbell", "dumbbell")])
def test_golden_automorphism_groups(name, fixture, request):
    golden = json.loads((GOLDEN / f"{name}.json").read_text())["aut"]
    group = automorphisms(request.getfixturevalue(fixture))
    assert group.order == golden["order"]
    assert group.edge_action_order == golden["edgeActionOrder"]
    assert group.kernel_size == golden["kernelSize"]
    assert group.is_group()


def test_relabeled_graph_has_same_key(dumbbell):
    renamed = relabel(dumbbell, {"a": "z", "b": "y"}, {"bridge": "m", "la": "p", "lb": "q"})
    assert canonical_form(renamed) == canonical_form(dumbbell)
    iso = are_isomorphic(dumbbell, renamed)
    assert iso is not None and is_isomorphism(dumbbell, renamed, iso)


def test_weights_and_leaf_labels_distinguish():
    assert canonical_form(vertex_graph(1)) != canonical_form(vertex_graph(2))
    a = WeightedGraph.build({"u": 0, "v": 0}, [("e", "u", "v")], {1: "u", 2: "u", 3: "v", 4: "v"})
    b = WeightedGraph.build({"u": 0, "v": 0}, [("e", "u", "v")], {1: "u", 3: "u", 2: "v", 4: "v"})
    assert canonical_form(a) != canonical_form(b)
    assert are_isomorphic(a, b) is None


def test_theta_generators_generate_the_group(theta):
    group = automorphisms(theta)
    gens = group.generators()
    assert 1 <= len(gens) <= 3
    assert len(group._closure(gens)) == group.order


def test_cycle_notation():
    assert cycle_notation({"a": "b", "b": "a", "c": "c"}, ["a", "b", "c"]) == "(a b)"
    assert cycle_notation({"a": "a"}, ["a"]) == "()"


def test_identity_describes_as_empty_cycles(theta):
    group = automorphisms(theta)
    assert group.describe(identity_isomorphism(theta)) == "V:() E:()"


def test_too_many_vertices_is_refused():
    path = WeightedGraph.build({f"v{i:02d}": 0 for i in range(17)},
                               [(f"e{i:02d}", f"v{i:02d}", f"v{i + 1:02d}") for i in range(16)])
    with pytest.raises(ScaleLimitError):
        canonical_form(path)


def test_canonical_form_agrees_with_brute_force():
    corpus = [g for g in _corpus() if len(g.weights) <= 6]
    by_shape = {}
    for g in corpus:
        by_shape.setdefault((len(g.weights), len(g.edges), g.n_leaves), []).append(g)
    same_key_pairs = 0
    for group in by_shape.values():
        for a, b in itertools.combinations(group, 2):
            same_key = canonical_form(a) == canonical_form(b)
            assert same_key == brute_force_isomorphic(a, b)
            same_key_pairs += same_key
    assert same_key_pairs > 0


def test_automorphism_orders_agree_with_brute_force():
    for g in enumerate_stable_weighted(2, 0) + enumerate_regular(1, 2) + enumerate_regular(0, 4):
        group = automorphisms(g)
        assert group.order == brute_force_automorphism_count(g)
        assert group.order == group.edge_action_order * group.kernel_size
