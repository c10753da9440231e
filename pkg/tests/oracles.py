"""Brute-force isomorphism over all vertex bijections, independent of canonical forms."""

import itertools

from tropmod.modules.graph_core import WeightedGraph, multiplicities


def _pair(a: str, b: str):
    return (a, b) if a <= b else (b, a)


def brute_force_isomorphic(a: WeightedGraph, b: WeightedGraph) -> bool:
    if (len(a.weights), len(a.edges), sorted(a.leaves)) != (len(b.weights), len(b.edges), sorted(b.leaves)):
        return False
    mult_a, mult_b = multiplicities(a), multiplicities(b)
    source = a.vertex_ids
    for image in itertools.permutations(b.vertex_ids):
        f = dict(zip(source, image))
        if any(a.weights[v] != b.weights[f[v]] for v in source):
            continue
        if any(f[at] != b.leaves[label] for label, at in a.leaves.items()):
            continue
        if all(mult_b.get(_pair(f[x], f[y]), 0) == count for (x, y), count in mult_a.items()) \
                and sum(mult_a.values()) == sum(mult_b.values()):
            return True
    return False


def brute_force_automorphism_count(g: WeightedGraph) -> int:
    """|Aut| counted as vertex bijections times the edge permutations inside each parallel class."""
    from math import factorial

    mult = multiplicities(g)
    per_vertex_map = 1
    for count in mult.values():
        per_vertex_map *= factorial(count)
    vertex_maps = 0
    for image in itertools.permutations(g.vertex_ids):
        f = dict(zip(g.vertex_ids, image))
        if any(g.weights[v] != g.weights[f[v]] for v in g.vertex_ids):
            continue
        if any(f[at] != at for at in g.leaves.values()):
            continue
        if all(mult.get(_pair(f[x], f[y]), 0) == count for (x, y), count in mult.items()):
            vertex_maps += 1
    return vertex_maps * per_vertex_map
