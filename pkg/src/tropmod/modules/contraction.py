"""
Weighted Contraction
====================

Contracting an edge set Q removes the edges of Q and identifies their
endpoints. Each new vertex takes the weight of its collapsed preimage: the
first Betti number of the preimage subgraph plus the weights it absorbs.
Genus is preserved, and the Betti numbers split as

    b1(G - E1) = sum over new vertices of b1(preimage)      (E1 = E \\ Q)
    b1(G)      = b1(G/Q) + b1(G - E1)

Both identities are checked for every contraction performed.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Tuple

from loguru import logger

from ..utils.errors import DomainError, IntegrityViolation
from .graph_core import WeightedGraph, connected_components, genus, spanning_subgraph, stats
from .isomorphism import Isomorphism, are_isomorphic, canonical_form


def merged_vertex_id(members: Iterable[str]) -> str:
    """Identifier of a contracted vertex: the sorted source ids joined by ``+``."""
    return "+".join(sorted(members))


@dataclass(frozen=True)
class Contraction:
    """A weighted contraction together with its witnessing maps."""
    source: WeightedGraph
    q: FrozenSet[str]
    result: WeightedGraph
    vertex_map: Dict[str, str]
    edge_map: Dict[str, str]
    leaf_map: Dict[int, int]

    def preimage(self, v: str) -> FrozenSet[str]:
        return frozenset(u for u, image in self.vertex_map.items() if image == v)

    def then(self, edge_ids: Iterable[str]) -> "Contraction":
        """Contract further, by edges of ``result``."""
        return contract(self.result, edge_ids)


@dataclass(frozen=True)
class BettiDecomposition:
    """Betti numbers of the contracted graph, of G - E1, and of each preimage."""
    b1_contracted: int
    b1_removed: int
    per_vertex: Dict[str, int]


def contract(g: WeightedGraph, q: Iterable[str]) -> Contraction:
    """
    Weighted contraction of ``g`` by the edge set ``q``.

    Args:
        g: Source graph
        q: Edge ids to contract

    Returns:
        Contraction with vertex, edge and leaf maps

    Raises:
        DomainError: unknown edge id
        IntegrityViolation: genus not preserved, or a Betti identity fails
    """
    q_set = frozenset(q)
    unknown = q_set - set(g.edges)
    if unknown:
        raise DomainError(f"cannot contract unknown edge ids {sorted(unknown)}")

    vertex_map: Dict[str, str] = {}
    weights: Dict[str, int] = {}
    for component in connected_components(g, q_set):
        new_id = merged_vertex_id(component)
        inner_edges = sum(1 for eid in q_set if g.edges[eid].ends[0] in component)
        betti = inner_edges - len(component) + 1
        weights[new_id] = betti + sum(g.weights[v] for v in component)
        for v in component:
            vertex_map[v] = new_id

    surviving = [eid for eid in g.edge_ids if eid not in q_set]
    result = WeightedGraph.build(
        vertices=weights,
        edges=[(eid, vertex_map[g.edges[eid].ends[0]], vertex_map[g.edges[eid].ends[1]]) for eid in surviving],
        leaves={label: vertex_map[v] for label, v in g.leaves.items()},
    )
    contraction = Contraction(
        source=g,
        q=q_set,
        result=result,
        vertex_map=vertex_map,
        edge_map={eid: eid for eid in surviving},
        leaf_map={label: label for label in g.leaves},
    )

    if genus(result) != genus(g):
        logger.error(f"genus changed from {genus(g)} to {genus(result)} contracting {sorted(q_set)}")
        raise IntegrityViolation(f"weighted contraction by {sorted(q_set)} did not preserve genus")
    betti_decomposition(contraction)
    return contraction


def betti_decomposition(c: Contraction) -> BettiDecomposition:
    """
    Split b1(source) into the contracted graph's b1 and the preimages' b1.

    Raises:
        IntegrityViolation: either identity fails
    """
    removed_subgraph = spanning_subgraph(c.source, c.q)
    per_vertex: Dict[str, int] = {}
    for v in c.result.vertex_ids:
        members = c.preimage(v)
        inner = sum(1 for eid in c.q if c.source.edges[eid].ends[0] in members)
        per_vertex[v] = inner - len(members) + 1

    b1_removed = stats(removed_subgraph).betti
    b1_contracted = stats(c.result).betti
    if b1_removed != sum(per_vertex.values()):
        raise IntegrityViolation(
            f"b1(G - E1) = {b1_removed} but preimages sum to {sum(per_vertex.values())}"
        )
    if stats(c.source).betti != b1_contracted + b1_removed:
        raise IntegrityViolation(
            f"b1(G) = {stats(c.source).betti} != {b1_contracted} + {b1_removed}"
        )
    return BettiDecomposition(b1_contracted=b1_contracted, b1_removed=b1_removed, per_vertex=per_vertex)


def edge_image(c: Contraction, r: Iterable[str]) -> FrozenSet[str]:
    """
    Image of a source edge set disjoint from ``q`` in the contracted graph.

    Raises:
        DomainError: ``r`` meets the contracted edges
    """
    r_set = frozenset(r)
    if r_set & c.q:
        raise DomainError(f"edges {sorted(r_set & c.q)} were contracted and have no image")
    return frozenset(c.edge_map[eid] for eid in r_set)


def is_weighted_contraction_of(a: WeightedGraph, b: WeightedGraph) -> Optional[Tuple[FrozenSet[str], Isomorphism]]:
    """
    Find q with contract(b, q).result isomorphic to ``a``.

    Subsets are tried in sorted-id order; since a contraction by q removes
    exactly |q| edges, only |q| = |E(b)| - |E(a)| can succeed.

    Returns:
        (q, isomorphism from the contraction result to ``a``), or None
    """
    if genus(a) != genus(b) or sorted(a.leaves) != sorted(b.leaves):
        return None
    size = len(b.edges) - len(a.edges)
    if size < 0 or len(a.weights) > len(b.weights):
        return None

    target = canonical_form(a)
    for q in itertools.combinations(b.edge_ids, size):
        contracted = contract(b, q).result
        if canonical_form(contracted) != target:
            continue
        iso = are_isomorphic(contracted, a)
        if iso is not None:
            return frozenset(q), iso
    return None
