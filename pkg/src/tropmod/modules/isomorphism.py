"""
Isomorphism and Automorphisms
=============================

Canonical forms, isomorphism witnesses and full automorphism groups of
weighted leaf-labeled multigraphs.

An isomorphism is a vertex bijection plus an edge bijection that commute
with the endpoint map, preserve weights and fix every leaf label. The
canonical form is the lexicographically smallest adjacency encoding over
the vertex orderings reachable by individualization and color refinement,
so equal keys mean isomorphic graphs and nothing weaker.
"""

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from loguru import logger
from sympy.combinatorics import Permutation

from ..utils.errors import IntegrityViolation, ScaleLimitError
from .graph_core import WeightedGraph

MAX_VERTICES = 16

CanonicalKey = bytes


@dataclass(frozen=True)
class Isomorphism:
    """Vertex, edge and leaf bijections; the leaf bijection is always the identity on labels."""
    vertex_map: Dict[str, str]
    edge_map: Dict[str, str]
    leaf_map: Dict[int, int]

    def __hash__(self) -> int:
        return hash(self.signature())

    def signature(self) -> Tuple:
        return (tuple(sorted(self.vertex_map.items())), tuple(sorted(self.edge_map.items())))

    def compose(self, first: "Isomorphism") -> "Isomorphism":
        """``self`` after ``first``."""
        return Isomorphism(
            vertex_map={v: self.vertex_map[first.vertex_map[v]] for v in first.vertex_map},
            edge_map={e: self.edge_map[first.edge_map[e]] for e in first.edge_map},
            leaf_map={label: self.leaf_map[first.leaf_map[label]] for label in first.leaf_map},
        )

    def inverse(self) -> "Isomorphism":
        return Isomorphism(
            vertex_map={b: a for a, b in self.vertex_map.items()},
            edge_map={b: a for a, b in self.edge_map.items()},
            leaf_map={b: a for a, b in self.leaf_map.items()},
        )

    def fixes_every_edge(self) -> bool:
        return all(a == b for a, b in self.edge_map.items())

    def edge_action(self) -> Tuple[Tuple[str, str], ...]:
        return tuple(sorted(self.edge_map.items()))


def identity_isomorphism(g: WeightedGraph) -> Isomorphism:
    return Isomorphism(
        vertex_map={v: v for v in g.weights},
        edge_map={e: e for e in g.edges},
        leaf_map={label: label for label in g.leaves},
    )


def is_isomorphism(a: WeightedGraph, b: WeightedGraph, iso: Isomorphism) -> bool:
    """Check bijectivity, weights, fixed leaf labels and the commuting endpoint diagram."""
    if sorted(iso.vertex_map) != a.vertex_ids or sorted(iso.vertex_map.values()) != b.vertex_ids:
        return False
    if sorted(iso.edge_map) != a.edge_ids or sorted(iso.edge_map.values()) != b.edge_ids:
        return False
    if any(iso.leaf_map.get(label) != label for label in a.leaves) or sorted(a.leaves) != sorted(b.leaves):
        return False
    for v, w in a.weights.items():
        if b.weights[iso.vertex_map[v]] != w:
            return False
    for label, v in a.leaves.items():
        if b.leaves[label] != iso.vertex_map[v]:
            return False
    for eid, edge in a.edges.items():
        image = tuple(sorted(iso.vertex_map[end] for end in edge.ends))
        if b.edges[iso.edge_map[eid]].ends != image:
            return False
    return True


def verify_isomorphism(a: WeightedGraph, b: WeightedGraph, iso: Isomorphism) -> Isomorphism:
    """
    Return ``iso`` after checking it edge by edge.

    Raises:
        IntegrityViolation: the witness does not commute with the endpoint maps
    """
    if not is_isomorphism(a, b, iso):
        logger.error(f"isomorphism witness failed verification: {iso.signature()}")
        raise IntegrityViolation("computed isomorphism witness does not commute with the endpoint maps")
    return iso


# -- color refinement ----------------------------------------------------------

def _neighbours(g: WeightedGraph) -> Tuple[Dict[str, Counter], Counter]:
    nbrs: Dict[str, Counter] = {v: Counter() for v in g.weights}
    loops: Counter = Counter()
    for edge in g.edges.values():
        a, b = edge.ends
        if a == b:
            loops[a] += 1
        else:
            nbrs[a][b] += 1
            nbrs[b][a] += 1
    return nbrs, loops


def _rank(values: Mapping[str, Any]) -> Dict[str, int]:
    order = {value: i for i, value in enumerate(sorted(set(values.values())))}
    return {v: order[value] for v, value in values.items()}


def _refine(nbrs: Mapping[str, Counter], colors: Mapping[str, Any]) -> Dict[str, int]:
    current = _rank(colors)
    while True:
        signature = {
            v: (current[v], tuple(sorted((current[u], m) for u, m in nbrs[v].items())))
            for v in current
        }
        refined = _rank(signature)
        if len(set(refined.values())) == len(set(current.values())):
            return refined
        current = refined


def _encode(g: WeightedGraph, loops: Counter, ordering: Sequence[str]) -> Tuple:
    pairs = Counter(edge.ends for edge in g.edges.values() if not edge.is_loop)
    vertices = tuple((g.weights[v], g.leaves_at(v), loops[v]) for v in ordering)
    adjacency = tuple(
        pairs[tuple(sorted((ordering[i], ordering[j])))]
        for i in range(len(ordering)) for j in range(i + 1, len(ordering))
    )
    return len(ordering), vertices, adjacency


def _discrete_orderings(nbrs: Mapping[str, Counter], colors: Mapping[str, Any]) -> Iterator[List[str]]:
    refined = _refine(nbrs, colors)
    cells: Dict[int, List[str]] = defaultdict(list)
    for v, c in refined.items():
        cells[c].append(v)
    open_cells = [c for c in sorted(cells) if len(cells[c]) > 1]
    if not open_cells:
        yield sorted(refined, key=refined.__getitem__)
        return
    target = open_cells[0]
    for v in sorted(cells[target]):
        individualized = {u: (c, 0 if u == v else 1) for u, c in refined.items()}
        yield from _discrete_orderings(nbrs, individualized)


@lru_cache(maxsize=8192)
def _canonical(g: WeightedGraph) -> Tuple[Tuple, Tuple[Tuple[str, ...], ...]]:
    if len(g.weights) > MAX_VERTICES:
        raise ScaleLimitError("canonical form needs |V| <= 16", limit=MAX_VERTICES, actual=len(g.weights))
    nbrs, loops = _neighbours(g)
    initial = {
        v: (g.weights[v], len(g.leaves_at(v)), g.leaves_at(v), loops[v], sum(nbrs[v].values()))
        for v in g.weights
    }
    best: Optional[Tuple] = None
    winners: List[Tuple[str, ...]] = []
    for ordering in _discrete_orderings(nbrs, initial):
        code = _encode(g, loops, ordering)
        if best is None or code < best:
            best, winners = code, [tuple(ordering)]
        elif code == best:
            winners.append(tuple(ordering))
    return best, tuple(winners)


def canonical_form(g: WeightedGraph) -> CanonicalKey:
    """
    Isomorphism-invariant byte key (weights and leaf labels respected).

    Raises:
        ScaleLimitError: more than 16 vertices
    """
    code, _ = _canonical(g)
    return repr(code).encode("ascii")


def _edge_classes(g: WeightedGraph) -> Dict[Tuple[str, str], List[str]]:
    classes: Dict[Tuple[str, str], List[str]] = defaultdict(list)
    for eid in g.edge_ids:
        classes[g.edges[eid].ends].append(eid)
    return classes


def are_isomorphic(a: WeightedGraph, b: WeightedGraph) -> Optional[Isomorphism]:
    """
    A verified isomorphism witness, or None.

    Vertices are matched through canonical orderings; parallel edges are
    paired in sorted id order.
    """
    if (len(a.weights), len(a.edges), sorted(a.leaves)) != (len(b.weights), len(b.edges), sorted(b.leaves)):
        return None
    code_a, orderings_a = _canonical(a)
    code_b, orderings_b = _canonical(b)
    if code_a != code_b:
        return None

    vertex_map = dict(zip(orderings_a[0], orderings_b[0]))
    classes_b = _edge_classes(b)
    edge_map: Dict[str, str] = {}
    for ends, eids in _edge_classes(a).items():
        image = tuple(sorted(vertex_map[v] for v in ends))
        edge_map.update(zip(eids, classes_b[image]))
    iso = Isomorphism(vertex_map=vertex_map, edge_map=edge_map, leaf_map={label: label for label in a.leaves})
    return verify_isomorphism(a, b, iso)


# -- automorphism groups -------------------------------------------------------

def _element_key(iso: Isomorphism, g: WeightedGraph) -> Tuple:
    return (
        tuple(iso.vertex_map[v] for v in g.vertex_ids),
        tuple(iso.edge_map[e] for e in g.edge_ids),
    )


def cycle_notation(mapping: Mapping[Any, Any], domain: Sequence[Any]) -> str:
    """Render a permutation of ``domain`` in cycle notation, e.g. ``(e1 e2)``; identity is ``()``."""
    index = {x: i for i, x in enumerate(domain)}
    perm = Permutation([index[mapping[x]] for x in domain], size=len(domain))
    cycles = perm.cyclic_form
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(domain[i]) for i in cycle) + ")" for cycle in cycles)


@dataclass(frozen=True)
class AutGroup:
    """
    Automorphism group with its image in the symmetric group on edges.

    ``elements`` is the complete, deterministically ordered element list;
    ``edge_action`` holds the distinct edge permutations; ``kernel_size``
    counts elements fixing every edge.
    """
    graph: WeightedGraph
    elements: Tuple[Isomorphism, ...]
    edge_action: Tuple[Tuple[Tuple[str, str], ...], ...]
    kernel_size: int

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def edge_action_order(self) -> int:
        return len(self.edge_action)

    def _closure(self, gens: Sequence[Isomorphism]) -> set:
        identity = identity_isomorphism(self.graph)
        seen = {identity.signature()}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = s.compose(x)
                    if y.signature() not in seen:
                        seen.add(y.signature())
                        nxt.append(y)
            frontier = nxt
        return seen

    def generators(self) -> List[Isomorphism]:
        """A generating set, chosen greedily in element order."""
        gens: List[Isomorphism] = []
        generated = self._closure(gens)
        for element in self.elements:
            if element.signature() not in generated:
                gens.append(element)
                generated = self._closure(gens)
        return gens

    def describe(self, element: Isomorphism) -> str:
        vertices = cycle_notation(element.vertex_map, self.graph.vertex_ids)
        edges = cycle_notation(element.edge_map, self.graph.edge_ids)
        return f"V:{vertices} E:{edges}"

    def is_group(self) -> bool:
        """Closure under composition and inverses, checked element-wise."""
        members = {x.signature() for x in self.elements}
        for x in self.elements:
            if x.inverse().signature() not in members:
                return False
            for y in self.elements:
                if x.compose(y).signature() not in members:
                    return False
        return True


def automorphisms(g: WeightedGraph) -> AutGroup:
    """
    The full automorphism group.

    Vertex automorphisms come from the canonical orderings that realize the
    minimal encoding; each is extended by every bijection of parallel-edge
    classes.

    Raises:
        IntegrityViolation: an element fails verification or the orbit count
            |elements| = |edge action| * kernel does not hold
    """
    _, orderings = _canonical(g)
    anchor = orderings[0]
    vertex_maps = {tuple(sorted(zip(anchor, ordering))) for ordering in orderings}

    classes = _edge_classes(g)
    elements: Dict[Tuple, Isomorphism] = {}
    for items in sorted(vertex_maps):
        vertex_map = dict(items)
        per_class = []
        for ends, eids in sorted(classes.items()):
            image = classes[tuple(sorted(vertex_map[v] for v in ends))]
            per_class.append([list(zip(eids, perm)) for perm in itertools.permutations(image)])
        for choice in itertools.product(*per_class):
            edge_map = {a: b for pairs in choice for a, b in pairs}
            iso = Isomorphism(vertex_map=vertex_map, edge_map=edge_map,
                              leaf_map={label: label for label in g.leaves})
            verify_isomorphism(g, g, iso)
            elements[_element_key(iso, g)] = iso

    ordered = tuple(elements[k] for k in sorted(elements))
    actions = tuple(sorted({iso.edge_action() for iso in ordered}))
    kernel = sum(1 for iso in ordered if iso.fixes_every_edge())
    if len(ordered) != len(actions) * kernel:
        raise IntegrityViolation(
            f"automorphism count {len(ordered)} != edge action {len(actions)} x kernel {kernel}"
        )
    return AutGroup(graph=g, elements=ordered, edge_action=actions, kernel_size=kernel)
