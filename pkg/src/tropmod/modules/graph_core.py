"""
Weighted Graph Core
===================

Data model for weighted leaf-labeled multigraphs and their basic
invariants: degree, connectivity, first Betti number, genus, stability and
regularity.

A graph has vertices carrying nonnegative integer weights, edges with
stable identifiers (loops and parallel edges allowed) and leaves labeled
1..n attached to vertices. Leaves are exterior half-edges: they count once
toward degree, never connect vertices and are never contracted.
"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..utils.errors import DomainError, IntegrityViolation


@dataclass(frozen=True)
class Edge:
    """An interior edge; ``ends`` is stored sorted, equal ends mean a loop."""
    id: str
    ends: Tuple[str, str]

    @classmethod
    def between(cls, edge_id: str, a: str, b: str) -> "Edge":
        return cls(id=edge_id, ends=(a, b) if a <= b else (b, a))

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class WeightedGraph:
    """
    Immutable weighted multigraph with labeled leaves.

    Build instances with ``WeightedGraph.build``; the mappings are not to be
    mutated after construction.
    """
    weights: Dict[str, int]
    edges: Dict[str, Edge]
    leaves: Dict[int, str]

    def __post_init__(self):
        for v, w in self.weights.items():
            if not isinstance(w, int) or w < 0:
                raise DomainError(f"vertex {v!r} has invalid weight {w!r}; weights must be integers >= 0")
        for eid, edge in self.edges.items():
            if eid != edge.id:
                raise DomainError(f"edge record {edge.id!r} stored under id {eid!r}")
            for end in edge.ends:
                if end not in self.weights:
                    raise DomainError(f"edge {eid!r} references unknown vertex {end!r}")
        labels = sorted(self.leaves)
        if labels != list(range(1, len(labels) + 1)):
            raise DomainError(f"leaf labels must be exactly 1..{len(labels)}, got {labels}")
        for label, v in self.leaves.items():
            if v not in self.weights:
                raise DomainError(f"leaf {label} is attached to unknown vertex {v!r}")

    @classmethod
    def build(cls,
              vertices: Mapping[str, int],
              edges: Iterable[Tuple[str, str, str]],
              leaves: Optional[Mapping[int, str]] = None) -> "WeightedGraph":
        """
        Construct a graph from plain records.

        Args:
            vertices: vertex id -> weight
            edges: (edge id, end, end) triples
            leaves: leaf label -> vertex id

        Returns:
            Validated WeightedGraph
        """
        edge_map: Dict[str, Edge] = {}
        for eid, a, b in edges:
            if eid in edge_map:
                raise DomainError(f"duplicate edge id {eid!r}")
            edge_map[eid] = Edge.between(eid, a, b)
        return cls(
            weights={v: vertices[v] for v in sorted(vertices)},
            edges={eid: edge_map[eid] for eid in sorted(edge_map)},
            leaves={label: (leaves or {})[label] for label in sorted(leaves or {})},
        )

    def __hash__(self) -> int:
        return hash((
            tuple(sorted(self.weights.items())),
            tuple(sorted((e.id, e.ends) for e in self.edges.values())),
            tuple(sorted(self.leaves.items())),
        ))

    @property
    def vertex_ids(self) -> List[str]:
        return sorted(self.weights)

    @property
    def edge_ids(self) -> List[str]:
        return sorted(self.edges)

    @property
    def n_leaves(self) -> int:
        return len(self.leaves)

    def leaves_at(self, v: str) -> Tuple[int, ...]:
        return tuple(sorted(label for label, at in self.leaves.items() if at == v))

    def to_networkx(self, edge_ids: Optional[Iterable[str]] = None) -> nx.MultiGraph:
        """All vertices, and the given edges (default: every edge), as a networkx multigraph."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.vertex_ids)
        for eid in (self.edge_ids if edge_ids is None else sorted(edge_ids)):
            a, b = self.edges[eid].ends
            graph.add_edge(a, b, key=eid)
        return graph


@dataclass(frozen=True)
class GraphStats:
    """Counts and the two genus-type invariants of a weighted graph."""
    num_vertices: int
    num_edges: int
    num_leaves: int
    num_components: int
    betti: int
    genus: int


def degree(g: WeightedGraph, v: str) -> int:
    """
    Degree of a vertex: non-loop incidences, twice the loops, once per leaf.

    Raises:
        DomainError: unknown vertex id
    """
    if v not in g.weights:
        raise DomainError(f"unknown vertex {v!r}")
    total = 0
    for edge in g.edges.values():
        if edge.is_loop:
            total += 2 if edge.ends[0] == v else 0
        else:
            total += edge.ends.count(v)
    return total + sum(1 for at in g.leaves.values() if at == v)


def connected_components(g: WeightedGraph, edge_ids: Optional[Iterable[str]] = None) -> List[FrozenSet[str]]:
    """
    Connected components over the given edges; leaves never connect.

    Components are sorted by their smallest vertex id.
    """
    components = [frozenset(c) for c in nx.connected_components(g.to_networkx(edge_ids))]
    return sorted(components, key=min)


def is_connected(g: WeightedGraph) -> bool:
    return len(connected_components(g)) <= 1


def stats(g: WeightedGraph) -> GraphStats:
    """Counts, first Betti number (|E| - |V| + components) and genus (Betti + total weight)."""
    components = len(connected_components(g))
    betti = len(g.edges) - len(g.weights) + components
    return GraphStats(
        num_vertices=len(g.weights),
        num_edges=len(g.edges),
        num_leaves=len(g.leaves),
        num_components=components,
        betti=betti,
        genus=betti + sum(g.weights.values()),
    )


def genus(g: WeightedGraph) -> int:
    return stats(g).genus


def check_stability_range(genus_value: int, n: int) -> None:
    """
    Require genus >= 0, n >= 0 and 2 - 2g - n < 0.

    Raises:
        DomainError: outside the stable range
    """
    if genus_value < 0 or n < 0:
        raise DomainError(f"genus and leaf count must be >= 0, got g={genus_value}, n={n}")
    if 2 - 2 * genus_value - n >= 0:
        raise DomainError(f"(g, n) = ({genus_value}, {n}) is not in the stable range 2 - 2g - n < 0")


def expected_counts(genus_value: int, n: int) -> Tuple[int, int]:
    """Vertex and edge counts of any regular tropicalization: (2g-2+n, 3g-3+n)."""
    check_stability_range(genus_value, n)
    return 2 * genus_value - 2 + n, 3 * genus_value - 3 + n


def is_regular_tropicalization(g: WeightedGraph, genus_value: int, n: int) -> bool:
    """
    Connected, 0-weighted, trivalent, of the given genus and with n leaves.

    Raises:
        DomainError: (genus_value, n) outside the stable range
        IntegrityViolation: a regular graph with the wrong vertex or edge count
    """
    check_stability_range(genus_value, n)
    if g.n_leaves != n or not is_connected(g):
        return False
    if any(w != 0 for w in g.weights.values()):
        return False
    if any(degree(g, v) != 3 for v in g.weights):
        return False
    if genus(g) != genus_value:
        return False

    num_vertices, num_edges = expected_counts(genus_value, n)
    if len(g.weights) != num_vertices or len(g.edges) != num_edges:
        raise IntegrityViolation(
            f"regular graph of type ({genus_value}, {n}) has |V|={len(g.weights)}, |E|={len(g.edges)}; "
            f"expected {num_vertices} and {num_edges}"
        )
    return True


def is_stable(g: WeightedGraph) -> bool:
    """Weight-0 vertices need degree >= 3, weight-1 vertices degree >= 1."""
    for v, w in g.weights.items():
        d = degree(g, v)
        if w == 0 and d < 3:
            return False
        if w == 1 and d < 1:
            return False
    return True


def spanning_subgraph(g: WeightedGraph, edge_ids: Iterable[str]) -> WeightedGraph:
    """All vertices, weights and leaves of ``g`` with only the given edges kept."""
    keep = set(edge_ids)
    unknown = keep - set(g.edges)
    if unknown:
        raise DomainError(f"unknown edge ids {sorted(unknown)}")
    return WeightedGraph(
        weights=dict(g.weights),
        edges={eid: g.edges[eid] for eid in g.edge_ids if eid in keep},
        leaves=dict(g.leaves),
    )


def relabel(g: WeightedGraph,
            vertex_names: Mapping[str, str],
            edge_names: Optional[Mapping[str, str]] = None) -> WeightedGraph:
    """Rename vertices and edges; leaf labels are untouched."""
    edge_names = edge_names or {eid: eid for eid in g.edges}
    if len(set(vertex_names.values())) != len(g.weights) or len(set(edge_names.values())) != len(g.edges):
        raise DomainError("relabeling must be injective on vertices and edges")
    return WeightedGraph.build(
        vertices={vertex_names[v]: w for v, w in g.weights.items()},
        edges=[(edge_names[e.id], vertex_names[e.ends[0]], vertex_names[e.ends[1]]) for e in g.edges.values()],
        leaves={label: vertex_names[v] for label, v in g.leaves.items()},
    )


def handshake_total(g: WeightedGraph) -> int:
    """2|E| + |leaves|, which the degrees must sum to."""
    return 2 * len(g.edges) + g.n_leaves


def multiplicities(g: WeightedGraph) -> Counter:
    """Number of edges per unordered endpoint pair (loops keyed by (v, v))."""
    return Counter(edge.ends for edge in g.edges.values())


# -- named graphs ------------------------------------------------------------

def theta_graph() -> WeightedGraph:
    """Two vertices joined by three parallel edges."""
    return WeightedGraph.build({"a": 0, "b": 0}, [("e1", "a", "b"), ("e2", "a", "b"), ("e3", "a", "b")])


def dumbbell_graph() -> WeightedGraph:
    """Two loops joined by a bridge."""
    return WeightedGraph.build({"a": 0, "b": 0}, [("bridge", "a", "b"), ("la", "a", "a"), ("lb", "b", "b")])


def vertex_graph(weight: int, n_leaves: int = 0) -> WeightedGraph:
    """A single vertex of the given weight carrying leaves 1..n."""
    return WeightedGraph.build({"v": weight}, [], {label: "v" for label in range(1, n_leaves + 1)})


NAMED_GRAPHS = {
    "theta": theta_graph,
    "dumbbell": dumbbell_graph,
}


def named_graph(name: str) -> Optional[WeightedGraph]:
    """
    Resolve ``theta``, ``dumbbell`` or ``vertex:<weight>[:<leaves>]``.

    Returns:
        The graph, or None when the name is not a known builtin
    """
    if name in NAMED_GRAPHS:
        return NAMED_GRAPHS[name]()
    if name.startswith("vertex:"):
        parts: Sequence[str] = name.split(":")[1:]
        try:
            numbers = [int(p) for p in parts]
        except ValueError:
            raise DomainError(f"malformed builtin graph name {name!r}; use vertex:<weight>[:<leaves>]")
        if len(numbers) not in (1, 2):
            raise DomainError(f"malformed builtin graph name {name!r}; use vertex:<weight>[:<leaves>]")
        return vertex_graph(*numbers)
    return None
