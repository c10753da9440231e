"""
Graph Enumeration
=================

Regular tropicalizations (connected, trivalent, 0-weighted, genus g, n
labeled leaves) and stable weighted graphs of type (g, n), one
representative per isomorphism class, ordered by canonical key.

Each census has two structurally different generators:

- regular graphs: half-edge pairing over set-partition leaf placements
  (primary) and edge-multiset filtering with degree bookkeeping over free
  leaf placements (independent check);
- stable graphs: all weighted contractions of all regular graphs (primary)
  and direct assembly of connected weighted multigraphs (independent check).
"""

import itertools
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from loguru import logger

from ..utils.errors import IntegrityViolation, ScaleLimitError
from ..utils.parallel import WorkerPool
from ..utils.settings import DEFAULT_GENERATION_EDGES
from .contraction import contract
from .graph_core import (
    WeightedGraph,
    check_stability_range,
    expected_counts,
    genus,
    is_connected,
    is_regular_tropicalization,
    is_stable,
)
from .isomorphism import CanonicalKey, canonical_form


def _check_scale(genus_value: int, n: int, max_edges: int) -> Tuple[int, int]:
    check_stability_range(genus_value, n)
    num_vertices, num_edges = expected_counts(genus_value, n)
    if num_edges > max_edges:
        raise ScaleLimitError(f"enumeration for (g, n) = ({genus_value}, {n}) needs 3g-3+n edges",
                              limit=max_edges, actual=num_edges)
    return num_vertices, num_edges


def _assemble(weights: Sequence[int], edges: Sequence[Tuple[int, int]], leaf_at: Sequence[int]) -> WeightedGraph:
    return WeightedGraph.build(
        vertices={f"v{i}": w for i, w in enumerate(weights)},
        edges=[(f"e{k}", f"v{a}", f"v{b}") for k, (a, b) in enumerate(edges)],
        leaves={label: f"v{leaf_at[label - 1]}" for label in range(1, len(leaf_at) + 1)},
    )


def _keep_new(found: Dict[CanonicalKey, WeightedGraph], graph: WeightedGraph) -> None:
    key = canonical_form(graph)
    if key not in found:
        found[key] = graph


def _ordered(found: Dict[CanonicalKey, WeightedGraph]) -> List[WeightedGraph]:
    return [found[key] for key in sorted(found)]


# -- regular graphs: half-edge pairing -------------------------------------------

def _leaf_placements(n: int, num_vertices: int, capacity: int = 3) -> Iterator[Tuple[int, ...]]:
    """Set partitions of the labels into at most ``num_vertices`` blocks of size <= capacity."""
    assignment: List[int] = []
    sizes: List[int] = []

    def place(label: int) -> Iterator[Tuple[int, ...]]:
        if label > n:
            yield tuple(assignment)
            return
        for block in range(min(len(sizes) + 1, num_vertices)):
            if block < len(sizes) and sizes[block] >= capacity:
                continue
            if block == len(sizes):
                sizes.append(0)
            sizes[block] += 1
            assignment.append(block)
            yield from place(label + 1)
            assignment.pop()
            sizes[block] -= 1
            if sizes[block] == 0:
                sizes.pop()

    yield from place(1)


def _pairings(free: List[int]) -> Iterator[List[Tuple[int, int]]]:
    """
    Pair the lowest free half-edge with one representative free half-edge per vertex.

    Partners chosen for a given vertex never decrease, so each edge multiset
    appears once.
    """
    edges: List[Tuple[int, int]] = []
    last_partner: Dict[int, int] = {}

    def pair() -> Iterator[List[Tuple[int, int]]]:
        source = next((i for i, f in enumerate(free) if f > 0), None)
        if source is None:
            yield list(edges)
            return
        for partner in range(last_partner.get(source, source), len(free)):
            needed = 2 if partner == source else 1
            if free[partner] < needed:
                continue
            free[source] -= 1
            free[partner] -= 1
            previous = last_partner.get(source)
            last_partner[source] = partner
            edges.append((source, partner))
            yield from pair()
            edges.pop()
            if previous is None:
                del last_partner[source]
            else:
                last_partner[source] = previous
            free[source] += 1
            free[partner] += 1

    yield from pair()


def enumerate_regular(genus_value: int, n: int, max_edges: int = DEFAULT_GENERATION_EDGES) -> List[WeightedGraph]:
    """
    All regular tropicalizations of type (g, n) up to isomorphism.

    Raises:
        DomainError: (g, n) outside the stable range
        ScaleLimitError: 3g-3+n above ``max_edges``
        IntegrityViolation: a generated graph fails the regularity predicate
    """
    num_vertices, _ = _check_scale(genus_value, n, max_edges)
    logger.info(f"Enumerating regular graphs for (g, n) = ({genus_value}, {n})")

    found: Dict[CanonicalKey, WeightedGraph] = {}
    for leaf_at in _leaf_placements(n, num_vertices):
        free = [3] * num_vertices
        for v in leaf_at:
            free[v] -= 1
        for edges in _pairings(free):
            graph = _assemble([0] * num_vertices, edges, leaf_at)
            if is_connected(graph):
                _keep_new(found, graph)

    graphs = _ordered(found)
    for graph in graphs:
        if not is_regular_tropicalization(graph, genus_value, n):
            raise IntegrityViolation(f"generated graph fails the regularity check: {graph}")
    logger.info(f"Found {len(graphs)} regular class(es) for (g, n) = ({genus_value}, {n})")
    return graphs


# -- regular graphs: edge multisets ------------------------------------------------

def regular_by_edge_multisets(genus_value: int, n: int,
                              max_edges: int = DEFAULT_GENERATION_EDGES) -> List[WeightedGraph]:
    """Independent regular census: every edge multiset on the vertex set, filtered by degree."""
    num_vertices, num_edges = _check_scale(genus_value, n, max_edges)
    pairs = list(itertools.combinations_with_replacement(range(num_vertices), 2))

    found: Dict[CanonicalKey, WeightedGraph] = {}
    for leaf_at in itertools.product(range(num_vertices), repeat=n):
        residual = [3] * num_vertices
        for v in leaf_at:
            residual[v] -= 1
        if min(residual, default=0) < 0:
            continue
        for edges in itertools.combinations_with_replacement(pairs, num_edges):
            degrees = [0] * num_vertices
            for a, b in edges:
                degrees[a] += 1
                degrees[b] += 1
            if degrees != residual:
                continue
            graph = _assemble([0] * num_vertices, edges, leaf_at)
            if is_connected(graph):
                _keep_new(found, graph)
    return _ordered(found)


# -- stable weighted graphs ----------------------------------------------------------

def _contraction_classes(base: WeightedGraph) -> List[Tuple[CanonicalKey, WeightedGraph]]:
    classes: Dict[CanonicalKey, WeightedGraph] = {}
    for size in range(len(base.edges) + 1):
        for q in itertools.combinations(base.edge_ids, size):
            _keep_new(classes, contract(base, q).result)
    return sorted(classes.items())


def enumerate_stable_weighted(genus_value: int, n: int, max_edges: int = DEFAULT_GENERATION_EDGES,
                              pool: Optional[WorkerPool] = None) -> List[WeightedGraph]:
    """
    All stable weighted graphs of genus g with n leaves, up to isomorphism.

    Every such graph is a weighted contraction of a regular one, so the
    census is the union of the contraction classes of all regular graphs.

    Raises:
        DomainError: (g, n) outside the stable range
        ScaleLimitError: 3g-3+n above ``max_edges``
        IntegrityViolation: a class is unstable or has the wrong genus
    """
    pool = pool or WorkerPool()
    bases = enumerate_regular(genus_value, n, max_edges)
    found: Dict[CanonicalKey, WeightedGraph] = {}
    for classes in pool.map(_contraction_classes, bases, label="contraction classes per regular base"):
        for key, graph in classes:
            found.setdefault(key, graph)

    graphs = _ordered(found)
    for graph in graphs:
        if not is_stable(graph) or genus(graph) != genus_value or graph.n_leaves != n:
            raise IntegrityViolation(f"contraction class is not a stable graph of type ({genus_value}, {n})")
    logger.info(f"Found {len(graphs)} stable class(es) for (g, n) = ({genus_value}, {n})")
    return graphs


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cuts + (total + parts - 1,)
        yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(parts))


def stable_by_direct_assembly(genus_value: int, n: int,
                              max_edges: int = DEFAULT_GENERATION_EDGES) -> List[WeightedGraph]:
    """Independent stable census: connected weighted multigraphs assembled directly and filtered."""
    max_vertices, edge_bound = _check_scale(genus_value, n, max_edges)
    found: Dict[CanonicalKey, WeightedGraph] = {}
    for num_vertices in range(1, max_vertices + 1):
        pairs = list(itertools.combinations_with_replacement(range(num_vertices), 2))
        for num_edges in range(num_vertices - 1, edge_bound + 1):
            betti = num_edges - num_vertices + 1
            if betti > genus_value:
                break
            for edges in itertools.combinations_with_replacement(pairs, num_edges):
                skeleton = _assemble([0] * num_vertices, edges, ())
                if not is_connected(skeleton):
                    continue
                for weights in _compositions(genus_value - betti, num_vertices):
                    for leaf_at in itertools.product(range(num_vertices), repeat=n):
                        graph = _assemble(weights, edges, leaf_at)
                        if is_stable(graph):
                            _keep_new(found, graph)
    return _ordered(found)
