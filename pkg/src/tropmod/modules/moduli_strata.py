"""
Strata Poset
============

Stratification of the compactified moduli space over a fixed base graph.

Every edge subset q of the base selects the face where exactly the q
lengths vanish; contracting q gives the weighted graph living on that face.
Faces whose contractions are isomorphic form one stratum, of dimension
|E(base)| - |q|. Strata are ordered by witness inclusion: S_i lies in the
closure of S_j when some witness of S_j is contained in some witness of S_i.
"""

import hashlib
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from loguru import logger

from ..utils.errors import DomainError, IntegrityViolation, ScaleLimitError
from ..utils.parallel import WorkerPool
from ..utils.settings import DEFAULT_STRATA_EDGES
from .contraction import contract
from .graph_core import WeightedGraph, is_connected
from .isomorphism import CanonicalKey, automorphisms, canonical_form


def short_key(key: CanonicalKey) -> str:
    """12 hex digit digest of a canonical key, for human-facing output."""
    return hashlib.sha1(key).hexdigest()[:12]


def _witness_order(q: FrozenSet[str]) -> Tuple[int, Tuple[str, ...]]:
    return len(q), tuple(sorted(q))


@dataclass(frozen=True)
class Stratum:
    """One isomorphism class of contractions of the base."""
    key: CanonicalKey
    representative: WeightedGraph
    dimension: int
    witnesses: Tuple[FrozenSet[str], ...]
    aut_edge_action_order: int
    aut_order: int

    @property
    def digest(self) -> str:
        return short_key(self.key)

    @property
    def codimension(self) -> int:
        return len(self.witnesses[0])


@dataclass(frozen=True)
class StrataPoset:
    """
    Strata of the compactified cone over ``base`` with their closure order.

    ``strata`` is sorted by decreasing dimension, then canonical key.
    ``order`` holds index pairs (i, j) with strata[i] below or equal to
    strata[j]; ``hasse`` holds its covering pairs.
    """
    base: WeightedGraph
    strata: Tuple[Stratum, ...]
    order: FrozenSet[Tuple[int, int]]
    hasse: Tuple[Tuple[int, int], ...]
    membership: Dict[FrozenSet[str], int] = field(default_factory=dict, compare=False)

    def __len__(self) -> int:
        return len(self.strata)

    def leq(self, i: int, j: int) -> bool:
        return (i, j) in self.order

    def top(self) -> int:
        return self.membership[frozenset()]

    def bottom(self) -> int:
        return self.membership[frozenset(self.base.edge_ids)]

    def index_of(self, q) -> int:
        """Index of the stratum containing the face where the edges of ``q`` vanish."""
        q_set = frozenset(q)
        if q_set not in self.membership:
            raise DomainError(f"{sorted(q_set)} is not a set of base edges")
        return self.membership[q_set]

    def is_dense_top(self) -> bool:
        """Every stratum lies in the closure of the open stratum."""
        top = self.top()
        return all(self.leq(i, top) for i in range(len(self.strata)))

    def dimension_counts(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for stratum in self.strata:
            counts[stratum.dimension] = counts.get(stratum.dimension, 0) + 1
        return dict(sorted(counts.items(), reverse=True))


def _classify_subset(job: Tuple[WeightedGraph, Tuple[str, ...]]) -> Tuple[Tuple[str, ...], CanonicalKey]:
    base, q = job
    return q, canonical_form(contract(base, q).result)


def strata_of(base: WeightedGraph, max_edges: int = DEFAULT_STRATA_EDGES,
              pool: Optional[WorkerPool] = None) -> StrataPoset:
    """
    Group all 2^|E| contractions of ``base`` into strata and order them.

    Args:
        base: Connected base graph
        max_edges: Refusal bound on |E(base)|
        pool: Optional worker pool for the subset contractions

    Returns:
        StrataPoset with the Hasse diagram of the closure order

    Raises:
        DomainError: disconnected base
        ScaleLimitError: |E(base)| above ``max_edges``
        IntegrityViolation: witness count, dimension or extremal-stratum checks fail
    """
    if not is_connected(base):
        raise DomainError("strata are only defined over a connected base graph")
    num_edges = len(base.edges)
    if num_edges > max_edges:
        raise ScaleLimitError("strata enumeration visits 2^|E| edge subsets", limit=max_edges, actual=num_edges)

    pool = pool or WorkerPool()
    jobs = [(base, q) for size in range(num_edges + 1) for q in itertools.combinations(base.edge_ids, size)]
    logger.info(f"Classifying {len(jobs)} contraction(s) of a base with {num_edges} edge(s)")

    groups: Dict[CanonicalKey, List[FrozenSet[str]]] = {}
    for q, key in pool.map(_classify_subset, jobs, label="subset contractions"):
        groups.setdefault(key, []).append(frozenset(q))

    total = sum(len(ws) for ws in groups.values())
    if total != 2 ** num_edges:
        raise IntegrityViolation(f"witnesses sum to {total}, expected 2^{num_edges}")

    built: List[Stratum] = []
    for key, witnesses in groups.items():
        witnesses.sort(key=_witness_order)
        sizes = {len(q) for q in witnesses}
        if len(sizes) != 1:
            raise IntegrityViolation(f"stratum {short_key(key)} has witnesses of sizes {sorted(sizes)}")
        representative = contract(base, witnesses[0]).result
        group = automorphisms(representative)
        built.append(Stratum(
            key=key,
            representative=representative,
            dimension=num_edges - len(witnesses[0]),
            witnesses=tuple(witnesses),
            aut_edge_action_order=group.edge_action_order,
            aut_order=group.order,
        ))
    built.sort(key=lambda s: (-s.dimension, s.key))
    strata = tuple(built)

    membership = {q: i for i, stratum in enumerate(strata) for q in stratum.witnesses}

    # one-edge extensions generate the inclusion order; edges point downward
    covers = nx.DiGraph()
    covers.add_nodes_from(range(len(strata)))
    for q, upper in membership.items():
        for eid in base.edge_ids:
            if eid not in q:
                covers.add_edge(upper, membership[q | {eid}])
    closure = nx.transitive_closure_dag(covers)
    order = frozenset({(i, i) for i in range(len(strata))} | {(lower, upper) for upper, lower in closure.edges()})
    hasse = tuple(sorted((lower, upper) for upper, lower in nx.transitive_reduction(covers).edges()))

    poset = StrataPoset(base=base, strata=strata, order=order, hasse=hasse, membership=membership)
    maximal = [j for j in range(len(strata)) if all(not poset.leq(j, k) or k == j for k in range(len(strata)))]
    minimal = [i for i in range(len(strata)) if all(not poset.leq(k, i) or k == i for k in range(len(strata)))]
    if maximal != [poset.top()] or minimal != [poset.bottom()]:
        raise IntegrityViolation(f"expected one maximal and one minimal stratum, got {maximal} and {minimal}")

    logger.info(f"Found {len(strata)} strata; dimension counts {poset.dimension_counts()}")
    return poset
