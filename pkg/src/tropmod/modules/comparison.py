"""
Nodal Type Comparison
=====================

Relates the strata over a regular base to the boundary stratification of
the moduli space of stable curves.

Contracting edges shrinks the corresponding curves to nodes. The nodal
surface is recorded by its dual graph: components become vertices weighted
by their genus, nodes become edges, marked points stay leaves. For a
regular base and an edge set q that dual graph is contract(base, E \\ q),
whose surviving edges are exactly the nodes q.

Two stable classes are compared through dual graphs: a stratum maps to the
class of the nodal type of any of its witnesses. The map is checked to be
well defined, dimension preserving and order preserving; its failure to be
surjective or injective is measured per base by ``coverage``.
"""

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from ..utils.errors import DomainError, IntegrityViolation
from ..utils.parallel import WorkerPool
from ..utils.settings import DEFAULT_GENERATION_EDGES, DEFAULT_STRATA_EDGES
from .contraction import contract, is_weighted_contraction_of
from .generation import enumerate_regular, enumerate_stable_weighted
from .graph_core import WeightedGraph, degree, genus, is_regular_tropicalization, is_stable
from .isomorphism import CanonicalKey, canonical_form
from .moduli_strata import StrataPoset, short_key, strata_of


@dataclass(frozen=True)
class NodalType:
    """
    Dual graph of a nodal surface with per-component data.

    ``components`` lists (g_i, n_i, d_i) per dual vertex in vertex-id order:
    component genus, marked points on it and node branches through it.
    """
    dual: WeightedGraph
    components: Tuple[Tuple[int, int, int], ...]
    k: int
    d: int

    @property
    def key(self) -> CanonicalKey:
        return canonical_form(self.dual)

    @property
    def genus(self) -> int:
        return genus(self.dual)

    @property
    def n_leaves(self) -> int:
        return self.dual.n_leaves

    @property
    def codimension(self) -> int:
        """Number of nodes."""
        return self.d

    @property
    def dimension(self) -> int:
        """Dimension of the stratum of stable curves of this type: 3g-3+n-d."""
        return 3 * self.genus - 3 + self.n_leaves - self.d

    def normalization(self) -> Tuple[Tuple[int, int], ...]:
        """
        Smooth pieces after cutting every node into two marked points.

        Returns:
            Sorted (g_i, n_i + d_i) pairs

        Raises:
            IntegrityViolation: a piece is not hyperbolic
        """
        pieces = []
        for g_i, n_i, d_i in self.components:
            if 2 * g_i - 2 + n_i + d_i <= 0:
                raise IntegrityViolation(f"component (g={g_i}, n={n_i}, d={d_i}) of a nodal type is not stable")
            pieces.append((g_i, n_i + d_i))
        return tuple(sorted(pieces))


def _require_regular(base: WeightedGraph) -> Tuple[int, int]:
    g, n = genus(base), base.n_leaves
    try:
        regular = is_regular_tropicalization(base, g, n)
    except DomainError:
        regular = False
    if not regular:
        raise DomainError("nodal types are taken over a regular base (connected, trivalent, weight 0)")
    return g, n


def _nodal_type(base: WeightedGraph, q: FrozenSet[str]) -> NodalType:
    dual = contract(base, [eid for eid in base.edge_ids if eid not in q]).result
    components = tuple(
        (dual.weights[v], len(dual.leaves_at(v)), degree(dual, v) - len(dual.leaves_at(v)))
        for v in dual.vertex_ids
    )
    t = NodalType(dual=dual, components=components, k=len(dual.weights), d=len(dual.edges))

    g = genus(base)
    if t.genus != g:
        raise IntegrityViolation(f"nodal type of {sorted(q)} has genus {t.genus}, expected {g}")
    if not is_stable(t.dual):
        raise IntegrityViolation(f"nodal type of {sorted(q)} is not stable")
    if sum(d_i for _, _, d_i in components) != 2 * t.d:
        raise IntegrityViolation(f"node branches of {sorted(q)} do not sum to 2d = {2 * t.d}")
    if g != sum(g_i for g_i, _, _ in components) + t.d - t.k + 1:
        raise IntegrityViolation(f"g = sum g_i + d - k + 1 fails for {sorted(q)}")
    return t


def dual_type(base: WeightedGraph, q: Iterable[str]) -> NodalType:
    """
    Nodal type obtained by pinching the curves of ``q``.

    Args:
        base: Regular base graph
        q: Edges to turn into nodes

    Raises:
        DomainError: non-regular base or unknown edge ids
        IntegrityViolation: genus, stability or node-count identities fail
    """
    _require_regular(base)
    q_set = frozenset(q)
    unknown = q_set - set(base.edges)
    if unknown:
        raise DomainError(f"unknown edge ids {sorted(unknown)}")
    return _nodal_type(base, q_set)


@dataclass(frozen=True)
class DimensionReport:
    component_sum: int
    stratum_edges: int
    nodes: int
    expected_nodes: int

    @property
    def holds(self) -> bool:
        return self.component_sum == self.stratum_edges and self.nodes == self.expected_nodes


def dimension_identity(t: NodalType, stratum_edges: int) -> DimensionReport:
    """
    Check sum(3g_i - 3 + n_i + d_i) = |E(G')| and d = 3g-3+n - |E(G')|.

    Raises:
        IntegrityViolation: either side disagrees
    """
    report = DimensionReport(
        component_sum=sum(3 * g_i - 3 + n_i + d_i for g_i, n_i, d_i in t.components),
        stratum_edges=stratum_edges,
        nodes=t.d,
        expected_nodes=3 * t.genus - 3 + t.n_leaves - stratum_edges,
    )
    if not report.holds:
        logger.error(f"dimension identity failed: {report}")
        raise IntegrityViolation(
            f"component dimensions sum to {report.component_sum} and d = {report.nodes}; "
            f"expected {report.stratum_edges} and {report.expected_nodes}"
        )
    return report


@dataclass(frozen=True)
class StratumImage:
    """Where one stratum lands; ``witness_keys`` has more than one entry only if the map is ill defined."""
    stratum: int
    nodal_type: NodalType
    witness_keys: Tuple[CanonicalKey, ...]
    dimension: DimensionReport

    @property
    def key(self) -> CanonicalKey:
        return self.nodal_type.key

    @property
    def well_defined(self) -> bool:
        return len(self.witness_keys) == 1


@dataclass(frozen=True)
class StratificationMap:
    poset: StrataPoset
    images: Tuple[StratumImage, ...]

    @property
    def violations(self) -> List[int]:
        return [image.stratum for image in self.images if not image.well_defined]

    def classes(self) -> List[CanonicalKey]:
        return sorted({image.key for image in self.images})

    def collisions(self) -> List[Tuple[int, int]]:
        """Pairs of distinct strata with the same nodal class."""
        by_class: Dict[CanonicalKey, List[int]] = defaultdict(list)
        for image in self.images:
            by_class[image.key].append(image.stratum)
        return sorted(pair for members in by_class.values() for pair in itertools.combinations(members, 2))


def stratification_map(poset: StrataPoset) -> StratificationMap:
    """
    Send each stratum to the class of its nodal type.

    Every witness is checked; disagreement among witnesses is logged and
    reported, never merged.

    Raises:
        DomainError: non-regular base
    """
    _require_regular(poset.base)
    images = []
    for index, stratum in enumerate(poset.strata):
        types = [_nodal_type(poset.base, q) for q in stratum.witnesses]
        keys = tuple(sorted({t.key for t in types}))
        if len(keys) > 1:
            logger.warning(f"stratum {stratum.digest} has witnesses with {len(keys)} distinct nodal types")
        images.append(StratumImage(
            stratum=index,
            nodal_type=types[0],
            witness_keys=keys,
            dimension=dimension_identity(types[0], stratum.dimension),
        ))
    return StratificationMap(poset=poset, images=tuple(images))


@dataclass(frozen=True)
class OrderReport:
    pairs_checked: int
    violations: Tuple[Tuple[FrozenSet[str], FrozenSet[str]], ...] = ()

    @property
    def holds(self) -> bool:
        return not self.violations


def order_preservation(poset: StrataPoset) -> OrderReport:
    """
    For every nested pair q <= q2 of witnesses, contracting the nodes q2 \\ q
    of the deeper nodal type must give the shallower one, and the stratum of
    q2 must lie in the closure of the stratum of q.

    Raises:
        DomainError: non-regular base
    """
    _require_regular(poset.base)
    base = poset.base
    subsets = sorted(poset.membership, key=lambda s: (len(s), sorted(s)))
    types = {q: _nodal_type(base, q) for q in subsets}

    checked = 0
    violations = []
    for q2 in subsets:
        for size in range(len(q2) + 1):
            for q in map(frozenset, itertools.combinations(sorted(q2), size)):
                checked += 1
                smoothed = contract(types[q2].dual, q2 - q).result
                in_closure = poset.leq(poset.index_of(q2), poset.index_of(q))
                if canonical_form(smoothed) != types[q].key or not in_closure:
                    violations.append((q, q2))
    if violations:
        logger.warning(f"order preservation failed on {len(violations)} of {checked} nested pair(s)")
    return OrderReport(pairs_checked=checked, violations=tuple(violations))


@dataclass(frozen=True)
class BaseCoverage:
    """Nodal classes reached from one regular base."""
    base: WeightedGraph
    poset: StrataPoset
    smap: StratificationMap
    hits: Tuple[CanonicalKey, ...]
    misses: Tuple[CanonicalKey, ...]

    @property
    def base_key(self) -> CanonicalKey:
        return canonical_form(self.base)

    @property
    def collisions(self) -> List[Tuple[int, int]]:
        return self.smap.collisions()


@dataclass(frozen=True)
class CoverageReport:
    genus: int
    leaves: int
    stable_classes: Dict[CanonicalKey, WeightedGraph]
    bases: Tuple[BaseCoverage, ...]
    union: Tuple[CanonicalKey, ...] = field(default=())

    @property
    def union_complete(self) -> bool:
        return set(self.union) == set(self.stable_classes)


def _base_coverage(job: Tuple[WeightedGraph, FrozenSet[CanonicalKey], int]) -> BaseCoverage:
    base, stable_keys, max_edges = job
    poset = strata_of(base, max_edges=max_edges)
    smap = stratification_map(poset)
    hits = smap.classes()
    strays = [short_key(k) for k in hits if k not in stable_keys]
    if strays:
        raise IntegrityViolation(f"nodal classes {strays} are not stable graphs of the ambient type")
    misses = sorted(stable_keys - set(hits))
    return BaseCoverage(base=base, poset=poset, smap=smap, hits=tuple(hits), misses=tuple(misses))


def coverage(genus_value: int, n: int, max_edges: int = DEFAULT_GENERATION_EDGES,
             pool: Optional[WorkerPool] = None, max_strata_edges: int = DEFAULT_STRATA_EDGES) -> CoverageReport:
    """
    Compare every regular base of type (g, n) with the stable classes.

    Args:
        genus_value: Genus g
        n: Number of leaves
        max_edges: Desk-scale bound on 3g-3+n
        pool: Optional worker pool, one job per base
        max_strata_edges: Desk-scale bound on the edges of each base poset

    Returns:
        Per-base hits, misses and collisions plus the union coverage
    """
    pool = pool or WorkerPool()
    stable = {canonical_form(s): s for s in enumerate_stable_weighted(genus_value, n, max_edges)}
    bases = enumerate_regular(genus_value, n, max_edges)
    jobs = [(base, frozenset(stable), max_strata_edges) for base in bases]
    results = tuple(pool.map(_base_coverage, jobs, label="coverage per regular base"))

    union = sorted({key for result in results for key in result.hits})
    for result in results:
        logger.info(f"base {short_key(result.base_key)}: hits {len(result.hits)} of {len(stable)}, "
                    f"{len(result.collisions)} collision(s)")
    report = CoverageReport(genus=genus_value, leaves=n, stable_classes=dict(sorted(stable.items())),
                            bases=results, union=tuple(union))
    if not report.union_complete:
        logger.warning(f"union of bases covers {len(union)} of {len(stable)} stable classes")
    return report


@dataclass(frozen=True)
class SpecializationOrder:
    """
    Stable classes of type (g, n) and the covering pairs (i, j) of the
    closure relation: the stratum of classes[i] lies in the closure of the
    stratum of classes[j], i.e. classes[j] is a one-edge contraction of classes[i].
    """
    classes: Tuple[WeightedGraph, ...]
    hasse: Tuple[Tuple[int, int], ...]


def specialization_order(genus_value: int, n: int, max_edges: int = DEFAULT_GENERATION_EDGES,
                         classes: Optional[Sequence[WeightedGraph]] = None) -> SpecializationOrder:
    """Covering pairs among the stable classes of (g, n); pass ``classes`` to reuse a census already computed."""
    if classes is None:
        classes = enumerate_stable_weighted(genus_value, n, max_edges)
    classes = tuple(classes)
    pairs = []
    for i, deeper in enumerate(classes):
        for j, shallower in enumerate(classes):
            if len(deeper.edges) == len(shallower.edges) + 1 and is_weighted_contraction_of(shallower, deeper):
                pairs.append((i, j))
    return SpecializationOrder(classes=classes, hasse=tuple(pairs))
