"""
Extended Cone
=============

Points of the compactified cone over a fixed base graph: one circle
coordinate per edge. An extended length x in [0, inf] is stored as
t = x / (x + 1) in [0, 1), with 0 and inf both sent to t = 0, so each
coordinate lives on a circle of circumference one turn.

Distances are computed exactly in turns when coordinates are rational and
only scaled by 2*pi at the end. The zero coordinates of a point select the
stratum it lies in; its fiber is the finite set of points whose weighted
metric graphs are isomorphic to its own.
"""

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple, Union

import numpy as np
from loguru import logger

from ..utils.errors import DomainError
from ..utils.settings import DEFAULT_TOLERANCE
from .contraction import contract
from .graph_core import WeightedGraph
from .isomorphism import are_isomorphic, automorphisms, canonical_form

Scalar = Union[Fraction, float]
LengthInput = Union[Fraction, float, int, str]
INFINITY_TOKENS = ("inf", "infinity", "+inf", "∞")


class ConeMode(str, Enum):
    """COMPACT identifies 0 with inf; CLOSED is the partially compactified cone with finite lengths."""
    COMPACT = "compact"
    CLOSED = "closed"


def is_infinite(x: LengthInput) -> bool:
    if isinstance(x, str):
        return x.strip().lower() in INFINITY_TOKENS
    return isinstance(x, float) and math.isinf(x) and x > 0


@dataclass(frozen=True)
class CirclePoint:
    """
    A coordinate t in [0, 1); exact when t is a Fraction.

    Float coordinates remember the length they were built from in
    ``source``, so writing a point back out reproduces its input. ``source``
    takes no part in equality.
    """
    t: Scalar
    source: Optional[float] = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.t < 1:
            raise DomainError(f"circle coordinate must lie in [0, 1), got {self.t}")

    @classmethod
    def from_length(cls, x: LengthInput) -> "CirclePoint":
        """
        Map a length in [0, inf] to its circle coordinate.

        Integers and rational strings stay exact; floats stay floats.
        """
        if is_infinite(x):
            return cls(Fraction(0))
        if isinstance(x, str):
            try:
                x = Fraction(x.strip())
            except (ValueError, ZeroDivisionError):
                raise DomainError(f"length {x!r} is neither a rational nor 'inf'")
        if isinstance(x, int):
            x = Fraction(x)
        if x < 0:
            raise DomainError(f"lengths must be >= 0, got {x}")
        t = x / (x + 1)
        if isinstance(t, float):
            return cls(0.0 if t >= 1.0 else t, source=float(x))
        return cls(t)

    @property
    def length(self) -> Scalar:
        """The finite representative x = t / (1 - t); t = 0 gives 0. Float points return their input length."""
        if self.source is not None:
            return self.source
        return self.t / (1 - self.t)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.t, Fraction)

    @property
    def angle(self) -> float:
        return 2 * math.pi * float(self.t)


def to_circle(x: LengthInput) -> complex:
    """exp(2*pi*i * x/(x+1)), the embedding of an extended length in the unit circle."""
    return complex(np.exp(2j * np.pi * float(CirclePoint.from_length(x).t)))


def circle_turns(a: CirclePoint, b: CirclePoint) -> Scalar:
    """Circle distance in turns: min(|a - b|, 1 - |a - b|)."""
    delta = abs(a.t - b.t)
    return min(delta, 1 - delta)


def circle_dist(a: CirclePoint, b: CirclePoint) -> float:
    return 2 * math.pi * float(circle_turns(a, b))


@dataclass(frozen=True)
class ExtendedPoint:
    """A point of the compactified (or, in CLOSED mode, partially compactified) cone over ``base``."""
    base: WeightedGraph
    coords: Dict[str, CirclePoint]
    mode: ConeMode = ConeMode.COMPACT

    def __post_init__(self):
        if sorted(self.coords) != self.base.edge_ids:
            raise DomainError(
                f"coordinates {sorted(self.coords)} do not match base edges {self.base.edge_ids}"
            )

    @classmethod
    def from_lengths(cls, base: WeightedGraph, lengths: Mapping[str, LengthInput],
                     mode: ConeMode = ConeMode.COMPACT) -> "ExtendedPoint":
        """
        Build a point from extended lengths.

        Raises:
            DomainError: an infinite length in CLOSED mode, or mismatched edges
        """
        if mode == ConeMode.CLOSED:
            infinite = sorted(e for e, x in lengths.items() if is_infinite(x))
            if infinite:
                raise DomainError(f"closed-cone points take finite lengths; edges {infinite} are infinite")
        coords = {e: CirclePoint.from_length(x) for e, x in lengths.items()}
        return cls(base=base, coords=coords, mode=mode)

    def __hash__(self) -> int:
        return hash((self.signature(), self.mode))

    def signature(self) -> Tuple[Tuple[str, Scalar], ...]:
        return tuple((e, self.coords[e].t) for e in sorted(self.coords))

    def lengths(self) -> Dict[str, Scalar]:
        return {e: c.length for e, c in self.coords.items()}

    def zero_set(self) -> FrozenSet[str]:
        return frozenset(e for e, c in self.coords.items() if c.t == 0)

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.coords.values())


@dataclass(frozen=True)
class StratumLocation:
    """The stratum a point lies in: zero set, contracted graph and the positive lengths that survive."""
    q: FrozenSet[str]
    graph: WeightedGraph
    lengths: Dict[str, Scalar] = field(default_factory=dict)


def _require_same_base(p: ExtendedPoint, q: ExtendedPoint) -> None:
    if p.base != q.base:
        raise DomainError("points live over different base graphs")


def _require_compact(p: ExtendedPoint, operation: str) -> None:
    if p.mode != ConeMode.COMPACT:
        raise DomainError(f"{operation} is only defined on the compactified cone (mode 'compact')")


def product_turns(p: ExtendedPoint, q: ExtendedPoint) -> Scalar:
    """Max over edges of the circle distance in turns (exact for rational points)."""
    _require_same_base(p, q)
    if not p.coords:
        return Fraction(0)
    return max(circle_turns(p.coords[e], q.coords[e]) for e in p.coords)


def product_dist(p: ExtendedPoint, q: ExtendedPoint) -> float:
    """
    Sup metric on the product of circles.

    Raises:
        DomainError: mismatched base graphs
    """
    return 2 * math.pi * float(product_turns(p, q))


def stratum_of(p: ExtendedPoint) -> StratumLocation:
    """Contract the zero coordinates; the remaining edges keep positive lengths."""
    q = p.zero_set()
    graph = contract(p.base, q).result
    lengths = {e: p.coords[e].length for e in graph.edge_ids}
    return StratumLocation(q=q, graph=graph, lengths=lengths)


def _close(a: ExtendedPoint, b: ExtendedPoint, tolerance: float) -> bool:
    return all(float(circle_turns(a.coords[e], b.coords[e])) <= tolerance for e in a.coords)


def _dedupe(points: List[ExtendedPoint], tolerance: float) -> List[ExtendedPoint]:
    if all(pt.is_exact for pt in points):
        unique = {pt.signature(): pt for pt in points}
        return [unique[s] for s in sorted(unique)]
    kept: List[ExtendedPoint] = []
    for pt in sorted(points, key=lambda x: tuple(float(t) for _, t in x.signature())):
        if not any(_close(pt, other, tolerance) for other in kept):
            kept.append(pt)
    return kept


def fiber(p: ExtendedPoint, tolerance: float = DEFAULT_TOLERANCE) -> List[ExtendedPoint]:
    """
    All points over the same base whose weighted metric graph is isomorphic to p's.

    Every face contracting to an isomorphic graph is visited, and p's lengths
    are carried over through every isomorphism (one fixed isomorphism composed
    with each automorphism's edge action).

    Args:
        p: Point of the compactified cone
        tolerance: Equality tolerance in turns for float coordinates

    Returns:
        Deterministically ordered list of points, containing p
    """
    _require_compact(p, "fiber")
    location = stratum_of(p)
    key = canonical_form(location.graph)
    actions = automorphisms(location.graph).edge_action

    found: List[ExtendedPoint] = []
    for q_other in itertools.combinations(p.base.edge_ids, len(location.q)):
        target = contract(p.base, q_other).result
        if canonical_form(target) != key:
            continue
        iso = are_isomorphic(location.graph, target)
        for action in actions:
            sigma = dict(action)
            coords = {e: CirclePoint(Fraction(0)) for e in q_other}
            for e in location.graph.edge_ids:
                coords[iso.edge_map[sigma[e]]] = p.coords[e]
            found.append(ExtendedPoint(base=p.base, coords=coords, mode=p.mode))

    points = _dedupe(found, tolerance)
    logger.debug(f"fiber over zero set {sorted(location.q)}: {len(points)} point(s)")
    return points


def separation_turns(p: ExtendedPoint, q: ExtendedPoint, tolerance: float = DEFAULT_TOLERANCE) -> Scalar:
    _require_same_base(p, q)
    _require_compact(p, "separation")
    _require_compact(q, "separation")
    return min(product_turns(u, v) for u in fiber(p, tolerance) for v in fiber(q, tolerance))


def separation(p: ExtendedPoint, q: ExtendedPoint, tolerance: float = DEFAULT_TOLERANCE) -> float:
    """
    Smallest distance between the fibers of p and q; zero exactly when they define the same class.

    Raises:
        DomainError: different bases, or a point outside the compactified cone
    """
    return 2 * math.pi * float(separation_turns(p, q, tolerance))


@dataclass(frozen=True)
class IdentificationKinds:
    """A fiber split by how its points are identified with the given one."""
    by_automorphism: Tuple[ExtendedPoint, ...]
    by_face_isometry: Tuple[ExtendedPoint, ...]


def identification_kinds(p: ExtendedPoint, tolerance: float = DEFAULT_TOLERANCE) -> IdentificationKinds:
    """Points on p's own face come from automorphisms; points on other faces from isomorphic faces."""
    zeros = p.zero_set()
    points = fiber(p, tolerance)
    return IdentificationKinds(
        by_automorphism=tuple(pt for pt in points if pt.zero_set() == zeros),
        by_face_isometry=tuple(pt for pt in points if pt.zero_set() != zeros),
    )


def same_class(p: ExtendedPoint, q: ExtendedPoint, tolerance: float = DEFAULT_TOLERANCE) -> bool:
    """Whether q lies in the fiber of p."""
    _require_same_base(p, q)
    if p.is_exact and q.is_exact:
        return any(pt.signature() == q.signature() for pt in fiber(p, tolerance))
    return any(_close(pt, q, tolerance) for pt in fiber(p, tolerance))
