"""
Graph and Point Documents
=========================

JSON wire formats for graphs and extended points, validated with pydantic.

Graph document::

    {"vertices": [{"id": "a", "weight": 0}],
     "edges":    [{"id": "e1", "ends": ["a", "a"]}],
     "leaves":   [{"label": 1, "at": "a"}]}

Point document::

    {"graph": <graph document>, "coords": {"e1": "3/4", "e2": "inf"}}

Emitted documents are canonical: records sorted by id or label, edge ends
sorted, keys sorted, lengths written as rational strings.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..utils.errors import InputFormatError
from .extended_cone import ConeMode, ExtendedPoint, is_infinite
from .graph_core import WeightedGraph, named_graph


class VertexRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    weight: int = Field(default=0, ge=0)


class EdgeRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    ends: List[str]

    @field_validator("ends")
    @classmethod
    def validate_ends(cls, v: List[str]) -> List[str]:
        if len(v) != 2:
            raise ValueError(f"an edge has exactly two ends, got {len(v)}")
        return v


class LeafRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    label: int = Field(ge=1)
    at: str


class GraphDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: List[VertexRecord]
    edges: List[EdgeRecord] = Field(default_factory=list)
    leaves: List[LeafRecord] = Field(default_factory=list)

    @field_validator("vertices")
    @classmethod
    def validate_vertices(cls, v: List[VertexRecord]) -> List[VertexRecord]:
        ids = [record.id for record in v]
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be unique")
        return v

    @field_validator("leaves")
    @classmethod
    def validate_leaves(cls, v: List[LeafRecord]) -> List[LeafRecord]:
        labels = [record.label for record in v]
        if len(set(labels)) != len(labels):
            raise ValueError("leaf labels must be unique")
        return v


class PointDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    graph: GraphDocument
    coords: Dict[str, Union[str, int, float]]
    mode: ConeMode = ConeMode.COMPACT


def _format_errors(exc: ValidationError) -> str:
    first = exc.errors()[0]
    where = ".".join(str(part) for part in first.get("loc", ()))
    return f"{where}: {first.get('msg')}" if where else str(first.get("msg"))


def parse_graph(data: Any) -> WeightedGraph:
    """
    Build a graph from a decoded graph document.

    Raises:
        InputFormatError: schema violation
        DomainError: references to unknown vertices, bad leaf labels, duplicate edge ids
    """
    try:
        doc = GraphDocument.model_validate(data)
    except ValidationError as exc:
        raise InputFormatError(f"malformed graph document: {_format_errors(exc)}")
    return WeightedGraph.build(
        vertices={record.id: record.weight for record in doc.vertices},
        edges=[(record.id, record.ends[0], record.ends[1]) for record in doc.edges],
        leaves={record.label: record.at for record in doc.leaves},
    )


def emit_graph(g: WeightedGraph) -> Dict[str, Any]:
    return {
        "vertices": [{"id": v, "weight": g.weights[v]} for v in g.vertex_ids],
        "edges": [{"id": e, "ends": list(g.edges[e].ends)} for e in g.edge_ids],
        "leaves": [{"label": label, "at": g.leaves[label]} for label in sorted(g.leaves)],
    }


def format_length(x: Union[Fraction, float]) -> str:
    if isinstance(x, Fraction):
        return str(x)
    return repr(float(x))


def _parse_length_token(token: Union[str, int, float], float_mode: bool) -> Union[Fraction, float, str]:
    if is_infinite(token):
        return "inf"
    if float_mode:
        try:
            return float(token)
        except ValueError:
            raise InputFormatError(f"length {token!r} is not a number")
    if isinstance(token, float):
        raise InputFormatError(f"float length {token!r} in exact mode; write it as a rational string or use --float")
    try:
        return Fraction(str(token).strip())
    except (ValueError, ZeroDivisionError):
        raise InputFormatError(f"length {token!r} is neither a rational string nor 'inf'")


def parse_point(data: Any, float_mode: bool = False) -> ExtendedPoint:
    """
    Build an extended point from a decoded point document.

    Raises:
        InputFormatError: schema violation or unparsable length
        DomainError: coordinates not keyed by the base edges, negative lengths
    """
    try:
        doc = PointDocument.model_validate(data)
    except ValidationError as exc:
        raise InputFormatError(f"malformed point document: {_format_errors(exc)}")
    base = parse_graph(doc.graph.model_dump())
    lengths = {e: _parse_length_token(token, float_mode) for e, token in doc.coords.items()}
    return ExtendedPoint.from_lengths(base, lengths, mode=doc.mode)


def emit_point(p: ExtendedPoint) -> Dict[str, Any]:
    doc: Dict[str, Any] = {
        "graph": emit_graph(p.base),
        "coords": {e: format_length(p.coords[e].length) for e in sorted(p.coords)},
    }
    if p.mode != ConeMode.COMPACT:
        doc["mode"] = p.mode.value
    return doc


def dumps(document: Any) -> str:
    """Byte-deterministic JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def read_json(path: Union[str, Path]) -> Any:
    """
    Read and decode a JSON file.

    Raises:
        InputFormatError: missing file or invalid JSON
    """
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputFormatError(f"file not found: {path}")
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")


def load_graph(source: str) -> WeightedGraph:
    """A builtin graph name (``theta``, ``dumbbell``, ``vertex:<w>[:<n>]``) or a graph file path."""
    builtin: Optional[WeightedGraph] = named_graph(source)
    if builtin is not None:
        return builtin
    return parse_graph(read_json(source))


def load_point(path: Union[str, Path], float_mode: bool = False) -> ExtendedPoint:
    return parse_point(read_json(path), float_mode=float_mode)

