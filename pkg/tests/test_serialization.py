"""
Test Graph and Point Documents
==============================
"""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tropmod.modules.extended_cone import ConeMode
from tropmod.modules.graph_core import dumbbell_graph, theta_graph
from tropmod.modules.serialization import (
    dumps,
    emit_graph,
    emit_point,
    format_length,
    load_graph,
    load_point,
    parse_graph,
    parse_point,
    read_json,
)
from tropmod.utils.errors import DomainError, InputFormatError

THETA_DOC = {
    "vertices": [{"id": "b", "weight": 0}, {"id": "a", "weight": 0}],
    "edges": [{"id": "e2", "ends": ["b", "a"]}, {"id": "e1", "ends": ["a", "b"]}, {"id": "e3", "ends": ["a", "b"]}],
    "leaves": [],
}


def test_parse_graph_normalizes_order():
    g = parse_graph(THETA_DOC)
    assert g == theta_graph()
    assert emit_graph(g)["edges"][1] == {"id": "e2", "ends": ["a", "b"]}


def test_emit_parse_emit_is_stable():
    for g in (theta_graph(), dumbbell_graph()):
        once = dumps(emit_graph(g))
        assert dumps(emit_graph(parse_graph(json.loads(once)))) == once


@pytest.mark.parametrize("doc", [
    {"vertices": [{"id": "a", "weight": -1}]},
    {"vertices": [{"id": "a"}], "edges": [{"id": "e", "ends": ["a"]}]},
    {"vertices": [{"id": "a"}, {"id": "a"}]},
    {"vertices": [{"id": "a"}], "colour": "red"},
    {"edges": []},
])
def test_schema_violations(doc):
    with pytest.raises(InputFormatError):
        parse_graph(doc)


def test_unknown_vertex_reference_is_a_domain_error():
    with pytest.raises(DomainError):
        parse_graph({"vertices": [{"id": "a"}], "edges": [{"id": "e", "ends": ["a", "b"]}]})


def test_point_round_trip():
    doc = {"graph": emit_graph(theta_graph()), "coords": {"e1": "3/4", "e2": "inf", "e3": 2}}
    p = parse_point(doc)
    assert p.zero_set() == frozenset({"e2"})
    assert emit_point(p)["coords"] == {"e1": "3/4", "e2": "0", "e3": "2"}
    assert dumps(emit_point(parse_point(emit_point(p)))) == dumps(emit_point(p))


def test_exact_mode_rejects_floats():
    doc = {"graph": emit_graph(theta_graph()), "coords": {"e1": 0.5, "e2": "1", "e3": "1"}}
    with pytest.raises(InputFormatError):
        parse_point(doc)
    p = parse_point(doc, float_mode=True)
    assert not p.is_exact


def test_bad_length_token():
    doc = {"graph": emit_graph(theta_graph()), "coords": {"e1": "three", "e2": "1", "e3": "1"}}
    with pytest.raises(InputFormatError):
        parse_point(doc)


def test_closed_mode_is_emitted():
    doc = {"graph": emit_graph(theta_graph()), "coords": {"e1": "1", "e2": "1", "e3": "1"}, "mode": "closed"}
    p = parse_point(doc)
    assert p.mode == ConeMode.CLOSED
    assert emit_point(p)["mode"] == "closed"


def test_format_length():
    assert format_length(Fraction(3, 4)) == "3/4"
    assert format_length(0.5) == "0.5"


def test_files(tmp_path):
    path = tmp_path / "theta.json"
    path.write_text(dumps(emit_graph(theta_graph())))
    assert load_graph(str(path)) == theta_graph()
    assert load_graph("dumbbell") == dumbbell_graph()

    point = tmp_path / "p.json"
    point.write_text(json.dumps({"graph": emit_graph(theta_graph()), "coords": {"e1": "1", "e2": "2", "e3": "3"}}))
    assert load_point(point).lengths() == {"e1": 1, "e2": 2, "e3": 3}

    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    with pytest.raises(InputFormatError):
        read_json(broken)
    with pytest.raises(InputFormatError):
        read_json(tmp_path / "missing.json")


@settings(max_examples=500, deadline=None)
@given(st.tuples(*[st.floats(min_value=0, max_value=1e12, allow_nan=False, allow_infinity=False)] * 3))
def test_float_point_documents_are_stable(xs):
    doc = {"graph": emit_graph(theta_graph()), "coords": dict(zip(["e1", "e2", "e3"], xs))}
    once = emit_point(parse_point(doc, float_mode=True))
    twice = emit_point(parse_point(once, float_mode=True))
    assert twice == once
    assert once["coords"] == {e: repr(x) for e, x in zip(["e1", "e2", "e3"], xs)}


def test_float_lengths_of_sevenths_do_not_drift():
    for k in range(2000):
        doc = {"graph": emit_graph(theta_graph()), "coords": {"e1": k / 7, "e2": "1", "e3": "2"}}
        once = emit_point(parse_point(doc, float_mode=True))
        assert emit_point(parse_point(once, float_mode=True)) == once
