import json
from fractions import Fraction

import pydot
import pytest
from hypothesis import given, settings, strategies as st

from autocat.algebra import ChildSelection
from autocat.cores import SearchBounds, enumerate_autocatalytic_cores, enumerate_cs_cores, enumerate_mas
from autocat.errors import ParseError
from autocat.formats import decode, digest, emit_dot, emit_json, format_network, load, parse, parse_reactions, rational
from autocat.koenig import KoenigGraph, build_koenig, koenig_of_cs
from autocat.network import is_well_formed
from autocat.oracle import OracleBounds, random_network
from autocat.report import document

from conftest import FIXTURE_NAMES, fixture_network, fixture_path


# ---------------------------------------------------------------- parser

def test_parse_cat1():
    rn = parse("r1: a + x1 -> x1 + x2\nr2: x2 -> x1")
    assert rn.entities == ("a", "x1", "x2")
    assert [r.name for r in rn.reactions] == ["r1", "r2"]


def test_parse_coefficients():
    rn = parse("r: 2 x1 -> x2 + x3 + x4")
    assert rn.s_minus(rn.entity_index("x1"), 0) == 2
    rn = parse("r: 1/2 a + 3/4 a -> 2b")
    assert rn.s_minus(0, 0) == Fraction(5, 4)
    assert rn.s_plus(1, 0) == 2


def test_auto_labels_and_comments():
    rn = parse("# header\n\nx -> y   # trailing\nlabel: y -> x\ny -> z\n")
    assert [r.name for r in rn.reactions] == ["r1", "label", "r3"]


def test_auto_label_avoids_explicit_names():
    rn = parse("r2: a -> b\nb -> a\nb -> c")
    assert [r.name for r in rn.reactions] == ["r2", "r2_", "r3"]


def test_open_reactions():
    with pytest.raises(ParseError) as info:
        parse("r: -> x")
    assert (info.value.line, info.value.column) == (1, 3)
    parsed = parse_reactions("r: -> x\ns: x -> y", allow_open=True)
    rn = parsed.network
    assert rn.open_reactions() == [0]
    assert not is_well_formed(rn, rn.whole())
    assert parsed.warnings


@pytest.mark.parametrize("text, line, column", [
    ("r1: a -> b\nr1: b -> a", 2, 1),
    ("r: a -> b -> c", 1, 3),
    ("r: a b", 1, 3),
    ("r: 0 a -> b", 1, 4),
    ("r: -1 a -> b", 1, 4),
    ("r: a + -> b", 1, 8),
    ("r: 1/0 a -> b", 1, 4),
    ("r: a -> 2 3b", 1, 11),
    ("bad label: a -> b", 1, 1),
    ("#! witness x : r=abc", 1, 1),
])
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert str(info.value).startswith(f"line {line}, column {column}:")


def test_invalid_utf8_is_a_parse_error(tmp_path):
    p = tmp_path / "bad.rn"
    p.write_bytes(b"r1: a -> b\nr2: \xff -> a\n")
    with pytest.raises(ParseError) as info:
        load(p)
    assert (info.value.line, info.value.column) == (2, 5)
    assert decode(b"ok") == "ok"


@settings(max_examples=500, deadline=None)
@given(st.text(alphabet=st.sampled_from(list("ab x12/:->+#!\n _")), max_size=40))
def test_parser_is_total(text):
    try:
        rn = parse(text)
    except ParseError as exc:
        assert exc.line >= 1 and exc.column >= 1
    else:
        assert parse(format_network(rn)) == rn


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=40))
def test_decoder_is_total(data):
    try:
        parse(decode(data))
    except ParseError:
        pass


def test_witness_directive():
    parsed = load(fixture_path("ex_cat1"))
    (note,) = parsed.witnesses
    assert note.entities == ("x1", "x2")
    assert note.values == {"r1": 2, "r2": 1}


# ---------------------------------------------------------------- canonical text

def test_round_trip_on_fixtures_and_corpus():
    nets = [fixture_network(n) for n in FIXTURE_NAMES]
    nets += [random_network(OracleBounds(), seed=s) for s in range(200)]
    for rn in nets:
        text = format_network(rn)
        again = parse(text)
        assert again == rn
        assert format_network(again) == text
        assert digest(again) == digest(rn)


def test_format_fraction_coefficients():
    rn = parse("r: 3/6 a -> 2 b")
    assert format_network(rn) == "r: 1/2 a -> 2 b\n"
    assert rational(Fraction(-3, 6)) == "-1/2" and rational(Fraction(4)) == "4"


# ---------------------------------------------------------------- JSON

def test_json_cat2_counts():
    rn = fixture_network("ex_cat2")
    cores = enumerate_autocatalytic_cores(rn)
    cs = enumerate_cs_cores(rn)
    doc = document(rn, "analyze", SearchBounds(), True, cores=cores, cs_cores=cs, mas=enumerate_mas(rn))
    text = emit_json(doc)
    back = json.loads(text)
    assert len(back["cores"]) == 1 and len(back["cs_cores"]) == 2
    assert list(back) == ["schema_version", "command", "input", "bounds", "complete", "cores", "cs_cores", "mas"]
    core = back["cores"][0]
    assert core["kappa"] == {"x2": "r1"}
    assert all(isinstance(v, str) for v in core["witness"].values())
    assert text.endswith("}\n") and "\r" not in text
    assert emit_json(json.loads(text)) == text


def test_json_empty_network():
    rn = parse("")
    doc = document(rn, "cores", SearchBounds(), True, cores=enumerate_autocatalytic_cores(rn),
                   cs_cores=enumerate_cs_cores(rn), mas=enumerate_mas(rn))
    back = json.loads(emit_json(doc))
    assert back["cores"] == [] and back["cs_cores"] == [] and back["mas"] == []
    assert back["complete"] is True


# ---------------------------------------------------------------- DOT

def parse_dot(text):
    (graph,) = pydot.graph_from_dot_data(text)
    return graph


def test_dot_redfluf():
    rn = fixture_network("redfluf")
    k = ChildSelection.from_names(rn, {"x1": "r1", "x2": "r2"})
    g = koenig_of_cs(k, build_koenig(rn))
    graph = parse_dot(emit_dot(g, rn))
    nodes = [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    assert len(nodes) == 4 and len(graph.get_edges()) == 4
    shapes = {n.get_name().strip('"'): n.get("shape") for n in nodes}
    assert shapes["x:x1"] == "circle" and shapes["r:r1"] == "box"


def test_dot_empty_graph():
    rn = parse("")
    empty = KoenigGraph(frozenset(), frozenset(), frozenset(), frozenset())
    graph = parse_dot(emit_dot(empty, rn))
    assert graph.get_edges() == []


def test_dot_parses_for_every_fixture_with_highlight():
    for name in FIXTURE_NAMES:
        rn = fixture_network(name)
        g = build_koenig(rn)
        marked = set()
        for c in enumerate_autocatalytic_cores(rn):
            marked |= {("x", x) for x in c.sub.entities} | {("r", r) for r in c.sub.reactions}
        graph = parse_dot(emit_dot(g, rn, highlight=marked))
        assert len(graph.get_edges()) == len(g.edges())
        text = emit_dot(g, rn, highlight=marked)
        assert ("bold" in text) == bool(marked)
