import json
import xml.etree.ElementTree as ET

import pytest

from qkb.model import Iri, Literal, PrefixMap, QREG_NS
from qkb.results import serialize_results, to_json, to_tsv, to_xml
from qkb.sparql import SolutionSequence, evaluate, parse_query

NS = QREG_NS
RESULTS_NS = "{http://www.w3.org/2005/sparql-results#}"


def test_empty_solution_json_shape():
    text = to_json(SolutionSequence(("Answer",), []))
    assert json.loads(text) == {"head": {"vars": ["Answer"]}, "results": {"bindings": []}}


def test_uri_binding_shape(corpus):
    sol = evaluate(parse_query(corpus.queries["q1"]), corpus.store)
    doc = json.loads(to_json(sol))
    assert doc["head"]["vars"] == ["Answer"]
    binding = doc["results"]["bindings"][0]["Answer"]
    assert binding == {"type": "uri", "value": NS + "Sea"}


def test_literal_binding_shapes():
    rows = [
        {"x": Literal("plain")},
        {"x": Literal("tagged", lang="ar")},
        {"x": Literal("5", datatype=Iri("http://www.w3.org/2001/XMLSchema#integer"))},
    ]
    doc = json.loads(to_json(SolutionSequence(("x",), rows)))
    bindings = [b["x"] for b in doc["results"]["bindings"]]
    assert bindings[0] == {"type": "literal", "value": "plain"}
    assert bindings[1] == {"type": "literal", "value": "tagged", "xml:lang": "ar"}
    assert bindings[2]["datatype"].endswith("integer")


def test_unbound_variable_omitted_from_binding(corpus):
    sol = evaluate(parse_query(corpus.queries["q3_verbatim"]), corpus.store)
    doc = json.loads(to_json(sol))
    assert doc["results"]["bindings"]  # typo query still yields rows
    # the verbatim query binds ?Ayat to verse IRIs, never to comments
    for b in doc["results"]["bindings"]:
        assert b["Ayat"]["type"] == "uri"


def test_xml_is_well_formed_and_structured(corpus):
    sol = evaluate(parse_query(corpus.queries["q2"]), corpus.store)
    root = ET.fromstring(to_xml(sol))
    names = [v.get("name") for v in root.find(f"{RESULTS_NS}head")]
    assert names == ["Concept", "AyatNo", "Ayat"]
    results = root.find(f"{RESULTS_NS}results")
    assert len(results) == 2
    first = results[0]
    bindings = {b.get("name"): b[0] for b in first}
    assert bindings["Concept"].tag == f"{RESULTS_NS}uri"
    assert bindings["Ayat"].tag == f"{RESULTS_NS}literal"


def test_xml_escapes_reserved_characters():
    sol = SolutionSequence(("x",), [{"x": Literal('<&> "quoted"')}])
    root = ET.fromstring(to_xml(sol))
    literal = root.find(f"{RESULTS_NS}results")[0][0][0]
    assert literal.text == '<&> "quoted"'


def test_tsv_of_query2_three_columns_two_rows(corpus):
    sol = evaluate(parse_query(corpus.queries["q2"]), corpus.store)
    lines = to_tsv(sol, corpus.prefixes).splitlines()
    assert lines[0] == "?Concept\t?AyatNo\t?Ayat"
    assert len(lines) == 3
    first = lines[1].split("\t")
    assert first[0] == "qreg:TurSina"
    assert first[1] == "qreg:2:93"
    assert first[2].startswith('"And [recall] when We took your covenant and raised')


def test_tsv_unbound_cells_empty():
    pm = PrefixMap({"qreg": Iri(NS)})
    sol = SolutionSequence(("a", "b"), [{"a": Iri(NS + "Sea")}])
    lines = to_tsv(sol, pm).splitlines()
    assert lines[1] == "qreg:Sea\t"


def test_tsv_escapes_tabs_and_newlines():
    pm = PrefixMap({})
    sol = SolutionSequence(("x",), [{"x": Literal("a\tb\nc")}])
    lines = to_tsv(sol, pm).splitlines()
    assert lines[1] == '"a\\tb\\nc"'


def test_serialize_results_dispatch_and_unknown_format(corpus):
    sol = evaluate(parse_query(corpus.queries["q1"]), corpus.store)
    assert serialize_results(sol, "json").startswith("{")
    assert serialize_results(sol, "xml").startswith("<?xml")
    assert serialize_results(sol, "tsv", corpus.prefixes).startswith("?Answer")
    with pytest.raises(ValueError):
        serialize_results(sol, "csv")


def test_json_deterministic_across_fresh_loads():
    from qkb.corpus import load_corpus

    def render():
        corpus = load_corpus()
        sol = evaluate(parse_query(corpus.queries["q2"]), corpus.store)
        return to_json(sol)

    assert render() == render()
