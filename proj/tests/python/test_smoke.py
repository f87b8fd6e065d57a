import json

import pytest

import nooplab

POINT_BINARY = """
class Point {
  Object x;
  Object y;
  Point eq(Point p) { return p; }
}
class ColorPoint extends Point {
  Object color;
}
"""


def test_pretty_print_round_trips():
    once = nooplab.pretty_print(POINT_BINARY)
    assert nooplab.pretty_print(once) == once


def test_check_modes():
    assert nooplab.check(POINT_BINARY, "nominal") == []
    narrowed = nooplab.corpus_source("point-binary-narrowed")
    diags = nooplab.check(narrowed, "nominal")
    assert any(d["code"] == "NOM004" for d in diags)
    # the structural discipline does not gate overrides at declaration time
    assert nooplab.check(narrowed, "structural") == []


def test_subtyping_disagrees_across_disciplines():
    assert nooplab.nominal_subtype(POINT_BINARY, "ColorPoint", "Point")
    assert not nooplab.structural_subtype(POINT_BINARY, "ColorPoint", "Point")


def test_structural_types_render_canonically():
    src = "class P { P eq(P p) { return p; } }"
    assert nooplab.structural_type(src, "P") == "μX.{eq(X): X}"
    assert nooplab.structural_type(src, "Object") == "{}"


def test_twins_are_equivalent():
    twins = nooplab.corpus_source("twins")
    assert nooplab.type_equivalent(twins, "A", "B")


def test_audit_json():
    doc = json.loads(nooplab.audit(nooplab.corpus_source("point-binary")))
    assert doc["summary"]["nominal"] == "EQUIV"
    assert doc["summary"]["structural"] == "DIVERGES"
    assert ["ColorPoint", "Point"] in doc["summary"]["witnesses"]


def test_run_outcomes():
    assert nooplab.run("new Object()") == "Object{}"
    assert nooplab.run("new Object()", erase=True) == "{}"
    assert nooplab.run(nooplab.corpus_source("downcast")).startswith("CastError")
    assert nooplab.run(nooplab.corpus_source("loop")).startswith("Timeout")


def test_diagnostics_raise():
    with pytest.raises(ValueError):
        nooplab.run("class A {")
    with pytest.raises(ValueError):
        nooplab.nominal_subtype(POINT_BINARY, "Nope", "Point")


def test_dump_signatures():
    doc = json.loads(nooplab.dump_signatures(POINT_BINARY))
    names = [entry["name"] for entry in doc["classes"]]
    assert names == sorted(names)
    assert "ColorPoint" in names


def test_corpus_roundtrip():
    names = nooplab.corpus_names()
    assert "point-binary" in names
    for name in names:
        source = nooplab.corpus_source(name)
        assert nooplab.pretty_print(source)
