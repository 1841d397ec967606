import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fintopo.documents import (
    ParseError,
    SpaceDocument,
    ValidationError,
    instance_doc,
    instance_from_doc,
    load_space,
    map_to_text,
    parse_map_text,
    parse_space_text,
    parse_subset,
)
from fintopo.claims import example_instance
from fintopo.enumeration import Instance
from fintopo.space import validate_topology

from conftest import small_spaces

EX_TEXT = """\
# the three-point example
points: a b c
open: {}
open: {a}
open: {a, b, c}
"""


def test_parse_text_space(ex_x):
    doc = parse_space_text(EX_TEXT)
    assert doc.points == ["a", "b", "c"]
    assert doc.to_space() == ex_x
    assert doc.to_space().point_names == ("a", "b", "c")


def test_parse_json_space(ex_x):
    text = json.dumps({"points": ["a", "b", "c"], "opens": [[], ["a"], ["a", "b", "c"]]})
    assert parse_space_text(text).to_space() == ex_x


def test_unknown_point_is_named_with_position():
    bad = EX_TEXT.replace("open: {a}", "open: {a, z}")
    with pytest.raises(ParseError) as exc:
        parse_space_text(bad, "bad.space")
    assert "'z'" in str(exc.value)
    assert exc.value.line == 4
    assert str(exc.value).startswith("bad.space:4:")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("open: {}\n", "missing 'points:'"),
        ("points: a a\nopen: {}\n", "unique"),
        ("points: a\npoints: b\n", "duplicate"),
        ("points: a\nclosed: {}\n", "unknown key"),
        ("points: a\nopen: a\n", "braced"),
        ("points: a\njust words\n", "expected 'points:'"),
        ('{"points": ["a"]}', "needs 'points' and 'opens'"),
        ('{"points": [', "<input>:1:"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_space_text(text)
    assert fragment in str(exc.value)


def test_validation_error_names_witness():
    doc = parse_space_text("points: a b c\nopen: {}\nopen: {a}\nopen: {b}\nopen: {a,b,c}\n")
    with pytest.raises(ValidationError) as exc:
        doc.to_space()
    assert "{a}" in str(exc.value) and "{b}" in str(exc.value)


def test_load_space(tmp_path, ex_x):
    path = tmp_path / "x.space"
    path.write_text(EX_TEXT)
    assert load_space(path) == ex_x


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(small_spaces(4)))
def test_document_round_trip(space):
    doc = SpaceDocument.from_space(space)
    again = parse_space_text(doc.to_text()).to_space()
    assert again == space
    assert SpaceDocument.from_space(again) == doc
    assert parse_space_text(json.dumps(doc.as_dict())).to_space() == space


def test_round_trip_ignores_open_order(ex_x):
    shuffled = SpaceDocument(["a", "b", "c"], [["a", "b", "c"], ["a"], []])
    assert shuffled.to_space() == ex_x


def test_parse_subset(ex_x):
    assert parse_subset("{a,c}", ex_x) == 0b101
    assert parse_subset("a, c", ex_x) == 0b101
    assert parse_subset("{}", ex_x) == 0
    with pytest.raises(ParseError):
        parse_subset("{a,z}", ex_x)


def test_parse_map(ex_x, ex_y):
    assert parse_map_text("a -> q\nb -> p\nc -> q\n", ex_x, ex_y) == (1, 0, 1)
    assert parse_map_text("a->q, b->p, c->q", ex_x, ex_y) == (1, 0, 1)
    assert map_to_text((1, 0, 1), ex_x, ex_y) == "a -> q\nb -> p\nc -> q\n"


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("a -> q\nb -> p\n", "no image given for c"),
        ("a -> q\na -> p\nb -> p\nc -> q\n", "assigned twice"),
        ("a -> r\n", "unknown codomain point 'r'"),
        ("z -> q\n", "unknown domain point 'z'"),
        ("a q\n", "expected 'x -> y'"),
    ],
)
def test_map_errors(ex_x, ex_y, text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_map_text(text, ex_x, ex_y)
    assert fragment in str(exc.value)


def test_instance_round_trip():
    inst = example_instance()
    doc = json.loads(json.dumps(instance_doc(inst)))
    assert doc["maps"] == [{"a": "q", "b": "p", "c": "q"}]
    back = instance_from_doc(doc)
    assert back.spaces == inst.spaces and back.maps == inst.maps
    x = validate_topology(2, [0, 3])
    inst = Instance((x,), (), (0b01, 0b11), ((2, 0),))
    assert instance_from_doc(instance_doc(inst)) == inst
