from hypothesis import given, settings, strategies as st

import pytest

from xmlsumm import (
    TagUnit,
    XmlParseError,
    extract_tag_units,
    extract_text_units,
    parse_document,
)

import toycorpus


def paths(units):
    return [list(u.path) for u in units]


def shape(node):
    return (node.label, node.text, tuple(shape(c) for c in node.children))


def test_single_leaf_document():
    doc = parse_document(b"<movie><title>Heat</title></movie>")
    assert doc.root.label == "movie"
    (title,) = doc.root.children
    assert (title.label, title.text, title.children) == ("title", "Heat", ())
    assert paths(extract_tag_units(doc)) == [["movie", "title"]]


def test_preorder_ids_and_empty_leaf():
    doc = parse_document(b"<a><b/><b>x</b></a>")
    first, second = doc.root.children
    assert [doc.root.node_id, first.node_id, second.node_id] == [0, 1, 2]
    assert first.text is None and second.text == "x"


def test_odyssey_units(odyssey):
    units = paths(extract_tag_units(odyssey))
    assert ["movie", "title"] in units
    assert ["movie", "cast", "casting", "actor"] in units
    assert ["movie", "cast", "casting", "role"] in units
    actors = extract_text_units(odyssey)[TagUnit(("movie", "cast", "casting", "actor"))]
    assert actors.values == ["Dullea, Keir", "Lockwood, Gary", "Sylvester, William"]


def test_duplicate_paths_collapse():
    doc = parse_document(b"<a><b>x</b><b>y</b><c>z</c></a>")
    assert paths(extract_tag_units(doc)) == [["a", "b"], ["a", "c"]]
    units = extract_text_units(doc)
    assert units[TagUnit(("a", "b"))].values == ["x", "y"]


def test_all_empty_leaves():
    doc = parse_document(b"<a><b/><c>  </c><b></b></a>")
    units = extract_text_units(doc)
    assert set(units) == {TagUnit(("a", "b")), TagUnit(("a", "c"))}
    assert all(len(u) == 0 for u in units.values())


def test_parent_instance_links(odyssey):
    units = extract_text_units(odyssey)
    actors = units[TagUnit(("movie", "cast", "casting", "actor"))]
    roles = units[TagUnit(("movie", "cast", "casting", "role"))]
    for actor, role in zip(actors.occurrences, roles.occurrences):
        assert actor.parent_instance_id == role.parent_instance_id
        parent = odyssey.nodes_by_id[actor.parent_instance_id]
        assert parent.label == "casting"
        assert actor.node_id in {c.node_id for c in parent.children}


def test_attributes_become_leading_leaves():
    doc = parse_document(b'<m id="7" kind="film"><title lang="en">Heat</title></m>')
    labels = [c.label for c in doc.root.children]
    assert labels == ["@id", "@kind", "title"]
    title = doc.root.children[2]
    assert [(c.label, c.text) for c in title.children] == [("@lang", "en"), ("#text", "Heat")]


def test_mixed_content_and_noise_stripped():
    doc = parse_document(
        b'<?xml version="1.0"?><p xmlns:h="urn:x">hello <!-- c --><h:b>bold</h:b> '
        b"<?pi data?>world</p>"
    )
    assert [(c.label, c.text) for c in doc.root.children] == [
        ("#text", "hello"), ("b", "bold"), ("#text", "world"),
    ]


def test_whitespace_trimmed():
    doc = parse_document(b"<a>\n  <b>  padded value \n</b>\n</a>")
    assert doc.root.children[0].text == "padded value"


def test_predefined_entities():
    doc = parse_document(b"<a><b>Tom &amp; Jerry &lt;3</b></a>")
    assert doc.root.children[0].text == "Tom & Jerry <3"


@pytest.mark.parametrize("data", [b"", b"   \n"])
def test_empty_input(data):
    with pytest.raises(XmlParseError, match="empty input"):
        parse_document(data)


def test_malformed_reports_offset():
    data = b"<a><b>x</c></a>"
    with pytest.raises(XmlParseError) as info:
        parse_document(data)
    start = data.index(b"</c>")
    assert start <= info.value.offset < start + len(b"</c>")
    assert "byte" in str(info.value)


def test_round_trip_with_attributes_and_mixed():
    data = b'<m id="1"><t lang="en">Heat</t><p>a <b>x</b> c</p><e/><e k=""/></m>'
    doc = parse_document(data)
    again = parse_document(doc.to_xml())
    assert shape(again.root) == shape(doc.root)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_document_properties(seed):
    spec = toycorpus.random_doc_spec(toycorpus.seeded(seed))
    doc = parse_document(toycorpus.to_xml(spec))
    ids = [n.node_id for n in doc.iter_nodes()]
    assert ids == sorted(set(ids))
    units = extract_tag_units(doc)
    assert len(units) == len(set(units)) <= len(doc.leaves)
    assert units == extract_tag_units(doc)
    assert all(u.path[0] == doc.root.label for u in units)
    text_units = extract_text_units(doc)
    non_empty = sum(1 for leaf in doc.leaves if leaf.node.text is not None)
    assert sum(len(u) for u in text_units.values()) == non_empty
    for tag, unit in text_units.items():
        ids = [o.node_id for o in unit.occurrences]
        assert ids == sorted(ids)
    assert shape(parse_document(doc.to_xml()).root) == shape(doc.root)
