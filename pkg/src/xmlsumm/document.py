"""XML document model and decomposition into tag and text information units.

Documents are parsed with expat into an immutable ordered tree.  Attributes
become leaf children named ``@name`` (declaration order, before any element
content), text interleaved with elements becomes ``#text`` leaf children,
and comments, processing instructions and namespace prefixes are dropped.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Optional
from xml.parsers import expat
from xml.sax.saxutils import escape, quoteattr

from .errors import XmlParseError

ATTRIBUTE_PREFIX = "@"
TEXT_LABEL = "#text"

_XML_WS = " \t\r\n"


@dataclass(frozen=True)
class Node:
    label: str
    children: tuple["Node", ...] = ()
    text: Optional[str] = None
    node_id: int = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def iter(self) -> Iterator["Node"]:
        """Yield this node and its descendants in document (pre-)order."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True, order=True)
class TagUnit:
    """A unique root-to-leaf label path."""

    path: tuple[str, ...]

    def __post_init__(self):
        if not self.path:
            raise ValueError("tag unit path must be non-empty")

    @classmethod
    def parse(cls, text: str) -> "TagUnit":
        return cls(tuple(text.strip("/").split("/")))

    @property
    def label(self) -> str:
        return self.path[-1]

    @property
    def parent_path(self) -> tuple[str, ...]:
        return self.path[:-1]

    def __str__(self):
        return "/".join(self.path)


@dataclass(frozen=True)
class TextOccurrence:
    value: str
    node_id: int
    parent_instance_id: Optional[int]  # None only when the root itself is the leaf


@dataclass(frozen=True)
class TextUnit:
    tag_unit: TagUnit
    occurrences: tuple[TextOccurrence, ...] = ()

    @property
    def values(self) -> list[str]:
        return [occ.value for occ in self.occurrences]

    def __len__(self):
        return len(self.occurrences)


@dataclass(frozen=True)
class Leaf:
    """A leaf node together with its label path and parent element id."""

    tag_unit: TagUnit
    node: Node
    parent_id: Optional[int]


@dataclass(frozen=True)
class Document:
    root: Node
    source_id: Optional[str] = field(default=None, compare=False)

    def iter_nodes(self) -> Iterator[Node]:
        return self.root.iter()

    @cached_property
    def leaves(self) -> tuple[Leaf, ...]:
        out = []
        stack = [(self.root, (self.root.label,), None)]
        while stack:
            node, path, parent_id = stack.pop()
            if node.is_leaf:
                out.append(Leaf(TagUnit(path), node, parent_id))
                continue
            for child in reversed(node.children):
                stack.append((child, path + (child.label,), node.node_id))
        return tuple(out)

    @cached_property
    def nodes_by_id(self) -> dict[int, Node]:
        return {node.node_id: node for node in self.iter_nodes()}

    @cached_property
    def tag_counts(self) -> Counter:
        """Number of leaf instances per tag unit (empty leaves included)."""
        return Counter(leaf.tag_unit for leaf in self.leaves)

    def to_xml(self) -> str:
        return to_xml(self.root)


class _TreeBuilder:
    def __init__(self):
        self.next_id = 0
        self.stack = []  # [label, node_id, children, pending_text]
        self.root = None

    def _take_id(self) -> int:
        nid = self.next_id
        self.next_id += 1
        return nid

    def _flush_text(self, frame):
        text = "".join(frame[3]).strip(_XML_WS)
        frame[3] = []
        if text:
            frame[2].append(Node(TEXT_LABEL, (), text, self._take_id()))

    def start(self, name, attrs):
        if self.stack:
            self._flush_text(self.stack[-1])
        frame = [_local(name), self._take_id(), [], []]
        for i in range(0, len(attrs), 2):
            value = attrs[i + 1].strip(_XML_WS) or None
            frame[2].append(
                Node(ATTRIBUTE_PREFIX + _local(attrs[i]), (), value, self._take_id())
            )
        self.stack.append(frame)

    def end(self, name):
        frame = self.stack.pop()
        label, node_id, children, pending = frame
        if children:
            self._flush_text(frame)
            node = Node(label, tuple(children), None, node_id)
        else:
            text = "".join(pending).strip(_XML_WS) or None
            node = Node(label, (), text, node_id)
        if self.stack:
            self.stack[-1][2].append(node)
        else:
            self.root = node

    def data(self, text):
        if self.stack:
            self.stack[-1][3].append(text)


def _local(name: str) -> str:
    # expat reports namespaced names as "uri local" with our separator
    return name.rsplit(" ", 1)[-1].split(":")[-1]


def parse_document(data, source_id=None) -> Document:
    """Parse a UTF-8 XML byte string (or str) into a :class:`Document`.

    Raises :class:`XmlParseError` carrying the byte offset of the failure.
    """
    if isinstance(data, str):
        data = data.encode("utf-8")
    if not data.strip():
        raise XmlParseError("empty input", offset=0, source_id=source_id)
    builder = _TreeBuilder()
    parser = expat.ParserCreate(namespace_separator=" ")
    parser.ordered_attributes = True
    parser.StartElementHandler = builder.start
    parser.EndElementHandler = builder.end
    parser.CharacterDataHandler = builder.data
    try:
        parser.Parse(data, True)
    except expat.ExpatError as exc:
        raise XmlParseError(
            expat.ErrorString(exc.code), offset=parser.ErrorByteIndex, source_id=source_id
        ) from None
    if builder.root is None:
        raise XmlParseError("no root element", offset=0, source_id=source_id)
    return Document(builder.root, source_id)


def parse_file(path) -> Document:
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_document(data, source_id=os.fspath(path))


def extract_tag_units(doc: Document) -> list[TagUnit]:
    """Distinct root-to-leaf paths, in order of first occurrence."""
    return list(dict.fromkeys(leaf.tag_unit for leaf in doc.leaves))


def extract_text_units(doc: Document) -> dict[TagUnit, TextUnit]:
    grouped = {tag: [] for tag in extract_tag_units(doc)}
    for leaf in doc.leaves:
        if leaf.node.text is not None:
            grouped[leaf.tag_unit].append(
                TextOccurrence(leaf.node.text, leaf.node.node_id, leaf.parent_id)
            )
    return {tag: TextUnit(tag, tuple(occs)) for tag, occs in grouped.items()}


def to_xml(root: Node, declaration: bool = True) -> str:
    """Serialize a tree with 2-space indentation.

    ``@name`` leaves at the front of a child list are written back as
    attributes and ``#text`` leaves as character data, so a parsed document
    re-parses to the same tree.
    """
    lines = ['<?xml version="1.0" encoding="UTF-8"?>'] if declaration else []
    _write(root, 0, lines)
    return "\n".join(lines) + "\n"


def _write(node: Node, depth: int, lines: list[str]) -> None:
    pad = "  " * depth
    if node.label == TEXT_LABEL:
        lines.append(pad + escape(node.text or ""))
        return
    children = list(node.children)
    attrs = []
    while children and children[0].is_leaf and children[0].label.startswith(ATTRIBUTE_PREFIX):
        attr = children.pop(0)
        attrs.append(f" {attr.label[1:]}={quoteattr(attr.text or '')}")
    head = node.label + "".join(attrs)
    if not children:
        if node.is_leaf and node.text is not None:
            lines.append(f"{pad}<{head}>{escape(node.text)}</{node.label}>")
        else:
            lines.append(f"{pad}<{head}/>")
    elif len(children) == 1 and children[0].label == TEXT_LABEL:
        lines.append(f"{pad}<{head}>{escape(children[0].text or '')}</{node.label}>")
    else:
        lines.append(f"{pad}<{head}>")
        for child in children:
            _write(child, depth + 1, lines)
        lines.append(f"{pad}</{node.label}>")
