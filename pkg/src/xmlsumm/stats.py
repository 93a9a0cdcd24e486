"""Corpus-wide tag and value statistics, with a line-oriented on-disk format.

File layout (UTF-8, LF, tab separated)::

    xmlsumm-stats   1
    num_documents   <int>
    T   <path>   <doc_frequency>   <total_tag_count>
    V   <path>   <value>   <count>

Path segments escape ``%``, tab, CR, LF and ``/``; values escape the same
set except ``/``.  Records are sorted so the output is deterministic.
"""

from __future__ import annotations

import os
import tempfile
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .document import Document, TagUnit
from .errors import EmptyCorpusError, StatsFormatError, UnknownTagUnitError

FORMAT_VERSION = 1
MAGIC = "xmlsumm-stats"

# Stand-in counts for tag units and values never seen in the stats corpus.
UNSEEN_DOC_FREQUENCY = 0.5
UNSEEN_TAG_COUNT = 0.5
UNSEEN_VALUE_COUNT = 0.5


def normalize_value(value: str) -> str:
    return value.strip().casefold()


@dataclass
class CorpusStats:
    num_documents: int
    doc_frequency: dict = field(default_factory=dict)
    total_tag_count: dict = field(default_factory=dict)
    value_count: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_document(cls, doc: Document) -> "CorpusStats":
        counts = doc.tag_counts
        values = Counter(
            (leaf.tag_unit, normalize_value(leaf.node.text))
            for leaf in doc.leaves
            if leaf.node.text is not None
        )
        return cls(
            num_documents=1,
            doc_frequency={tag: 1 for tag in counts},
            total_tag_count=dict(counts),
            value_count=dict(values),
        )

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        """Return the statistics of the union of both corpora."""
        return CorpusStats(
            num_documents=self.num_documents + other.num_documents,
            doc_frequency=_add(self.doc_frequency, other.doc_frequency),
            total_tag_count=_add(self.total_tag_count, other.total_tag_count),
            value_count=_add(self.value_count, other.value_count),
        )

    @property
    def tag_units(self) -> list[TagUnit]:
        return sorted(self.doc_frequency)

    def df(self, tag: TagUnit) -> float:
        """Document frequency, smoothed for tag units absent from the corpus."""
        return self.doc_frequency.get(tag, UNSEEN_DOC_FREQUENCY)

    def tag_total(self, tag: TagUnit) -> float:
        return self.total_tag_count.get(tag, UNSEEN_TAG_COUNT)

    def value_frequency(self, tag: TagUnit, value: str) -> float:
        return self.value_count.get((tag, normalize_value(value)), UNSEEN_VALUE_COUNT)

    def validate(self) -> None:
        if self.num_documents < 1:
            raise StatsFormatError(f"num_documents must be >= 1, got {self.num_documents}")
        for tag, df in self.doc_frequency.items():
            total = self.total_tag_count.get(tag, 0)
            if not 1 <= df <= self.num_documents or total < df:
                raise StatsFormatError(f"inconsistent counts for tag unit {tag}")


def _add(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, count in b.items():
        out[key] = out.get(key, 0) + count
    return out


def build_stats(documents: Iterable[Document]) -> CorpusStats:
    """Aggregate statistics over a stream of documents."""
    stats = None
    for doc in documents:
        part = CorpusStats.from_document(doc)
        stats = part if stats is None else stats.merge(part)
    if stats is None:
        raise EmptyCorpusError()
    return stats


def average_count(stats: CorpusStats, tag: TagUnit) -> float:
    """Mean number of occurrences of ``tag`` per corpus document."""
    if tag not in stats.total_tag_count:
        raise UnknownTagUnitError(f"unknown tag unit: {tag}")
    return stats.total_tag_count[tag] / stats.num_documents


# -- persistence ------------------------------------------------------------

_SEGMENT_ESCAPES = {"%": "%25", "\t": "%09", "\n": "%0A", "\r": "%0D", "/": "%2F"}
_VALUE_ESCAPES = {k: v for k, v in _SEGMENT_ESCAPES.items() if k != "/"}


def _encode(text: str, table: dict) -> str:
    return "".join(table.get(ch, ch) for ch in text)


def _decode(text: str) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "%":
            code = text[i + 1 : i + 3]
            if len(code) != 2:
                raise ValueError(f"truncated escape in {text!r}")
            out.append(chr(int(code, 16)))
            i += 3
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _encode_path(tag: TagUnit) -> str:
    return "/".join(_encode(seg, _SEGMENT_ESCAPES) for seg in tag.path)


def _decode_path(text: str) -> TagUnit:
    return TagUnit(tuple(_decode(seg) for seg in text.split("/")))


def dumps(stats: CorpusStats) -> str:
    lines = [f"{MAGIC}\t{stats.format_version}", f"num_documents\t{stats.num_documents}"]
    tag_lines = sorted(
        (_encode_path(tag), stats.doc_frequency[tag], stats.total_tag_count[tag])
        for tag in stats.doc_frequency
    )
    lines.extend(f"T\t{p}\t{df}\t{total}" for p, df, total in tag_lines)
    value_lines = sorted(
        (_encode_path(tag), _encode(value, _VALUE_ESCAPES), count)
        for (tag, value), count in stats.value_count.items()
    )
    lines.extend(f"V\t{p}\t{v}\t{count}" for p, v, count in value_lines)
    return "\n".join(lines) + "\n"


def loads(text: str) -> CorpusStats:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or not lines[0].startswith(MAGIC + "\t"):
        raise StatsFormatError(f"missing '{MAGIC}' version line", line=1)
    try:
        version = int(lines[0].split("\t", 1)[1])
    except ValueError:
        raise StatsFormatError("malformed version line", line=1) from None
    if version != FORMAT_VERSION:
        raise StatsFormatError(
            f"unsupported stats format version {version} (expected {FORMAT_VERSION})", line=1
        )
    if len(lines) < 2:
        raise StatsFormatError("missing num_documents line", line=2)
    head = lines[1].split("\t")
    if len(head) != 2 or head[0] != "num_documents" or not _is_int(head[1]):
        raise StatsFormatError("malformed num_documents line", line=2)
    num_documents = int(head[1])
    if num_documents < 1:
        raise StatsFormatError(f"num_documents must be >= 1, got {num_documents}", line=2)

    stats = CorpusStats(num_documents=num_documents, format_version=version)
    for lineno, line in enumerate(lines[2:], start=3):
        fields = line.split("\t")
        try:
            kind = fields[0]
            if kind == "T" and len(fields) == 4:
                tag = _decode_path(fields[1])
                df, total = _parse_count(fields[2]), _parse_count(fields[3])
                if tag in stats.doc_frequency:
                    raise ValueError(f"duplicate tag unit {tag}")
                if not 1 <= df <= num_documents or total < df:
                    raise ValueError(f"inconsistent counts for tag unit {tag}")
                stats.doc_frequency[tag] = df
                stats.total_tag_count[tag] = total
            elif kind == "V" and len(fields) == 4:
                key = (_decode_path(fields[1]), _decode(fields[2]))
                count = _parse_count(fields[3])
                if count < 1 or key in stats.value_count:
                    raise ValueError("bad or duplicate value record")
                stats.value_count[key] = count
            else:
                raise ValueError(f"unrecognized record {line!r}")
        except ValueError as exc:
            raise StatsFormatError(f"corrupt record: {exc}", line=lineno) from None
    return stats


def _is_int(text: str) -> bool:
    return text.lstrip("-").isdigit()


def _parse_count(text: str) -> int:
    if not text.isdigit():
        raise ValueError(f"not a non-negative integer: {text!r}")
    return int(text)


def save_stats(stats: CorpusStats, destination) -> None:
    """Write ``stats`` to ``destination`` atomically."""
    destination = os.fspath(destination)
    directory = os.path.dirname(os.path.abspath(destination))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".stats-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(dumps(stats))
        os.replace(tmp, destination)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_stats(source) -> CorpusStats:
    with open(source, encoding="utf-8", newline="") as fh:
        return loads(fh.read())
