"""Ranking of text values within a text unit.

Redundant units (values sharing terms, or sharing whole values for entity
units) are ranked by centroid-query relevance re-ranked with maximal
marginal relevance.  The tag-context ranking is mixed with how often each
value occurs in the document and in the corpus.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from . import kernels
from .document import Document, TextOccurrence, TextUnit
from .errors import ConfigError, XmlSummError
from .stats import CorpusStats, normalize_value
from .tags import check_unit_interval
from .terms import TermVector, Tokenizer, default_tokenizer


class TextKind(str, enum.Enum):
    REDUNDANT = "redundant"
    NON_REDUNDANT = "non_redundant"


@dataclass(frozen=True)
class CentroidQuery:
    terms: tuple[str, ...]


@dataclass(frozen=True)
class TextImportance:
    """``ranked`` holds (occurrence index, probability), best first."""

    unit: TextUnit
    ranked: tuple[tuple[int, float], ...]
    kind: TextKind
    long_text: bool = False

    def probabilities(self) -> list[float]:
        probs = [0.0] * len(self.unit.occurrences)
        for idx, p in self.ranked:
            probs[idx] = p
        return probs

    def order(self) -> list[int]:
        return [idx for idx, _ in self.ranked]

    def occurrences(self) -> list[TextOccurrence]:
        return [self.unit.occurrences[idx] for idx, _ in self.ranked]


@dataclass(frozen=True)
class TextRankConfig:
    lam: float = 0.49
    mu: float = 0.48
    beta: float = 0.7
    centroid_m: int = 5
    long_text_threshold: float = 20
    entity: bool = False

    def validate(self) -> None:
        if self.lam < 0 or self.mu < 0 or self.lam + self.mu > 1 + 1e-12:
            raise ConfigError("lambda and mu must be >= 0 with lambda + mu <= 1")
        check_unit_interval("beta", self.beta)
        if self.centroid_m < 1:
            raise ConfigError("centroid-m must be >= 1")


def tokenize_unit(unit: TextUnit, tokenizer: Optional[Tokenizer] = None,
                  entity: bool = False) -> list[TermVector]:
    """Term vectors of every occurrence; entity values stay whole."""
    if entity:
        return [Counter([normalize_value(v)]) for v in unit.values]
    tok = tokenizer or default_tokenizer()
    return [tok(v) for v in unit.values]


def _redundant(vectors: list[TermVector]) -> bool:
    seen = set()
    for vec in vectors:
        for term in vec:
            if term in seen:
                return True
        seen.update(vec)
    return False


def is_redundant(unit: TextUnit, tokenizer=None, entity: bool = False) -> bool:
    return _redundant(tokenize_unit(unit, tokenizer, entity))


def _centroid(vectors: list[TermVector], m: int) -> CentroidQuery:
    freq = Counter()
    for vec in vectors:
        freq.update(vec)
    top = sorted(freq.items(), key=lambda kv: (-kv[1], kv[0]))[:m]
    return CentroidQuery(tuple(term for term, _ in top))


def centroid_query(unit: TextUnit, m: int = 5, tokenizer=None, entity: bool = False) -> CentroidQuery:
    """The ``m`` most frequent terms of the unit, ties broken lexicographically."""
    if m < 1:
        raise ConfigError("centroid-m must be >= 1")
    vectors = tokenize_unit(unit, tokenizer, entity)
    if not _redundant(vectors):
        raise XmlSummError("centroid query undefined without redundancy")
    return _centroid(vectors, m)


def _relevances(vectors: list[TermVector], query: CentroidQuery) -> list[float]:
    containing = {q: sum(1 for vec in vectors if q in vec) for q in query.terms}
    out = []
    for vec in vectors:
        r = 0.0
        for q in query.terms:
            if q in vec:
                r += vec[q] / containing[q]
        out.append(r)
    return out


def relevance(occurrence: TextOccurrence, query: CentroidQuery, unit: TextUnit,
              tokenizer=None, entity: bool = False) -> float:
    vectors = tokenize_unit(unit, tokenizer, entity)
    idx = unit.occurrences.index(occurrence)
    return _relevances(vectors, query)[idx]


def similarity(x, y, tokenizer=None, entity: bool = False) -> int:
    """Number of distinct normalized terms shared by two values."""
    x = x.value if isinstance(x, TextOccurrence) else x
    y = y.value if isinstance(y, TextOccurrence) else y
    if entity:
        return int(normalize_value(x) == normalize_value(y))
    tok = tokenizer or default_tokenizer()
    return len(tok(x).keys() & tok(y).keys())


def _ranked(probs: list[float]) -> tuple[tuple[int, float], ...]:
    # quantize so float noise cannot split ties; ties keep document order
    order = sorted(range(len(probs)), key=lambda i: (-round(probs[i], 12), i))
    return tuple((i, probs[i]) for i in order)


def _mmr_scores(vectors: list[TermVector], beta: float, m: int) -> tuple[list[int], list[float]]:
    query = _centroid(vectors, m)
    rel = _relevances(vectors, query)
    ids = {}
    flat, offsets = [], [0]
    for vec in vectors:
        flat.extend(sorted(ids.setdefault(t, len(ids)) for t in vec))
        offsets.append(len(flat))
    return kernels.mmr_select(rel, flat, offsets, beta)


def _mmr_probabilities(vectors: list[TermVector], beta: float, m: int) -> list[float]:
    order, scores = _mmr_scores(vectors, beta, m)
    low = min(scores)
    if low < 0:
        # shift every recorded score so the smallest becomes 1
        shift = -low + 1.0
        scores = [s + shift for s in scores]
    total = sum(scores)
    probs = [0.0] * len(vectors)
    for idx, s in zip(order, scores):
        probs[idx] = s / total
    return probs


def mmr_rank(unit: TextUnit, beta: float = 0.7, m: int = 5, tokenizer=None,
             entity: bool = False) -> TextImportance:
    check_unit_interval("beta", beta)
    if m < 1:
        raise ConfigError("centroid-m must be >= 1")
    vectors = tokenize_unit(unit, tokenizer, entity)
    if not _redundant(vectors):
        raise XmlSummError("centroid query undefined without redundancy")
    probs = _mmr_probabilities(vectors, beta, m)
    return TextImportance(unit, _ranked(probs), TextKind.REDUNDANT)


def _normalized(counts: list[float]) -> list[float]:
    total = sum(counts)
    return [c / total for c in counts]


def document_value_counts(doc: Document) -> Counter:
    return Counter(normalize_value(leaf.node.text) for leaf in doc.leaves
                   if leaf.node.text is not None)


def doc_frequency_distribution(unit: TextUnit, doc: Document,
                               value_counts: Optional[Counter] = None) -> list[float]:
    """Per-occurrence probabilities from document-wide value counts."""
    if not unit.occurrences:
        raise XmlSummError(f"empty text unit: {unit.tag_unit}")
    counts = value_counts if value_counts is not None else document_value_counts(doc)
    return _normalized([counts[normalize_value(v)] for v in unit.values])


def corpus_distribution(unit: TextUnit, stats: CorpusStats) -> list[float]:
    if not unit.occurrences:
        raise XmlSummError(f"empty text unit: {unit.tag_unit}")
    return _normalized([stats.value_frequency(unit.tag_unit, v) for v in unit.values])


def _mean_length(vectors: list[TermVector]) -> float:
    return sum(sum(vec.values()) for vec in vectors) / len(vectors)


def text_importance(unit: TextUnit, doc: Document, stats: CorpusStats,
                    config: Optional[TextRankConfig] = None, tokenizer=None,
                    value_counts: Optional[Counter] = None) -> TextImportance:
    config = config or TextRankConfig()
    config.validate()
    if not unit.occurrences:
        raise XmlSummError(f"empty text unit: {unit.tag_unit}")
    vectors = tokenize_unit(unit, tokenizer, config.entity)
    n = len(vectors)
    long_text = not config.entity and _mean_length(vectors) > config.long_text_threshold
    lam, mu = (1.0, 0.0) if long_text else (config.lam, config.mu)

    if _redundant(vectors):
        kind = TextKind.REDUNDANT
        context = _mmr_probabilities(vectors, config.beta, config.centroid_m)
    else:
        kind = TextKind.NON_REDUNDANT
        context = [1.0 / n] * n

    rest = max(0.0, 1.0 - lam - mu)
    doc_p = doc_frequency_distribution(unit, doc, value_counts) if mu > 0 else [0.0] * n
    corpus_p = corpus_distribution(unit, stats) if rest > 0 else [0.0] * n
    mixed = [lam * c + mu * d + rest * k for c, d, k in zip(context, doc_p, corpus_p)]
    return TextImportance(unit, _ranked(_normalized(mixed)), kind, long_text)
