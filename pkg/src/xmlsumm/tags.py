"""Tag unit importance: a mixture of corpus typicality and in-document specialty."""

from __future__ import annotations

from dataclasses import dataclass

from .document import Document, TagUnit, extract_tag_units
from .errors import ConfigError, XmlSummError
from .stats import CorpusStats

TIE_EPSILON = 1e-9


@dataclass(frozen=True)
class TagImportance:
    entries: dict  # TagUnit -> probability, in document first-occurrence order
    alpha: float

    def __getitem__(self, tag: TagUnit) -> float:
        return self.entries[tag]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def ranked(self) -> list[TagUnit]:
        """Tag units by descending probability; ties keep document order."""
        order = {tag: i for i, tag in enumerate(self.entries)}
        return sorted(self.entries, key=lambda t: (-self.entries[t], order[t]))

    def tied(self, a: TagUnit, b: TagUnit, eps: float = TIE_EPSILON) -> bool:
        return abs(self.entries[a] - self.entries[b]) <= eps


def typicality(tag: TagUnit, stats: CorpusStats) -> float:
    return stats.df(tag) / stats.num_documents


def _normalize(scores: dict) -> dict:
    if not scores:
        raise XmlSummError("cannot normalize an empty tag list")
    total = sum(scores.values())
    return {tag: score / total for tag, score in scores.items()}


def typicality_distribution(tags, stats: CorpusStats) -> dict:
    return _normalize({tag: typicality(tag, stats) for tag in tags})


def deviation(tag: TagUnit, doc: Document, stats: CorpusStats) -> float:
    """max(n / avg, avg / n) for the in-document count n of ``tag``."""
    n = doc.tag_counts.get(tag, 0)
    if n == 0:
        raise XmlSummError(f"tag absent from document: {tag}")
    avg = stats.tag_total(tag) / stats.num_documents
    return max(n / avg, avg / n)


def specialty_distribution(tags, doc: Document, stats: CorpusStats) -> dict:
    return _normalize({tag: deviation(tag, doc, stats) for tag in tags})


def check_unit_interval(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise ConfigError(f"{name} must be in [0,1]")


def tag_importance(doc: Document, stats: CorpusStats, alpha: float = 1.0) -> TagImportance:
    check_unit_interval("alpha", alpha)
    tags = extract_tag_units(doc)
    typ = typicality_distribution(tags, stats)
    spe = specialty_distribution(tags, doc, stats)
    if alpha == 1.0:
        entries = typ
    elif alpha == 0.0:
        entries = spe
    else:
        entries = {t: alpha * typ[t] + (1.0 - alpha) * spe[t] for t in tags}
    return TagImportance(entries, alpha)
