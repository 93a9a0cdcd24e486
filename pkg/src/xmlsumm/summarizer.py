"""Summary generation: tag budget allocation, co-occurring siblings, assembly."""

from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple, Optional

from .config import SummaryConfig
from .document import Document, Node, TagUnit, TextOccurrence, extract_text_units, to_xml
from .errors import ConfigError, XmlSummError
from .stats import CorpusStats
from .tags import TIE_EPSILON, tag_importance
from .terms import Tokenizer, default_tokenizer, load_stopwords
from .text import TextImportance, TextRankConfig, document_value_counts, text_importance

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AllocationRound:
    budget: int
    probabilities: dict  # renormalized weights over tags still available
    targets: dict
    added: dict


@dataclass(frozen=True)
class Allocation:
    counts: dict
    requested_size: int
    probabilities: dict = field(default_factory=dict)
    rounds: tuple = ()

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def largest_remainder(weights: Mapping, seats: int) -> dict:
    """Hamilton apportionment of ``seats`` in proportion to ``weights``.

    Remainder ties go to the larger weight, then to the earlier key.
    """
    exact = {k: Fraction(w) for k, w in weights.items()}
    total = sum(exact.values())
    if total <= 0:
        exact = {k: Fraction(1) for k in exact}
        total = Fraction(len(exact))
    quotas = {k: seats * w / total for k, w in exact.items()}
    out = {k: int(q) for k, q in quotas.items()}
    left = seats - sum(out.values())
    position = {k: i for i, k in enumerate(exact)}
    by_remainder = sorted(
        exact, key=lambda k: (-(quotas[k] - out[k]), -exact[k], position[k])
    )
    for k in by_remainder[:left]:
        out[k] += 1
    return out


def allocate_budget(importance: Mapping, available: Mapping, size: int) -> Allocation:
    """Split ``size`` spans over tag units in rounds.

    Each round apportions the outstanding budget over the tags that still
    have unused occurrences, weighted by their original probabilities, and
    caps every tag at what it has left.  Rounds repeat until the budget is
    spent or every tag is exhausted.
    """
    if size < 1:
        raise ConfigError("size must be >= 1")
    probs = dict(importance.entries if hasattr(importance, "entries") else importance)
    counts = {tag: 0 for tag in probs}
    left = {tag: int(available.get(tag, 0)) for tag in probs}
    budget = min(size, sum(left.values()))
    rounds = []
    while budget > 0:
        active = [tag for tag in probs if left[tag] > 0]
        if not active:
            break
        weights = {tag: Fraction(probs[tag]) for tag in active}
        targets = largest_remainder(weights, budget)
        added = {tag: min(targets[tag], left[tag]) for tag in active}
        total_w = sum(weights.values())
        rounds.append(AllocationRound(
            budget=budget,
            probabilities={t: float(w / total_w) if total_w else 1 / len(active)
                           for t, w in weights.items()},
            targets=targets,
            added=added,
        ))
        for tag, n in added.items():
            counts[tag] += n
            left[tag] -= n
        budget -= sum(added.values())
    return Allocation(counts, size, probs, tuple(rounds))


@dataclass(frozen=True)
class SiblingGroup:
    parent_path: tuple[str, ...]
    members: tuple[TagUnit, ...]
    instances: tuple[int, ...] = ()


def group_siblings(doc: Document, tags) -> list[SiblingGroup]:
    """Group tag units sharing a parent path, in order of first member."""
    members = defaultdict(list)
    for tag in tags:
        key = tag.parent_path if len(tag.path) > 1 else tag.path
        members[key].append(tag)
    per_instance = defaultdict(set)
    for leaf in doc.leaves:
        if leaf.node.text is not None and leaf.parent_id is not None:
            per_instance[(leaf.tag_unit.parent_path, leaf.parent_id)].add(leaf.tag_unit)
    groups = []
    for key, tag_list in members.items():
        wanted = set(tag_list)
        instances = sorted(
            pid for (path, pid), present in per_instance.items()
            if path == key and len(present & wanted) >= 2
        )
        groups.append(SiblingGroup(key, tuple(tag_list), tuple(instances)))
    return groups


class SelectedPair(NamedTuple):
    tag_unit: TagUnit
    occurrence: TextOccurrence
    fallback: bool = False  # lower-ranked sibling had no co-occurring value left


class _GroupFill:
    def __init__(self, allocation, text_importances, out):
        self.remaining = {}
        self.ranked = {}
        self.occurrences = {}
        self.taken = defaultdict(set)
        self.anchors = []  # parent instance ids of values picked so far
        self.out = out
        self.importances = text_importances
        self.allocation = allocation

    def prepare(self, tag):
        imp = self.importances.get(tag)
        if imp is None:
            raise XmlSummError(f"internal error: no text importance for {tag}")
        self.remaining[tag] = self.allocation.counts[tag]
        self.ranked[tag] = imp.order()
        self.occurrences[tag] = imp.unit.occurrences

    def take(self, tag, idx, fallback=False):
        occ = self.occurrences[tag][idx]
        self.taken[tag].add(idx)
        self.remaining[tag] -= 1
        self.anchors.append(occ.parent_instance_id)
        self.out.append(SelectedPair(tag, occ, fallback))

    def best_free(self, tag, parent=None):
        for idx in self.ranked[tag]:
            if idx in self.taken[tag]:
                continue
            if parent is None or self.occurrences[tag][idx].parent_instance_id == parent:
                return idx
        return None

    def fill_tied(self, tags, rng):
        while True:
            eligible = [t for t in tags if self.remaining[t] > 0]
            if not eligible:
                return
            lead = rng.choice(eligible)
            idx = self.best_free(lead)
            self.take(lead, idx)
            parent = self.occurrences[lead][idx].parent_instance_id
            for other in tags:
                if other == lead or self.remaining[other] == 0 or parent is None:
                    continue
                j = self.best_free(other, parent)
                if j is not None:
                    self.take(other, j)

    def fill_own(self, tag):
        while self.remaining[tag] > 0:
            self.take(tag, self.best_free(tag))

    def fill_follower(self, tag):
        anchors = list(dict.fromkeys(a for a in self.anchors if a is not None))
        by_parent = defaultdict(list)
        for idx in self.ranked[tag]:
            by_parent[self.occurrences[tag][idx].parent_instance_id].append(idx)
        # one value per anchor instance first, then any other co-occurring value
        for pass_limit in (1, None):
            for parent in anchors:
                free = [i for i in by_parent.get(parent, ()) if i not in self.taken[tag]]
                for idx in free[:pass_limit]:
                    if self.remaining[tag] == 0:
                        return
                    self.take(tag, idx)
        while self.remaining[tag] > 0:
            idx = self.best_free(tag)
            logger.warning(
                "co-occurrence fallback: %s value at node %d has no selected "
                "higher-ranked sibling in its parent instance",
                tag, self.occurrences[tag][idx].node_id,
            )
            self.take(tag, idx, fallback=True)


def _tie_classes(tags, probs, eps):
    classes = []
    for tag in tags:
        if classes and probs[classes[-1][0]] - probs[tag] <= eps:
            classes[-1].append(tag)
        else:
            classes.append([tag])
    return classes


def select_content(allocation: Allocation, groups, text_importances: Mapping,
                   seed: int = 0, tie_epsilon: float = TIE_EPSILON) -> list[SelectedPair]:
    """Fill every allocated tag unit with text values.

    Tied top-ranked siblings are filled together: a randomly chosen member
    contributes its best free value and the others take the value from the
    same parent instance.  Strictly lower-ranked siblings take values that
    share a parent instance with a value already chosen for a higher-ranked
    sibling, falling back to their own ranking (logged) when none is left.
    """
    rng = random.Random(seed)
    probs = allocation.probabilities
    position = {tag: i for i, tag in enumerate(probs)}
    out: list[SelectedPair] = []
    for group in groups:
        members = [t for t in group.members if allocation.counts.get(t, 0) > 0]
        if not members:
            continue
        members.sort(key=lambda t: (-probs[t], position[t]))
        fill = _GroupFill(allocation, text_importances, out)
        for tag in members:
            fill.prepare(tag)
        classes = _tie_classes(members, probs, tie_epsilon)
        first, rest = classes[0], classes[1:]
        if len(first) > 1:
            fill.fill_tied(first, rng)
        else:
            fill.fill_own(first[0])
        for cls in rest:
            for tag in cls:
                fill.fill_follower(tag)
    return out


@dataclass(frozen=True)
class Summary:
    root: Node
    provenance: dict  # summary node_id -> source node_id
    span_count: int
    pairs: tuple = ()

    def to_xml(self) -> str:
        return to_xml(self.root)


def assemble_summary(doc: Document, selected) -> Summary:
    """The minimal subtree of ``doc`` containing the selected leaves."""
    parent_of = {}
    for node in doc.iter_nodes():
        for child in node.children:
            parent_of[child.node_id] = node.node_id
    leaf_ids = set()
    for pair in selected:
        occ = pair.occurrence if isinstance(pair, SelectedPair) else pair[1]
        leaf_ids.add(occ.node_id)
    keep = {doc.root.node_id}
    for nid in leaf_ids:
        if nid not in doc.nodes_by_id:
            raise XmlSummError(f"selected node {nid} is not in the document")
        while nid is not None and nid not in keep:
            keep.add(nid)
            nid = parent_of.get(nid)
    provenance = {}

    def copy(node: Node) -> Node:
        new_id = len(provenance)
        provenance[new_id] = node.node_id
        kids = tuple(copy(c) for c in node.children if c.node_id in keep)
        text = node.text if node.node_id in leaf_ids else None
        return Node(node.label, kids, text, new_id)

    root = copy(doc.root)
    return Summary(root, provenance, len(leaf_ids), tuple(selected))


@lru_cache(maxsize=8)
def _tokenizer_for(stopword_file: Optional[str]) -> Tokenizer:
    if stopword_file is None:
        return default_tokenizer()
    return Tokenizer(load_stopwords(stopword_file))


def summarize(doc: Document, stats: CorpusStats, config: Optional[SummaryConfig] = None) -> Summary:
    config = (config or SummaryConfig()).validate()
    tokenizer = _tokenizer_for(config.stopword_file)
    tag_imp = tag_importance(doc, stats, config.alpha)
    units = extract_text_units(doc)
    available = {tag: len(units[tag]) for tag in tag_imp}
    allocation = allocate_budget(tag_imp, available, config.size)

    base = TextRankConfig(
        lam=config.lam, mu=config.mu, beta=config.beta,
        centroid_m=config.centroid_m, long_text_threshold=config.long_text_threshold,
    )
    value_counts = document_value_counts(doc)
    text_imps: dict[TagUnit, TextImportance] = {}
    for tag, count in allocation.counts.items():
        if count > 0:
            cfg = replace(base, entity=config.is_entity(tag))
            text_imps[tag] = text_importance(units[tag], doc, stats, cfg, tokenizer, value_counts)

    groups = group_siblings(doc, list(tag_imp))
    pairs = select_content(allocation, groups, text_imps, config.seed, config.tie_epsilon)
    return assemble_summary(doc, pairs)
