"""Extractive, size-constrained summaries of data-oriented XML documents."""

__version__ = "0.1.0"

from .config import SummaryConfig, resolve_config
from .document import (
    Document,
    Node,
    TagUnit,
    TextOccurrence,
    TextUnit,
    extract_tag_units,
    extract_text_units,
    parse_document,
    parse_file,
    to_xml,
)
from .errors import (
    ConfigError,
    EmptyCorpusError,
    StatsFormatError,
    UnknownTagUnitError,
    XmlParseError,
    XmlSummError,
)
from .stats import CorpusStats, average_count, build_stats, load_stats, save_stats
from .summarizer import (
    Allocation,
    SiblingGroup,
    Summary,
    allocate_budget,
    assemble_summary,
    group_siblings,
    select_content,
    summarize,
)
from .tags import TagImportance, tag_importance
from .text import TextImportance, mmr_rank, text_importance
