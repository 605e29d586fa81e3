"""Personalized search that re-ranks results by per-user click and dwell-time utilization."""

from .corpus import (
    BaselineResult,
    CorpusIndex,
    Document,
    load_corpus,
    normalize_query,
    tokenize_query,
)
from .errors import (
    AuthenticationError,
    ClickrankError,
    ConflictError,
    InvalidInputError,
    LogParseError,
    OrphanCloseError,
)
from .events import ClickEvent, ClickSequence, EventLog, SearchEvent
from .mining import (
    MiningConfig,
    Pattern,
    SequenceRecord,
    contains,
    generate_candidates,
    mine,
    mine_weighted,
    sequence_weight,
    weight_dwell,
    weight_time,
)
from .ranking import RankedResult, link_score, rank
from .textstats import (
    DEFAULT_STOPWORDS,
    DocumentStats,
    KeywordEntry,
    analyze_text,
    count_syllables,
    extract_keywords,
    flesch_index,
)
from .users import SessionToken, UserProfile, UserStore

__version__ = "0.1.0"

__all__ = [
    "AuthenticationError",
    "BaselineResult",
    "ClickEvent",
    "ClickSequence",
    "ClickrankError",
    "ConflictError",
    "CorpusIndex",
    "DEFAULT_STOPWORDS",
    "Document",
    "DocumentStats",
    "EventLog",
    "InvalidInputError",
    "KeywordEntry",
    "LogParseError",
    "MiningConfig",
    "OrphanCloseError",
    "Pattern",
    "RankedResult",
    "SearchEvent",
    "SequenceRecord",
    "SessionToken",
    "UserProfile",
    "UserStore",
    "analyze_text",
    "contains",
    "count_syllables",
    "extract_keywords",
    "flesch_index",
    "generate_candidates",
    "link_score",
    "load_corpus",
    "mine",
    "mine_weighted",
    "normalize_query",
    "rank",
    "sequence_weight",
    "tokenize_query",
    "weight_dwell",
    "weight_time",
]
