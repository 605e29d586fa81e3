"""Utilization-based re-ranking of baseline search results.

A link starts at weight zero. Every click on it under the same query adds
one dwell weight (0.3 floor for the click itself, up to 1.0 more for dwell
relative to the query's activity window), so frequently visited and long
visited links rise together. Links the user never touched keep score 0 and
stay in baseline order after the weighted ones: results are reordered,
never dropped.

Scores are keyed on the exact recorded query string; callers normalize
queries before logging so that trivially different phrasings share one
history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import BaselineResult
from .events import ClickEvent
from .mining import weight_dwell


@dataclass(frozen=True)
class RankedResult:
    doc_id: str
    uri: str
    title: str
    baseline_rank: int
    score: float
    rank: int


def dwell_window_minutes(events: Iterable[ClickEvent]) -> float:
    """Span in minutes from the earliest open to the latest close (or open).

    This is the normalization window for dwell weights: the full stretch of
    the user's activity under one query. Zero when there are no events or a
    single instantaneous one.
    """
    events = list(events)
    if not events:
        return 0.0
    start = min(e.open_ts for e in events)
    end = max(e.close_ts if e.close_ts is not None else e.open_ts for e in events)
    return max(0.0, (end - start).total_seconds() / 60.0)


def link_score(doc_id: str, events: Sequence[ClickEvent]) -> float:
    """Summed dwell weight of every click on ``doc_id`` among ``events``.

    ``events`` must already be the user's clicks for the one query being
    ranked (completed and pending); pending opens contribute zero dwell and
    therefore exactly the 0.3 per-click floor. No clicks means score 0.
    """
    mine = [e for e in events if e.doc_id == doc_id]
    if not mine:
        return 0.0
    window = dwell_window_minutes(events)
    return math.fsum(weight_dwell(e.dwell_seconds / 60.0, window) for e in mine)


def rank(baseline: Sequence[BaselineResult], events: Sequence[ClickEvent]) -> list[RankedResult]:
    """Stable re-sort of the baseline by utilization score, descending.

    Ties, including the all-zero first search, keep baseline relative
    order, so a user with no history sees exactly the baseline listing.
    The result multiset always equals the baseline multiset.
    """
    scores = {r.doc_id: link_score(r.doc_id, events) for r in baseline}
    ordered = sorted(baseline, key=lambda r: -scores[r.doc_id])
    return [
        RankedResult(
            doc_id=r.doc_id,
            uri=r.uri,
            title=r.title,
            baseline_rank=r.baseline_rank,
            score=scores[r.doc_id],
            rank=position,
        )
        for position, r in enumerate(ordered, start=1)
    ]
