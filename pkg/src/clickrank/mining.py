"""Level-wise mining of frequent click subsequences.

Three support modes over the same candidate machinery:

* ``plain`` counts each containing sequence once (classic integer support);
* ``time_weighted`` weights a sequence by the mean recency of its items,
  ``(item_ts - min_ts) / (max_ts - min_ts) + 0.3`` per item;
* ``dwell_weighted`` weights by mean utilization,
  ``clamp(dwell_minutes, 0, window) / window + 0.3`` per item, where the
  window is the observation span in minutes.

The weight is a property of the input sequence, never of the candidate
being counted: every pattern a sequence contains receives the same
contribution from it. That keeps support anti-monotone (downward closure),
which is what licenses the candidate pruning below.

Containment is plain order-preserving subsequence with unlimited gaps;
items are single doc ids, not itemsets.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from datetime import timedelta
from typing import Iterable, Sequence

from .errors import InvalidInputError

logger = logging.getLogger(__name__)

WEIGHT_FLOOR = 0.3

MODES = ("plain", "time_weighted", "dwell_weighted")

Items = tuple[str, ...]


@dataclass(frozen=True)
class SequenceRecord:
    """One input sequence: ordered items with optional per-item timestamp and dwell."""

    items: Items
    item_ts: tuple = ()
    item_dwell_min: tuple[float, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        object.__setattr__(self, "item_ts", tuple(self.item_ts))
        object.__setattr__(self, "item_dwell_min", tuple(self.item_dwell_min))
        if not self.items:
            raise InvalidInputError("sequence must contain at least one item")
        for name, values in (("item_ts", self.item_ts), ("item_dwell_min", self.item_dwell_min)):
            if values and len(values) != len(self.items):
                raise InvalidInputError(f"{name} must parallel items")


@dataclass(frozen=True)
class Pattern:
    items: Items
    support: float

    @property
    def length(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class MiningConfig:
    """Mining parameters.

    ``min_sup`` is an absolute (possibly weighted) support threshold, not a
    fraction. ``min_ts``/``max_ts`` bound the observation window for the
    weighted modes; left unset, they are derived from the database's item
    timestamps. Timestamps may be datetimes or plain numbers; numbers are
    interpreted as minutes.
    """

    min_sup: float
    mode: str = "plain"
    min_ts: object | None = None
    max_ts: object | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise InvalidInputError(f"unknown mining mode {self.mode!r}")
        if self.min_sup <= 0:
            raise InvalidInputError("min_sup must be positive")
        if (
            self.min_ts is not None
            and self.max_ts is not None
            and self.max_ts < self.min_ts
        ):
            raise InvalidInputError("max_ts must not precede min_ts")


def weight_time(item_ts, min_ts, max_ts) -> float:
    """Recency weight: position of the item inside the observation window, plus 0.3.

    A degenerate window (max_ts == min_ts) counts as full recency, 1.3.
    """
    if item_ts < min_ts or item_ts > max_ts:
        raise InvalidInputError("item timestamp outside the observation window")
    if max_ts == min_ts:
        ratio = 1.0
    else:
        ratio = (item_ts - min_ts) / (max_ts - min_ts)
    return ratio + WEIGHT_FLOOR


def weight_dwell(dwell_minutes: float, window_minutes: float) -> float:
    """Utilization weight: dwell as a fraction of the window, plus 0.3.

    Dwell is clamped into [0, window]; a zero window counts as full
    utilization, 1.3. Negative dwell is clamped to 0 with a warning rather
    than rejected.
    """
    if window_minutes < 0:
        raise InvalidInputError("window must be non-negative")
    if dwell_minutes < 0:
        logger.warning("negative dwell %.6g clamped to 0", dwell_minutes)
        dwell_minutes = 0.0
    if window_minutes == 0:
        ratio = 1.0
    else:
        ratio = min(dwell_minutes, window_minutes) / window_minutes
    return ratio + WEIGHT_FLOOR


def _window_minutes(min_ts, max_ts) -> float:
    span = max_ts - min_ts
    if isinstance(span, timedelta):
        return span.total_seconds() / 60.0
    return float(span)


def sequence_weight(seq: SequenceRecord, config: MiningConfig) -> float:
    """The contribution this sequence makes to every pattern it contains."""
    if config.mode == "plain":
        return 1.0
    if config.mode == "time_weighted":
        if not seq.item_ts:
            raise InvalidInputError("time_weighted mining needs item timestamps")
        if config.min_ts is None or config.max_ts is None:
            raise InvalidInputError("time_weighted mining needs window bounds")
        weights = [weight_time(ts, config.min_ts, config.max_ts) for ts in seq.item_ts]
    else:
        if not seq.item_dwell_min:
            raise InvalidInputError("dwell_weighted mining needs item dwell times")
        if config.min_ts is None or config.max_ts is None:
            raise InvalidInputError("dwell_weighted mining needs window bounds")
        window = _window_minutes(config.min_ts, config.max_ts)
        weights = [weight_dwell(d, window) for d in seq.item_dwell_min]
    return math.fsum(weights) / len(weights)


def is_subsequence(pattern: Sequence, seq: Sequence) -> bool:
    """True when pattern occurs within seq in order, gaps allowed."""
    pos = 0
    if not pattern:
        return True
    for item in seq:
        if item == pattern[pos]:
            pos += 1
            if pos == len(pattern):
                return True
    return False


def _item_tuple(value) -> Items:
    return tuple(getattr(value, "items", value))


def contains(seq, pattern) -> bool:
    """Gap-allowed subsequence containment over records, patterns or raw item lists."""
    return is_subsequence(_item_tuple(pattern), _item_tuple(seq))


def generate_candidates(frequent_prev: Iterable) -> set[Items]:
    """Length-(k) candidates from the frequent length-(k-1) patterns.

    Join: p extends q's last item whenever p minus its first item equals
    q minus its last (for k=2 this joins every ordered pair, self-pairs
    included). Prune: a candidate survives only if every length-(k-1)
    subsequence of it is frequent.
    """
    prev = {_item_tuple(p) for p in frequent_prev}
    if not prev:
        return set()
    lengths = {len(p) for p in prev}
    if len(lengths) != 1 or 0 in lengths:
        raise InvalidInputError("all input patterns must share one positive length")
    joined = set()
    for p in prev:
        for q in prev:
            if p[1:] == q[:-1]:
                joined.add(p + (q[-1],))
    return {
        cand
        for cand in joined
        if all(
            cand[:i] + cand[i + 1:] in prev for i in range(len(cand))
        )
    }


def mine_weighted(
    sequences: list[Items],
    weights: list[float],
    min_sup: float,
) -> list[Pattern]:
    """Level-wise frequent-pattern search given one weight per sequence.

    support(p) = sum of weights of the sequences containing p; a pattern is
    frequent iff its support reaches min_sup. Supports are summed in fixed
    database order with compensated summation, so results do not depend on
    thread scheduling or float re-association.

    Returns patterns sorted by support descending, then items ascending.
    """
    if min_sup <= 0:
        raise InvalidInputError("min_sup must be positive")
    if len(sequences) != len(weights):
        raise InvalidInputError("weights must parallel sequences")
    sequences = [tuple(s) for s in sequences]
    found: list[Pattern] = []
    candidates: set[Items] = {(item,) for seq in sequences for item in seq}
    while candidates:
        frequent: dict[Items, float] = {}
        for cand in sorted(candidates):
            support = math.fsum(
                w for seq, w in zip(sequences, weights) if is_subsequence(cand, seq)
            )
            if support >= min_sup:
                frequent[cand] = support
        found.extend(Pattern(items, sup) for items, sup in frequent.items())
        candidates = generate_candidates(frequent.keys())
    found.sort(key=lambda p: (-p.support, p.items))
    return found


def _resolve_window(db: list[SequenceRecord], config: MiningConfig) -> MiningConfig:
    if config.mode == "plain" or (config.min_ts is not None and config.max_ts is not None):
        return config
    stamps = [ts for seq in db for ts in seq.item_ts]
    if not stamps:
        raise InvalidInputError(
            f"{config.mode} mining needs item timestamps to derive the window"
        )
    return MiningConfig(
        min_sup=config.min_sup,
        mode=config.mode,
        min_ts=config.min_ts if config.min_ts is not None else min(stamps),
        max_ts=config.max_ts if config.max_ts is not None else max(stamps),
    )


def mine(db: list[SequenceRecord], config: MiningConfig) -> list[Pattern]:
    """Frequent (weighted) subsequences of the database under the given config.

    An empty database yields an empty result. In plain mode supports are
    exact integers; in the weighted modes each sequence contributes its
    :func:`sequence_weight`.
    """
    if not db:
        return []
    config = _resolve_window(db, config)
    weights = [sequence_weight(seq, config) for seq in db]
    return mine_weighted([seq.items for seq in db], weights, config.min_sup)
