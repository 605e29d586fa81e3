"""Append-only log of searches, clicks and dwell intervals.

Wire format is JSON lines, one event per line::

    {"type": "search", "user": ..., "query": ..., "ts": "<RFC3339>"}
    {"type": "click_open", "user": ..., "query": ..., "doc": ..., "ts": ..., "pos"?: ...}
    {"type": "click_close", "user": ..., "query": ..., "doc": ..., "ts": ...}

The line sequence is the source of truth: in-memory state is a fold over
it, and :meth:`EventLog.replay` rebuilds an identical store from the same
lines. Timestamps are stored at second precision; dwell weighting converts
to minutes only inside the ranking and mining formulas.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timedelta, timezone
from pathlib import Path
from typing import Callable, Iterable, NamedTuple

from .errors import InvalidInputError, LogParseError, OrphanCloseError

logger = logging.getLogger(__name__)

DEFAULT_SESSION_TIMEOUT_MINUTES = 30.0

Clock = Callable[[], datetime]


def utc_now() -> datetime:
    return datetime.now(timezone.utc)


def to_utc_second(ts: datetime) -> datetime:
    """Normalize to tz-aware UTC at second precision; naive input is taken as UTC."""
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=timezone.utc)
    return ts.astimezone(timezone.utc).replace(microsecond=0)


def format_ts(ts: datetime) -> str:
    return to_utc_second(ts).isoformat().replace("+00:00", "Z")


def parse_ts(raw: str) -> datetime:
    return to_utc_second(datetime.fromisoformat(raw.replace("Z", "+00:00")))


@dataclass(frozen=True)
class SearchEvent:
    username: str
    query: str
    ts: datetime


@dataclass(frozen=True)
class ClickEvent:
    """One open/close pairing; close_ts is None while the open is pending."""

    username: str
    query: str
    doc_id: str
    open_ts: datetime
    close_ts: datetime | None = None
    position: int | None = None

    @property
    def completed(self) -> bool:
        return self.close_ts is not None

    @property
    def dwell_seconds(self) -> float:
        if self.close_ts is None:
            return 0.0
        return (self.close_ts - self.open_ts).total_seconds()


class SessionItem(NamedTuple):
    doc_id: str
    open_ts: datetime
    dwell_seconds: float


@dataclass(frozen=True)
class ClickSequence:
    """One session: a user's consecutive clicks with no gap above the timeout."""

    username: str
    session_id: int
    items: tuple[SessionItem, ...]


class EventLog:
    """Append-only store of search and click events for all users.

    Appends are serialized behind one lock (single-writer contract); reads
    work on plain lists and are safe alongside appends in CPython.
    """

    def __init__(self, path: str | Path | None = None, clock: Clock = utc_now):
        self._path = Path(path) if path is not None else None
        self._clock = clock
        self._lock = threading.Lock()
        self._records: list[dict] = []
        self._searches: list[SearchEvent] = []
        self._completed: list[ClickEvent] = []
        # LIFO stacks of pending opens keyed by (user, query, doc)
        self._pending: dict[tuple[str, str, str], list[ClickEvent]] = {}
        if self._path is not None and self._path.exists():
            self._load_file(self._path)

    # ------------------------------------------------------------------
    # appends
    # ------------------------------------------------------------------

    def record_search(self, username: str, query: str, ts: datetime | None = None) -> SearchEvent:
        ts = to_utc_second(ts if ts is not None else self._clock())
        record = {"type": "search", "user": username, "query": query, "ts": format_ts(ts)}
        with self._lock:
            event = self._apply_search(record)
            self._persist(record)
        return event

    def record_click(
        self,
        username: str,
        query: str,
        doc_id: str,
        action: str,
        ts: datetime | None = None,
        position: int | None = None,
    ) -> ClickEvent:
        """Apply an open or close notification and return the event state.

        An open returns the pending event; a close completes the most
        recent pending open for the same (user, query, doc) and returns
        the completed event. A close with nothing pending raises
        :class:`OrphanCloseError`.
        """
        if action not in ("open", "close"):
            raise InvalidInputError(f"unknown click action {action!r}")
        ts = to_utc_second(ts if ts is not None else self._clock())
        record = {
            "type": f"click_{action}",
            "user": username,
            "query": query,
            "doc": doc_id,
            "ts": format_ts(ts),
        }
        if action == "open" and position is not None:
            record["pos"] = position
        with self._lock:
            event = self._apply_click(record)
            self._persist(record)
        return event

    def _persist(self, record: dict) -> None:
        self._records.append(record)
        if self._path is not None:
            self._path.parent.mkdir(parents=True, exist_ok=True)
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record) + "\n")

    # ------------------------------------------------------------------
    # fold: one wire record -> state change
    # ------------------------------------------------------------------

    def _apply_search(self, record: dict) -> SearchEvent:
        event = SearchEvent(
            username=record["user"], query=record["query"], ts=parse_ts(record["ts"])
        )
        self._searches.append(event)
        return event

    def _apply_click(self, record: dict) -> ClickEvent:
        key = (record["user"], record["query"], record["doc"])
        ts = parse_ts(record["ts"])
        if record["type"] == "click_open":
            event = ClickEvent(
                username=key[0],
                query=key[1],
                doc_id=key[2],
                open_ts=ts,
                position=record.get("pos"),
            )
            self._pending.setdefault(key, []).append(event)
            return event
        stack = self._pending.get(key)
        if not stack:
            raise OrphanCloseError(f"close without a pending open for {key}")
        pending = stack.pop()
        if not stack:
            del self._pending[key]
        if ts < pending.open_ts:
            logger.warning(
                "close for %s at %s precedes its open at %s; dwell clamped to 0",
                key, format_ts(ts), format_ts(pending.open_ts),
            )
            ts = pending.open_ts
        completed = replace(pending, close_ts=ts)
        self._completed.append(completed)
        return completed

    # ------------------------------------------------------------------
    # replay
    # ------------------------------------------------------------------

    def _apply_line(self, line_no: int, line: str) -> None:
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogParseError(line_no, f"invalid JSON: {exc}") from exc
        try:
            kind = record["type"]
            if kind == "search":
                self._apply_search(record)
            elif kind in ("click_open", "click_close"):
                self._apply_click(record)
            else:
                raise InvalidInputError(f"unknown event type {kind!r}")
        except LogParseError:
            raise
        except (KeyError, TypeError, ValueError, OrphanCloseError) as exc:
            raise LogParseError(line_no, str(exc) or type(exc).__name__) from exc
        self._records.append(record)

    def _load_file(self, path: Path) -> None:
        for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if line.strip():
                self._apply_line(line_no, line)

    @classmethod
    def replay(cls, lines: Iterable[str], clock: Clock = utc_now) -> "EventLog":
        """Fold a stream of wire lines into a fresh store.

        A malformed line aborts the replay with an error naming its
        1-based line number.
        """
        log = cls(clock=clock)
        for line_no, line in enumerate(lines, 1):
            if line.strip():
                log._apply_line(line_no, line)
        return log

    def emit(self) -> list[str]:
        """The wire lines that reproduce this store when replayed, in order."""
        return [json.dumps(record) for record in self._records]

    # ------------------------------------------------------------------
    # views
    # ------------------------------------------------------------------

    @property
    def records(self) -> tuple[dict, ...]:
        return tuple(self._records)

    @property
    def searches(self) -> tuple[SearchEvent, ...]:
        return tuple(self._searches)

    def completed_clicks(self, username: str | None = None) -> tuple[ClickEvent, ...]:
        return tuple(
            e for e in self._completed if username is None or e.username == username
        )

    def pending_clicks(self, username: str | None = None) -> tuple[ClickEvent, ...]:
        out = []
        for stack in self._pending.values():
            out.extend(e for e in stack if username is None or e.username == username)
        out.sort(key=lambda e: e.open_ts)
        return tuple(out)

    def search_count(self, username: str, query: str) -> int:
        return sum(1 for e in self._searches if e.username == username and e.query == query)

    def searched_before(self, username: str, query: str) -> bool:
        return self.search_count(username, query) > 0

    def queries_of(self, username: str) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for e in self._searches:
            if e.username == username:
                seen.setdefault(e.query, None)
        for e in self._completed + [p for s in self._pending.values() for p in s]:
            if e.username == username:
                seen.setdefault(e.query, None)
        return tuple(seen)

    def clicks_for(
        self, username: str, query: str, include_pending: bool = True
    ) -> tuple[ClickEvent, ...]:
        """The user's click events under one exact query string.

        Pending opens are included by default because an unclosed click
        still counts as one visit (with zero dwell) for scoring.
        """
        events = [
            e for e in self._completed if e.username == username and e.query == query
        ]
        if include_pending:
            for stack in self._pending.values():
                events.extend(
                    e for e in stack if e.username == username and e.query == query
                )
        events.sort(key=lambda e: e.open_ts)
        return tuple(events)

    def sessions_of(
        self,
        username: str,
        timeout_minutes: float = DEFAULT_SESSION_TIMEOUT_MINUTES,
    ) -> list[ClickSequence]:
        """Completed clicks split into sessions at inactivity gaps.

        Clicks are ordered by open time and a new session starts wherever
        the gap between consecutive opens exceeds the timeout. Every
        completed click lands in exactly one session.
        """
        if timeout_minutes <= 0:
            raise InvalidInputError("session timeout must be positive")
        clicks = sorted(
            (e for e in self._completed if e.username == username),
            key=lambda e: e.open_ts,
        )
        timeout = timedelta(minutes=timeout_minutes)
        sessions: list[ClickSequence] = []
        current: list[SessionItem] = []
        last_open: datetime | None = None
        for event in clicks:
            if last_open is not None and event.open_ts - last_open > timeout:
                sessions.append(
                    ClickSequence(username, len(sessions), tuple(current))
                )
                current = []
            current.append(SessionItem(event.doc_id, event.open_ts, event.dwell_seconds))
            last_open = event.open_ts
        if current:
            sessions.append(ClickSequence(username, len(sessions), tuple(current)))
        return sessions

    def usernames(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for e in self._searches:
            seen.setdefault(e.username, None)
        for e in self._completed:
            seen.setdefault(e.username, None)
        for stack in self._pending.values():
            for e in stack:
                seen.setdefault(e.username, None)
        return tuple(seen)
