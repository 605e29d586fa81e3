"""HTTP surface tying users, corpus, event log, ranking and mining together.

Endpoints (JSON in/out, bearer-token auth where noted):

* ``POST /api/register`` ``{username, password, address?, occupation?,
  qualification?, interests?}`` -> 201 | 400 | 409
* ``POST /api/login`` ``{username, password}`` -> 200 ``{token, expires_at}`` | 401
* ``GET /api/search?q=`` (auth) -> 200 ``{query, results, first_search}``
* ``POST /api/click`` ``{query, doc_id, action, ts?, position?}`` (auth) -> 204
* ``GET /api/history`` (auth) -> the user's per-query visit and dwell table
* ``GET /api/patterns?algo=&min_sup=`` (auth) -> the user's frequent patterns

Every state-changing request appends exactly one line to its append-only
store (registrations to the users file, searches and clicks to the event
log); replaying those files rebuilds an equivalent service, so responses
after a crash-restart are identical to the uninterrupted run.

Dwell is measured server-side from open/close notifications. A client may
supply its own timestamp, accepted only within 5 minutes of the server
clock; otherwise the server time is used and the response carries an
``X-Timestamp-Substituted: true`` header.
"""

from __future__ import annotations

from datetime import timedelta
from pathlib import Path

from fastapi import Depends, FastAPI, HTTPException, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .config import ServiceConfig
from .corpus import CorpusIndex, load_corpus_manifest, normalize_query, tokenize_query
from .errors import (
    AuthenticationError,
    ConflictError,
    InvalidInputError,
    OrphanCloseError,
)
from .events import Clock, EventLog, parse_ts, to_utc_second, utc_now
from .mining import MiningConfig, SequenceRecord, mine
from .ranking import rank
from .textstats import DEFAULT_STOPWORDS, load_stopwords
from .users import UserStore

MAX_CLIENT_SKEW = timedelta(minutes=5)

ALGO_MODES = {
    "gsp": "plain",
    "wtgsp": "time_weighted",
    "wmgsp": "dwell_weighted",
}


class RegisterRequest(BaseModel):
    username: str
    password: str
    address: str | None = None
    occupation: str | None = None
    qualification: str | None = None
    interests: list[str] | None = None


class LoginRequest(BaseModel):
    username: str
    password: str


class ClickRequest(BaseModel):
    query: str
    doc_id: str
    action: str
    ts: str | None = None
    position: int | None = None


def build_corpus_index(config: ServiceConfig, stopwords: frozenset[str]) -> CorpusIndex:
    index = CorpusIndex(stopwords=stopwords, k=config.keyword_k)
    if config.corpus_path.exists():
        index.ingest_all(load_corpus_manifest(config.corpus_path))
    return index


def sessions_to_records(sessions) -> list[SequenceRecord]:
    """Mining input: one record per session, dwell converted to minutes."""
    return [
        SequenceRecord(
            items=tuple(item.doc_id for item in s.items),
            item_ts=tuple(item.open_ts for item in s.items),
            item_dwell_min=tuple(item.dwell_seconds / 60.0 for item in s.items),
        )
        for s in sessions
        if s.items
    ]


def create_app(config: ServiceConfig, clock: Clock = utc_now) -> FastAPI:
    """Assemble the service over the stores in ``config.data_dir``.

    ``clock`` is the single time source for tokens, search events and
    server-side click timestamps; tests inject a deterministic one.
    """
    config.data_dir.mkdir(parents=True, exist_ok=True)
    stopwords = (
        load_stopwords(config.stopword_file)
        if config.stopword_file
        else DEFAULT_STOPWORDS
    )
    corpus = build_corpus_index(config, stopwords)
    users = UserStore(
        config.users_path,
        token_lifetime_minutes=config.token_lifetime_minutes,
        clock=clock,
    )
    log = EventLog(config.events_path, clock=clock)

    app = FastAPI(title="clickrank", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.config = config
    app.state.corpus = corpus
    app.state.users = users
    app.state.log = log

    def current_user(request: Request) -> str:
        header = request.headers.get("Authorization", "")
        scheme, _, token = header.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise HTTPException(status_code=401, detail="missing bearer token")
        try:
            return users.validate_token(token.strip())
        except AuthenticationError:
            raise HTTPException(status_code=401, detail="invalid or expired token")

    @app.post("/api/register", status_code=201)
    def register(body: RegisterRequest):
        try:
            profile = users.register(
                username=body.username,
                password=body.password,
                address=body.address,
                occupation=body.occupation,
                qualification=body.qualification,
                interests=tuple(body.interests or ()),
            )
        except ConflictError:
            raise HTTPException(status_code=409, detail="username already taken")
        except InvalidInputError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return {"username": profile.username}

    @app.post("/api/login")
    def login(body: LoginRequest):
        try:
            session = users.authenticate(body.username, body.password)
        except AuthenticationError:
            raise HTTPException(status_code=401, detail="invalid credentials")
        return {
            "token": session.token,
            "expires_at": session.expires_at.isoformat(),
        }

    @app.get("/api/search")
    def search(q: str = Query(default=""), username: str = Depends(current_user)):
        terms = tokenize_query(q, stopwords)
        if not terms:
            raise HTTPException(status_code=400, detail="query has no searchable terms")
        normalized = " ".join(terms)
        # Evaluate against the log as it stands; the search event recorded
        # below must not influence its own response.
        first_search = not log.searched_before(username, normalized)
        baseline = corpus.match_query(terms)
        events = log.clicks_for(username, normalized)
        ranked = rank(baseline, events) if baseline else []
        log.record_search(username, normalized, ts=clock())
        return {
            "query": normalized,
            "first_search": first_search,
            "results": [
                {
                    "rank": r.rank,
                    "doc_id": r.doc_id,
                    "uri": r.uri,
                    "title": r.title,
                    "baseline_rank": r.baseline_rank,
                    "score": r.score,
                }
                for r in ranked
            ],
        }

    @app.post("/api/click", status_code=204)
    def click(body: ClickRequest, username: str = Depends(current_user)):
        if body.action not in ("open", "close"):
            raise HTTPException(status_code=400, detail="action must be open or close")
        if not corpus.has_document(body.doc_id):
            raise HTTPException(status_code=404, detail="unknown document")
        terms = tokenize_query(body.query, stopwords)
        if not terms:
            raise HTTPException(status_code=400, detail="query has no searchable terms")
        normalized = " ".join(terms)
        server_now = to_utc_second(clock())
        substituted = False
        ts = server_now
        if body.ts is not None:
            try:
                client_ts = parse_ts(body.ts)
            except ValueError:
                raise HTTPException(status_code=400, detail="unparseable timestamp")
            if abs(client_ts - server_now) > MAX_CLIENT_SKEW:
                substituted = True
            else:
                ts = client_ts
        try:
            log.record_click(
                username, normalized, body.doc_id, body.action, ts=ts,
                position=body.position,
            )
        except OrphanCloseError:
            raise HTTPException(status_code=409, detail="close without pending open")
        headers = {"X-Timestamp-Substituted": "true"} if substituted else None
        return Response(status_code=204, headers=headers)

    @app.get("/api/history")
    def history(username: str = Depends(current_user)):
        queries = []
        for query in sorted(log.queries_of(username)):
            clicks = log.clicks_for(username, query)
            by_doc: dict[str, list] = {}
            for event in clicks:
                by_doc.setdefault(event.doc_id, []).append(event)
            queries.append(
                {
                    "query": query,
                    "visit_count": log.search_count(username, query),
                    "links": [
                        {
                            "doc_id": doc_id,
                            "click_count": len(events),
                            "total_dwell_seconds": sum(e.dwell_seconds for e in events),
                        }
                        for doc_id, events in sorted(by_doc.items())
                    ],
                }
            )
        return {"username": username, "queries": queries}

    @app.get("/api/patterns")
    def patterns(
        algo: str = Query(default="gsp"),
        min_sup: float = Query(...),
        username: str = Depends(current_user),
    ):
        if algo not in ALGO_MODES:
            raise HTTPException(status_code=400, detail="algo must be gsp, wtgsp or wmgsp")
        if min_sup <= 0:
            raise HTTPException(status_code=400, detail="min_sup must be positive")
        sessions = log.sessions_of(username, config.session_timeout_minutes)
        records = sessions_to_records(sessions)
        found = (
            mine(records, MiningConfig(min_sup=min_sup, mode=ALGO_MODES[algo]))
            if records
            else []
        )
        return {
            "algo": algo,
            "min_sup": min_sup,
            "patterns": [
                {"items": list(p.items), "support": p.support} for p in found
            ],
        }

    if config.static_dir is not None and Path(config.static_dir).is_dir():
        app.mount(
            "/ui",
            StaticFiles(directory=str(config.static_dir), html=True),
            name="ui",
        )

    return app
