"""Operations command line: serve, ingest, stats, mine, replay."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import load_config
from .corpus import CorpusIndex, load_corpus, save_corpus_manifest
from .errors import ClickrankError
from .events import DEFAULT_SESSION_TIMEOUT_MINUTES, EventLog
from .mining import MiningConfig, mine
from .service import ALGO_MODES, create_app, sessions_to_records
from .textstats import DEFAULT_STOPWORDS, analyze_text, load_stopwords, render_report


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clickrank",
        description="Personalized search service ranked by click and dwell utilization",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--config", type=Path, default=None, help="key=value config file")

    p_ingest = sub.add_parser("ingest", help="index a corpus directory or JSON manifest")
    p_ingest.add_argument("source", type=Path, help="directory of .txt files or manifest.json")
    p_ingest.add_argument("--data-dir", type=Path, default=Path("data"))
    p_ingest.add_argument("--k", type=int, default=10, help="keywords stored per document")
    p_ingest.add_argument("--stopwords", type=Path, default=None)

    p_stats = sub.add_parser("stats", help="print the statistics report for a text file")
    p_stats.add_argument("file", type=Path)

    p_mine = sub.add_parser("mine", help="mine frequent click patterns from the event log")
    p_mine.add_argument("--algo", choices=sorted(ALGO_MODES), required=True)
    p_mine.add_argument("--min-sup", type=float, required=True)
    p_mine.add_argument("--user", default=None, help="mine one user (default: all users)")
    p_mine.add_argument("--data-dir", type=Path, default=Path("data"))
    p_mine.add_argument(
        "--session-timeout", type=float, default=DEFAULT_SESSION_TIMEOUT_MINUTES,
        help="session gap in minutes",
    )

    p_replay = sub.add_parser("replay", help="rebuild state from an event log and summarize it")
    p_replay.add_argument("log", type=Path)

    return parser


def _cmd_serve(args) -> int:
    import uvicorn

    config = load_config(args.config)
    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    return 0


def _cmd_ingest(args) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else DEFAULT_STOPWORDS
    docs = load_corpus(args.source)
    index = CorpusIndex(stopwords=stopwords, k=args.k)
    rows = index.ingest_all(docs)
    args.data_dir.mkdir(parents=True, exist_ok=True)
    manifest = args.data_dir / "corpus.json"
    save_corpus_manifest(docs, manifest)
    print(f"ingested {len(docs)} documents ({rows} keyword rows) -> {manifest}")
    return 0


def _cmd_stats(args) -> int:
    text = args.file.read_text(encoding="utf-8")
    print(render_report(analyze_text(text)))
    return 0


def _cmd_mine(args) -> int:
    log_path = args.data_dir / "events.jsonl"
    if not log_path.exists():
        print(f"no event log at {log_path}", file=sys.stderr)
        return 1
    log = EventLog(log_path)
    usernames = [args.user] if args.user else sorted(log.usernames())
    sessions = [s for u in usernames for s in log.sessions_of(u, args.session_timeout)]
    records = sessions_to_records(sessions)
    config = MiningConfig(min_sup=args.min_sup, mode=ALGO_MODES[args.algo])
    for pattern in mine(records, config) if records else []:
        print(f"⟨{','.join(pattern.items)}⟩\t{pattern.support:g}")
    return 0


def _cmd_replay(args) -> int:
    log = EventLog.replay(args.log.read_text(encoding="utf-8").splitlines())
    users = log.usernames()
    print(f"replayed {len(log.records)} events")
    print(f"users: {len(users)}")
    print(f"searches: {len(log.searches)}")
    print(f"completed clicks: {len(log.completed_clicks())}")
    print(f"pending opens: {len(log.pending_clicks())}")
    return 0


_COMMANDS = {
    "serve": _cmd_serve,
    "ingest": _cmd_ingest,
    "stats": _cmd_stats,
    "mine": _cmd_mine,
    "replay": _cmd_replay,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ClickrankError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
