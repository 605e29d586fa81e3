"""Walk through the personalization loop end to end, in process.

A fresh user searches "card" and gets the history-free baseline order.
They open the third result, stay five and a half minutes, leave, and
search "card" again: the utilized link now sits at position one while
every other link is still listed, in its old relative order.

Run:  python demos/two_session_search.py
"""

from datetime import datetime, timedelta, timezone
from pathlib import Path

from clickrank.corpus import CorpusIndex, load_corpus_dir, tokenize_query
from clickrank.events import EventLog
from clickrank.ranking import rank
from clickrank.users import UserStore

HERE = Path(__file__).parent
now = datetime(2026, 8, 10, 12, 0, 0, tzinfo=timezone.utc)

# --- set the stage: corpus, accounts, empty history --------------------
index = CorpusIndex()
index.ingest_all(load_corpus_dir(HERE / "corpus"))

users = UserStore()
users.register("alice", "correct-horse", occupation="student")
session = users.authenticate("alice", "correct-horse")
print(f"alice logged in, token expires {session.expires_at:%H:%M}")

log = EventLog()


def search(query):
    terms = tokenize_query(query)
    normalized = " ".join(terms)
    first = not log.searched_before("alice", normalized)
    results = rank(index.match_query(terms), log.clicks_for("alice", normalized))
    log.record_search("alice", normalized, now)
    tag = "first search, baseline order" if first else "re-ranked by utilization"
    print(f"\nsearch {query!r} ({tag})")
    for r in results:
        print(f"  {r.rank}. {r.title:<24} score={r.score:.2f} (baseline #{r.baseline_rank})")
    return results


# --- session one: baseline listing, then one long visit ----------------
results = search("card")
picked = results[2]
print(f"\nalice opens #{picked.rank}: {picked.title}")
log.record_click("alice", "card", picked.doc_id, "open", now)
now += timedelta(seconds=330)
log.record_click("alice", "card", picked.doc_id, "close", now)
print("...5 minutes 30 seconds later she comes back")

# --- session two: same query, new order ---------------------------------
results = search("card")
assert results[0].doc_id == picked.doc_id
print(f"\nthe visited link now leads the list; nothing was dropped "
      f"({len(results)} results both times)")
