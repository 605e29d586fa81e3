"""Document corpus, its keyword table, and history-free baseline search.

Each ingested document contributes at most ``k`` keyword rows (its most
frequent non-stopword terms), and only those rows are matchable: a term
appearing in a body but outside the document's top ``k`` does not match.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConflictError, InvalidInputError
from .textstats import (
    DEFAULT_KEYWORD_COUNT,
    DEFAULT_STOPWORDS,
    KeywordEntry,
    extract_keywords,
    tokenize,
)


@dataclass(frozen=True)
class Document:
    doc_id: str
    uri: str
    title: str
    body: str


@dataclass(frozen=True)
class BaselineResult:
    """One history-free search hit; score is the sum of matched keyword frequencies."""

    doc_id: str
    uri: str
    title: str
    match_score: int
    baseline_rank: int


def tokenize_query(query: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> list[str]:
    """Lowercased query terms with stopwords removed; order and duplicates kept."""
    return [t for t in tokenize(query) if t not in stopwords]


def normalize_query(query: str, stopwords: frozenset[str] = DEFAULT_STOPWORDS) -> str:
    """Canonical form under which per-user search history is keyed."""
    return " ".join(tokenize_query(query, stopwords))


class CorpusIndex:
    """Keyword table over ingested documents.

    Reads are safe from any thread once built; ingestion is expected to be
    serialized by the caller (single-writer contract).
    """

    def __init__(
        self,
        stopwords: frozenset[str] = DEFAULT_STOPWORDS,
        k: int = DEFAULT_KEYWORD_COUNT,
    ):
        if k < 1:
            raise InvalidInputError("keyword count k must be at least 1")
        self._stopwords = stopwords
        self._k = k
        self._docs: dict[str, Document] = {}
        # term -> doc_id -> stored frequency
        self._postings: dict[str, dict[str, int]] = {}

    @property
    def stopwords(self) -> frozenset[str]:
        return self._stopwords

    @property
    def documents(self) -> tuple[Document, ...]:
        return tuple(self._docs.values())

    @property
    def keyword_rows(self) -> tuple[KeywordEntry, ...]:
        """Every stored (term, frequency, doc_id) row."""
        return tuple(
            KeywordEntry(term=term, frequency=freq, doc_id=doc_id)
            for term, by_doc in sorted(self._postings.items())
            for doc_id, freq in sorted(by_doc.items())
        )

    def has_document(self, doc_id: str) -> bool:
        return doc_id in self._docs

    def ingest_document(self, doc: Document) -> list[KeywordEntry]:
        """Store the document's top-k keyword rows; returns the rows added.

        A document whose body holds no non-stopword token is still recorded
        as ingested, with zero rows.
        """
        if doc.doc_id in self._docs:
            raise ConflictError(f"document {doc.doc_id!r} already ingested")
        if not doc.uri:
            raise InvalidInputError(f"document {doc.doc_id!r} has an empty uri")
        entries = extract_keywords(doc.body, self._stopwords, self._k, doc_id=doc.doc_id)
        self._docs[doc.doc_id] = doc
        for entry in entries:
            self._postings.setdefault(entry.term, {})[doc.doc_id] = entry.frequency
        return entries

    def ingest_all(self, docs: list[Document]) -> int:
        """Ingest every document; returns the number of keyword rows added."""
        return sum(len(self.ingest_document(doc)) for doc in docs)

    def match_query(self, terms: list[str]) -> list[BaselineResult]:
        """Every document matching at least one term, ordered by score then doc_id.

        A term repeated in the query contributes its stored frequency once
        per occurrence.
        """
        if not terms:
            raise InvalidInputError("query contains no searchable terms")
        scores: dict[str, int] = {}
        for term in terms:
            for doc_id, freq in self._postings.get(term, {}).items():
                scores[doc_id] = scores.get(doc_id, 0) + freq
        ordered = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
        return [
            BaselineResult(
                doc_id=doc_id,
                uri=self._docs[doc_id].uri,
                title=self._docs[doc_id].title,
                match_score=score,
                baseline_rank=position,
            )
            for position, (doc_id, score) in enumerate(ordered, start=1)
        ]


def load_corpus_dir(path: str | Path) -> list[Document]:
    """Documents from a directory of UTF-8 ``.txt`` files.

    Filename stem is the doc_id, first line the title, the remainder the
    body; the file's own URI is used as the link.
    """
    root = Path(path)
    docs = []
    for file in sorted(root.glob("*.txt")):
        text = file.read_text(encoding="utf-8")
        first, _, rest = text.partition("\n")
        docs.append(
            Document(
                doc_id=file.stem,
                uri=file.resolve().as_uri(),
                title=first.strip(),
                body=rest,
            )
        )
    return docs


def load_corpus_manifest(path: str | Path) -> list[Document]:
    """Documents from a JSON manifest: a list of {doc_id, uri, title, body}."""
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(raw, list):
        raise InvalidInputError("corpus manifest must be a JSON list")
    docs = []
    for i, item in enumerate(raw):
        try:
            docs.append(
                Document(
                    doc_id=str(item["doc_id"]),
                    uri=str(item["uri"]),
                    title=str(item.get("title", "")),
                    body=str(item.get("body", "")),
                )
            )
        except (TypeError, KeyError) as exc:
            raise InvalidInputError(f"manifest entry {i} is malformed: {exc}") from exc
    return docs


def load_corpus(path: str | Path) -> list[Document]:
    """Load documents from a directory of .txt files or a JSON manifest file."""
    p = Path(path)
    if p.is_dir():
        return load_corpus_dir(p)
    return load_corpus_manifest(p)


def save_corpus_manifest(docs: list[Document], path: str | Path) -> None:
    payload = [
        {"doc_id": d.doc_id, "uri": d.uri, "title": d.title, "body": d.body}
        for d in docs
    ]
    Path(path).write_text(json.dumps(payload, indent=2), encoding="utf-8")
