"""Document statistics, readability scoring and keyword extraction.

Counting rules, chosen to be deterministic and cheap:

* words are maximal runs of alphanumeric characters, lowercased
* sentences are maximal runs of ``.``, ``!`` or ``?``
* paragraphs are blocks of consecutive non-blank lines
* printable characters are those with a visible glyph, plus the space
* syllables are vowel-letter runs (``aeiouy``), discounting one trailing
  silent ``e`` (a final all-``e`` vowel run followed only by consonants,
  as in "there", "based" or "bikes") when the word has at least two runs,
  floored at 1
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidInputError

WORD_RE = re.compile(r"[^\W_]+")
SENTENCE_RE = re.compile(r"[.!?]+")
VOWEL_RUN_RE = re.compile(r"[aeiouy]+")
# a final vowel run made only of e's, with nothing but consonants after it
SILENT_E_RE = re.compile(r"(?:^|[^aeiouy])e+[^aeiouy]*$")

# Flesch Reading Ease constants
FLESCH_BASE = 206.835
FLESCH_SENTENCE_WEIGHT = 1.015
FLESCH_SYLLABLE_WEIGHT = 84.6

DEFAULT_KEYWORD_COUNT = 10

# Floor set of stopwords; deployments may extend it via load_stopwords().
DEFAULT_STOPWORDS = frozenset({
    "is", "was", "are", "the", "as", "for", "not",
    "a", "an", "of", "to", "in", "and", "or",
})


@dataclass(frozen=True)
class DocumentStats:
    """Full statistics report for one text."""

    paragraphs: int
    words: int
    sentences: int
    printable_chars: int
    spaces: int
    tabs: int
    carriage_returns: int
    line_feeds: int
    nonprintable_others: int
    words_per_sentence: float
    syllables_per_word: float
    flesch: float
    word_frequencies: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class KeywordEntry:
    """One keyword row: a non-stopword term, its frequency, and the owning document."""

    term: str
    frequency: int
    doc_id: str = ""


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens in document order."""
    return WORD_RE.findall(text.lower())


def count_syllables(word: str) -> int:
    """Approximate syllable count for a single word; never below 1.

    Appending consonants to a word never changes the result: the vowel
    runs are untouched and the silent-e discount only looks at the final
    vowel run.
    """
    w = word.lower()
    runs = len(VOWEL_RUN_RE.findall(w))
    if runs >= 2 and SILENT_E_RE.search(w):
        runs -= 1
    return max(1, runs)


def flesch_index(words: int, sentences: int, syllables: int) -> float:
    """Flesch Reading Ease score for the given counts."""
    if words <= 0 or sentences <= 0 or syllables <= 0:
        raise InvalidInputError(
            "flesch index requires positive word, sentence and syllable counts"
        )
    return (
        FLESCH_BASE
        - FLESCH_SENTENCE_WEIGHT * (words / sentences)
        - FLESCH_SYLLABLE_WEIGHT * (syllables / words)
    )


def _count_paragraphs(text: str) -> int:
    count = 0
    in_block = False
    for line in text.split("\n"):
        if line.strip():
            if not in_block:
                count += 1
            in_block = True
        else:
            in_block = False
    return count


def analyze_text(text: str) -> DocumentStats:
    """Compute the full :class:`DocumentStats` report for ``text``.

    Total over its input: empty text yields all-zero counts, with the
    ratio fields and the Flesch score defined as 0.
    """
    words = tokenize(text)
    n_words = len(words)
    n_sentences = len(SENTENCE_RE.findall(text))
    syllables = sum(count_syllables(w) for w in words)

    spaces = text.count(" ")
    tabs = text.count("\t")
    crs = text.count("\r")
    lfs = text.count("\n")
    printable = sum(1 for ch in text if ch.isprintable())
    others = len(text) - printable - tabs - crs - lfs

    frequencies = tuple(
        sorted(Counter(words).items(), key=lambda tc: (-tc[1], tc[0]))
    )

    return DocumentStats(
        paragraphs=_count_paragraphs(text),
        words=n_words,
        sentences=n_sentences,
        printable_chars=printable,
        spaces=spaces,
        tabs=tabs,
        carriage_returns=crs,
        line_feeds=lfs,
        nonprintable_others=others,
        words_per_sentence=n_words / n_sentences if n_sentences else 0.0,
        syllables_per_word=syllables / n_words if n_words else 0.0,
        flesch=(
            flesch_index(n_words, n_sentences, syllables)
            if n_words and n_sentences
            else 0.0
        ),
        word_frequencies=frequencies,
    )


def extract_keywords(
    text: str,
    stopwords: frozenset[str] | set[str] = DEFAULT_STOPWORDS,
    k: int = DEFAULT_KEYWORD_COUNT,
    doc_id: str = "",
) -> list[KeywordEntry]:
    """Top-``k`` non-stopword terms by frequency (ties broken alphabetically)."""
    if k < 1:
        raise InvalidInputError("keyword count k must be at least 1")
    stats = analyze_text(text)
    picked = [(t, c) for t, c in stats.word_frequencies if t not in stopwords][:k]
    return [KeywordEntry(term=t, frequency=c, doc_id=doc_id) for t, c in picked]


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Stopwords from a file (one term per line), always including the default floor set."""
    terms = set(DEFAULT_STOPWORDS)
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip().lower()
        if term and not term.startswith("#"):
            terms.add(term)
    return frozenset(terms)


def _fmt(value: float) -> str:
    out = f"{value:.4f}".rstrip("0").rstrip(".")
    return out if out else "0"


def render_report(stats: DocumentStats) -> str:
    """The statistics report as printed by the ``stats`` CLI subcommand."""
    lines = [
        f"Number of paragraphs: {stats.paragraphs}",
        f"Number of words: {stats.words}",
        f"Number of sentences: {stats.sentences}",
        f"Number of printable characters (including spaces): {stats.printable_chars}",
        f"Number of spaces: {stats.spaces}",
        f"Number of tabulations: {stats.tabs}",
        f"Number of Carriage Return: {stats.carriage_returns}",
        f"Number of Line Feed: {stats.line_feeds}",
        f"Number of non-printable characters (others than the above): {stats.nonprintable_others}",
        f"Number of words per sentence: {_fmt(stats.words_per_sentence)}",
        f"Number of syllables per word (approximate): {_fmt(stats.syllables_per_word)}",
        f"Flesch index: {_fmt(stats.flesch)}",
        "Start of list:",
    ]
    lines.extend(f"{term}: {count}" for term, count in stats.word_frequencies)
    return "\n".join(lines)
