import pytest
from hypothesis import given, strategies as st

from clickrank.errors import InvalidInputError
from clickrank.textstats import (
    DEFAULT_STOPWORDS,
    analyze_text,
    count_syllables,
    extract_keywords,
    flesch_index,
    load_stopwords,
    render_report,
)

FIXTURE = "Hi there.\n\nBye."


class TestAnalyzeText:
    def test_fixture_counts(self):
        stats = analyze_text(FIXTURE)
        assert stats.paragraphs == 2
        assert stats.words == 3
        assert stats.sentences == 2
        assert stats.printable_chars == 13
        assert stats.spaces == 1
        assert stats.tabs == 0
        assert stats.carriage_returns == 0
        assert stats.line_feeds == 2
        assert stats.nonprintable_others == 0
        assert stats.words_per_sentence == pytest.approx(1.5, abs=1e-4)
        assert stats.syllables_per_word == pytest.approx(1.0, abs=1e-4)
        assert stats.flesch == pytest.approx(120.7125, abs=1e-4)

    def test_empty_text(self):
        stats = analyze_text("")
        assert stats.paragraphs == 0
        assert stats.words == 0
        assert stats.sentences == 0
        assert stats.printable_chars == 0
        assert stats.words_per_sentence == 0.0
        assert stats.syllables_per_word == 0.0
        assert stats.flesch == 0.0
        assert stats.word_frequencies == ()

    def test_repeated_token(self):
        stats = analyze_text("a a a.")
        assert stats.word_frequencies == (("a", 3),)
        assert stats.words == 3
        assert stats.sentences == 1

    def test_frequencies_sum_to_word_count(self):
        stats = analyze_text("one two two three three three.")
        assert sum(c for _, c in stats.word_frequencies) == stats.words

    def test_frequency_ordering(self):
        stats = analyze_text("b a b a c")
        assert stats.word_frequencies == (("a", 2), ("b", 2), ("c", 1))

    def test_tabs_and_carriage_returns(self):
        stats = analyze_text("a\tb\r\nc")
        assert stats.tabs == 1
        assert stats.carriage_returns == 1
        assert stats.line_feeds == 1

    @given(st.text(max_size=300))
    def test_character_partition(self, text):
        stats = analyze_text(text)
        total = (
            stats.printable_chars
            + stats.tabs
            + stats.carriage_returns
            + stats.line_feeds
            + stats.nonprintable_others
        )
        assert total == len(text)

    @given(st.text(max_size=300))
    def test_deterministic(self, text):
        assert analyze_text(text) == analyze_text(text)


class TestCountSyllables:
    @pytest.mark.parametrize(
        "word,expected",
        [("cat", 1), ("hello", 2), ("there", 1), ("rhythm", 1), ("bye", 1)],
    )
    def test_examples(self, word, expected):
        assert count_syllables(word) == expected

    @given(st.from_regex(r"[a-z]{1,12}", fullmatch=True))
    def test_at_least_one(self, word):
        assert count_syllables(word) >= 1

    @given(
        st.from_regex(r"[a-z]{1,12}", fullmatch=True),
        st.from_regex(r"[bcdfghjklmnpqrstvwxz]{1,4}", fullmatch=True),
    )
    def test_consonant_suffix_never_increases(self, word, suffix):
        assert count_syllables(word + suffix) <= count_syllables(word)


class TestFleschIndex:
    def test_example_values(self):
        assert flesch_index(6, 2, 6) == pytest.approx(119.19, abs=1e-4)
        assert flesch_index(1, 1, 1) == pytest.approx(121.22, abs=1e-4)

    def test_zero_counts_rejected(self):
        with pytest.raises(InvalidInputError):
            flesch_index(0, 1, 0)
        with pytest.raises(InvalidInputError):
            flesch_index(6, 0, 6)

    @given(st.integers(1, 500), st.integers(1, 50), st.integers(1, 1000))
    def test_decreasing_in_syllables(self, words, sentences, syllables):
        assert flesch_index(words, sentences, syllables + 1) < flesch_index(
            words, sentences, syllables
        )

    @given(st.integers(1, 500), st.integers(1, 49), st.integers(1, 1000))
    def test_decreasing_in_words_per_sentence(self, words, sentences, syllables):
        # fewer sentences for the same words -> higher words/sentence -> lower score
        assert flesch_index(words, sentences, syllables) < flesch_index(
            words, sentences + 1, syllables
        )


class TestExtractKeywords:
    def test_example(self):
        entries = extract_keywords("the cat sat the cat ran", frozenset({"the"}), 10)
        assert [(e.term, e.frequency) for e in entries] == [
            ("cat", 2), ("ran", 1), ("sat", 1),
        ]

    def test_cap_at_k(self):
        text = " ".join(f"word{i}" for i in range(12))
        assert len(extract_keywords(text, DEFAULT_STOPWORDS, 10)) == 10

    def test_all_stopwords_is_empty(self):
        assert extract_keywords("is as for not", DEFAULT_STOPWORDS, 10) == []

    def test_k_must_be_positive(self):
        with pytest.raises(InvalidInputError):
            extract_keywords("anything", DEFAULT_STOPWORDS, 0)

    def test_doc_id_attached(self):
        entries = extract_keywords("cat", DEFAULT_STOPWORDS, 10, doc_id="d1")
        assert entries[0].doc_id == "d1"

    @given(st.text(max_size=200), st.integers(1, 10))
    def test_bounded_and_stopword_free(self, text, k):
        entries = extract_keywords(text, DEFAULT_STOPWORDS, k)
        assert len(entries) <= k
        assert all(e.term not in DEFAULT_STOPWORDS for e in entries)
        assert all(e.frequency >= 1 for e in entries)


class TestStopwords:
    def test_default_floor(self):
        floor = {"is", "was", "are", "the", "as", "for", "not",
                 "a", "an", "of", "to", "in", "and", "or"}
        assert floor <= set(DEFAULT_STOPWORDS)

    def test_load_extends_but_keeps_floor(self, tmp_path):
        f = tmp_path / "stop.txt"
        f.write_text("# comment\nCard\n\natm\n")
        loaded = load_stopwords(f)
        assert {"card", "atm"} <= loaded
        assert DEFAULT_STOPWORDS <= loaded


class TestRenderReport:
    def test_field_order_and_list(self):
        report = render_report(analyze_text(FIXTURE)).splitlines()
        labels = [
            "Number of paragraphs: 2",
            "Number of words: 3",
            "Number of sentences: 2",
            "Number of printable characters (including spaces): 13",
            "Number of spaces: 1",
            "Number of tabulations: 0",
            "Number of Carriage Return: 0",
            "Number of Line Feed: 2",
            "Number of non-printable characters (others than the above): 0",
            "Number of words per sentence: 1.5",
            "Number of syllables per word (approximate): 1",
            "Flesch index: 120.7125",
            "Start of list:",
            "bye: 1",
            "hi: 1",
            "there: 1",
        ]
        assert report == labels
