import pytest
from hypothesis import given
from hypothesis import strategies as st

from finopinion.textprep import (
    CandidateSentence, EmptyDocument, RawFiling, clean_lines, count_words, extract_filing, filter_candidates,
    load_filing, load_lexicon, segment_sentences, strip_markup, tokenize,
)

FILING = """<html><head><title>Form 10-K</title><style>p {color: red}</style></head><body>
<p>UNITED STATES SECURITIES AND EXCHANGE COMMISSION</p>
<p>Annual report pursuant to section 13.</p>
<p>Item 1. Business</p>
<p>We believe our products are strong.</p>
<table><tr><td>Revenue</td><td>1,234</td></tr></table>
<script>var x = "we believe";</script>
<p>Item 7. Management's Discussion</p>
<div>Sales may decline <b>substantially</b> next year.</div>
<p>SIGNATURES</p>
<p>The registrant believes this report is complete.</p>
<p>Exhibit 31.1</p>
</body></html>"""


class TestStripMarkup:
    def test_tag_removal(self):
        assert strip_markup("<p>We believe</p>") == "We believe"

    def test_tables_dropped(self):
        assert strip_markup("<table><tr><td>42</td></tr></table>Revenue rose.") == "Revenue rose."

    def test_item_sections_survive(self):
        assert strip_markup(FILING).splitlines() == [
            "Item 1. Business",
            "We believe our products are strong.",
            "Item 7. Management's Discussion",
            "Sales may decline substantially next year.",
        ]

    def test_empty_body(self):
        with pytest.raises(EmptyDocument):
            strip_markup("<table><tr><td>only a table</td></tr></table>")

    def test_unclosed_tags_tolerated(self):
        assert strip_markup("<p>Margins <b>improved<p>Costs fell") == "Margins improved\nCosts fell"

    def test_entities_decoded(self):
        assert strip_markup("<p>Smith &amp; Sons&nbsp;Inc</p>") == "Smith & Sons Inc"

    @given(st.lists(st.text(alphabet="abc XYZ.,;:!?'-0123456789", min_size=1), min_size=1, max_size=5))
    def test_idempotent_on_plain_text(self, lines):
        text = "\n".join(lines)
        try:
            once = strip_markup(text)
        except EmptyDocument:
            return
        assert strip_markup(once) == once


class TestCleanLines:
    def test_symbol_dominated_dropped(self):
        assert clean_lines("....... 1,234  5,678 .......") == []

    def test_prose_kept(self):
        line = "The Company believes the outlook is stable."
        assert clean_lines(line) == [line]

    def test_half_symbols_kept_at_threshold(self):
        line = "abcd1234"  # exactly 50% non-alphabetic
        assert clean_lines(line) == [line]
        assert clean_lines("abc1234") == []

    def test_min_alpha(self):
        assert clean_lines("ab") == []
        assert clean_lines("abc") == ["abc"]

    def test_thresholds_configurable(self):
        assert clean_lines("ab12", max_nonalpha_ratio=0.6, min_alpha=2) == ["ab12"]


class TestSegmentation:
    def test_two_sentences(self):
        assert segment_sentences("We grew. We will grow.") == ["We grew.", "We will grow."]

    def test_decimal_point(self):
        assert segment_sentences("Net income was $1.2 million. It rose.") == [
            "Net income was $1.2 million.", "It rose."]

    def test_abbreviation(self):
        assert segment_sentences("Inc. reported gains.") == ["Inc. reported gains."]

    def test_initial(self):
        assert segment_sentences("J. Smith resigned. He left.") == ["J. Smith resigned.", "He left."]

    def test_question_and_quote(self):
        assert segment_sentences('Will it last?" he asked. Yes!') == ['Will it last?"', "he asked.", "Yes!"]

    def test_line_breaks_split(self):
        assert segment_sentences("Item 7\nSales rose") == ["Item 7", "Sales rose"]

    @given(st.text(alphabet="ab .!?\n", max_size=60))
    def test_spans_partition_input(self, text):
        pieces = segment_sentences(text)
        assert "".join(pieces).replace(" ", "") == "".join(text.split())


class TestTokens:
    def test_tokenize_keeps_numbers_and_contractions(self):
        assert tokenize("U.S. sales of $1.2 don't fall, Smith & Co.") == [
            "U.S", ".", "sales", "of", "$", "1.2", "don't", "fall", ",", "Smith", "&", "Co", "."]

    def test_count_words_ignores_punctuation(self):
        assert count_words("We believe, strongly, in growth.") == 5


LEX = {"believe", "decline"}


class TestFilter:
    def test_kept(self):
        out = filter_candidates(["We believe margins will improve over the coming years."], LEX)
        assert [c.text for c in out] == ["We believe margins will improve over the coming years."]
        assert out[0].token_count == 9

    def test_short_sentence_dropped(self):
        assert filter_candidates(["We believe margins will improve next year."], LEX) == []

    def test_no_lexicon_hit_dropped(self):
        assert filter_candidates(["Revenue rose by ten percent in the third quarter."], LEX) == []

    def test_max_tokens(self):
        long = "We believe " + "very " * 120 + "much."
        assert filter_candidates([long], LEX) == []
        assert len(filter_candidates([long], LEX, max_tokens=200)) == 1

    def test_case_insensitive_and_lemma_aware(self):
        s = "Sales DECLINED sharply across all of our regional markets."
        assert filter_candidates([s], LEX) == []
        assert len(filter_candidates([s], LEX, lemma_map={"declined": "decline"})) == 1

    def test_empty_lexicon(self):
        with pytest.raises(ValueError):
            filter_candidates(["anything"], set())

    @given(st.lists(st.sampled_from([
        "We believe it.", "We believe margins will improve over the coming years.",
        "Costs rose by ten percent in the third quarter of the year.",
        "Demand may decline in the next fiscal year across our markets.",
    ]), max_size=6))
    def test_output_is_subset_satisfying_predicates(self, sentences):
        out = filter_candidates(sentences, LEX, source=("C1", 2005))
        for c in out:
            assert sentences[c.source[2]] == c.text
            assert 8 <= c.token_count <= 100
            assert {t.lower() for t in tokenize(c.text)} & LEX


class TestFilings:
    def test_load_and_extract(self, tmp_path):
        path = tmp_path / "C9_2006.html"
        path.write_text(FILING)
        filing = load_filing(path)
        assert (filing.company_id, filing.fiscal_year, filing.doc_id) == ("C9", 2006, "C9_2006")
        sentences, candidates = extract_filing(filing, {"believe", "decline"}, min_tokens=5)
        assert "Sales may decline substantially next year." in sentences
        assert [c.text for c in candidates] == [
            "We believe our products are strong.", "Sales may decline substantially next year."]
        assert candidates[0].source[:2] == ("C9", 2006)

    def test_year_range(self, tmp_path):
        path = tmp_path / "C9_2020.html"
        path.write_text(FILING)
        with pytest.raises(ValueError):
            load_filing(path, (2000, 2010))

    def test_bad_name(self, tmp_path):
        path = tmp_path / "report.html"
        path.write_text(FILING)
        with pytest.raises(ValueError):
            load_filing(path)

    def test_empty_body(self):
        with pytest.raises(EmptyDocument):
            RawFiling("C1", 2005, "  \n")

    def test_candidate_line_round_trip(self):
        c = CandidateSentence("We believe it will grow strongly this year.", 8, ("C1", 2005, 3))
        assert CandidateSentence.from_line(c.to_line()) == c

    def test_lexicon_union(self, tmp_path):
        a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
        a.write_text("# comment\nBelieve\tweak\n")
        b.write_text("decline\tnegative\n\n")
        assert load_lexicon(a, b) == {"believe", "decline"}
