"""HTML filing -> cleaned candidate sentences.

The pipeline is ``strip_markup -> clean_lines -> segment_sentences ->
filter_candidates``; :func:`extract_filing` runs all four.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable, Mapping


class EmptyDocument(ValueError):
    pass


@dataclass(frozen=True)
class RawFiling:
    company_id: str
    fiscal_year: int
    body: str

    def __post_init__(self):
        if not self.body.strip():
            raise EmptyDocument(f"{self.company_id}_{self.fiscal_year}: empty body")

    @property
    def doc_id(self) -> str:
        return f"{self.company_id}_{self.fiscal_year}"


@dataclass(frozen=True)
class CandidateSentence:
    text: str
    token_count: int
    source: tuple[str, int, int]

    def to_line(self) -> str:
        company_id, year, idx = self.source
        return f"{company_id}\t{year}\t{idx}\t{self.text}"

    @classmethod
    def from_line(cls, line: str) -> "CandidateSentence":
        company_id, year, idx, text = line.rstrip("\n").split("\t", 3)
        return cls(text, count_words(text), (company_id, int(year), int(idx)))


_FILENAME_RE = re.compile(r"^(?P<cid>.+)_(?P<year>\d{4})\.html?$", re.IGNORECASE)


def load_filing(path: Path, year_range: tuple[int, int] | None = None) -> RawFiling:
    path = Path(path)
    m = _FILENAME_RE.match(path.name)
    if not m:
        raise ValueError(f"filing name must be <company_id>_<fiscal_year>.html: {path.name}")
    year = int(m["year"])
    if year_range is not None and not year_range[0] <= year <= year_range[1]:
        raise ValueError(f"{path.name}: fiscal year {year} outside {year_range}")
    return RawFiling(m["cid"], year, path.read_text(encoding="utf-8", errors="replace"))


# --- markup ---------------------------------------------------------------

_SKIP_TAGS = {"table", "script", "style", "head", "title", "img", "svg", "object", "noscript"}
_BLOCK_TAGS = {
    "p", "div", "br", "li", "ul", "ol", "h1", "h2", "h3", "h4", "h5", "h6", "tr", "pre",
    "blockquote", "hr", "center", "dd", "dt", "section", "article",
}
_VOID_TAGS = {"img", "br", "hr", "meta", "link", "input"}


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self.skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS and tag not in _VOID_TAGS:
            self.skip_depth += 1
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and tag not in _VOID_TAGS and self.skip_depth:
            self.skip_depth -= 1
        if tag in _BLOCK_TAGS:
            self.parts.append("\n")

    def handle_data(self, data):
        if not self.skip_depth:
            self.parts.append(data)


_ITEM_START_RE = re.compile(r"^\s*item\s+\d+[a-z]?\b", re.IGNORECASE)
_BACK_MATTER_RE = re.compile(
    r"^\s*(signatures?|exhibit\s+index|index\s+to\s+exhibits|exhibits?\b)", re.IGNORECASE
)


def _normalize_lines(text: str) -> list[str]:
    lines = []
    for line in text.splitlines():
        line = " ".join(line.replace("\xa0", " ").split())
        if line:
            lines.append(line)
    return lines


def _item_sections(lines: list[str]) -> list[str]:
    start = next((i for i, line in enumerate(lines) if _ITEM_START_RE.match(line)), 0)
    end = next(
        (i for i in range(start + 1, len(lines)) if _BACK_MATTER_RE.match(lines[i])), len(lines)
    )
    return lines[start:end]


def strip_markup(body: str) -> str:
    """Remove markup, tables and script/style content, then cut front and back matter.

    Text before the first ``Item N`` heading and from the first signatures or
    exhibits heading onward is dropped. Block elements become line breaks.
    """
    parser = _TextExtractor()
    parser.feed(body)
    parser.close()
    text = "".join(parser.parts)
    lines = _item_sections(_normalize_lines(text))
    if not lines:
        raise EmptyDocument("no text left after stripping markup")
    return "\n".join(lines)


# --- line cleaning --------------------------------------------------------

def clean_lines(text: str, max_nonalpha_ratio: float = 0.5, min_alpha: int = 3) -> list[str]:
    """Drop lines dominated by whitespace, digits and symbols.

    A line is dropped when its non-alphabetic share is strictly greater than
    ``max_nonalpha_ratio`` or it has fewer than ``min_alpha`` letters.
    """
    kept = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        n_alpha = sum(ch.isalpha() for ch in line)
        if n_alpha < min_alpha:
            continue
        if (len(line) - n_alpha) / len(line) > max_nonalpha_ratio:
            continue
        kept.append(line)
    return kept


# --- sentence segmentation -----------------------------------------------

ABBREVIATIONS = frozenset(
    """inc corp co ltd llc lp plc no nos mr mrs ms dr jr sr st vs etc approx dept est fig
    jan feb mar apr jun jul aug sep sept oct nov dec u.s u.k e.g i.e a.m p.m sec
    bros assn intl natl govt mgmt""".split()
)

_BOUNDARY_RE = re.compile(r"""[.!?]+["')\]]*(?=\s+|$)""")
_WORD_BEFORE_RE = re.compile(r"([A-Za-z][A-Za-z.]*)\.$")


def _is_abbreviation(text: str, dot_end: int, abbreviations) -> bool:
    m = _WORD_BEFORE_RE.search(text, 0, dot_end)
    if not m:
        return False
    word = m.group(1).lower()
    if word in abbreviations:
        return True
    # single initials such as "J." in "J. Smith"
    return len(word) == 1


def segment_sentences(text: str, abbreviations=ABBREVIATIONS) -> list[str]:
    """Split on terminal punctuation followed by whitespace; line breaks always split.

    A period after a listed abbreviation or a single initial is not a boundary.
    Decimal points never match because they are not followed by whitespace.
    """
    sentences = []
    for line in text.splitlines():
        start = 0
        for m in _BOUNDARY_RE.finditer(line):
            punct = m.group(0).rstrip("\"')]")
            if punct == "." and _is_abbreviation(line, m.start() + 1, abbreviations):
                continue
            piece = line[start:m.end()].strip()
            if piece:
                sentences.append(piece)
            start = m.end()
        tail = line[start:].strip()
        if tail:
            sentences.append(tail)
    return sentences


# --- candidate filtering --------------------------------------------------

_TOKEN_RE = re.compile(r"\w+(?:[.'’&-]\w+)*|[^\w\s]")


def tokenize(text: str) -> list[str]:
    """Split on whitespace and punctuation, keeping ``1.2``, ``U.S`` and ``don't`` whole."""
    return _TOKEN_RE.findall(text)


def count_words(text: str) -> int:
    return sum(1 for tok in tokenize(text) if any(ch.isalnum() for ch in tok))


def load_lexicon(*paths) -> set[str]:
    """Union of word lists; each line is a word with an optional tab-separated class."""
    words = set()
    for path in paths:
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                word = line.split("\t", 1)[0].strip().lower()
                if word and not word.startswith("#"):
                    words.add(word)
    return words


def filter_candidates(
    sentences: Iterable[str],
    lexicon: set[str],
    min_tokens: int = 8,
    max_tokens: int = 100,
    lemma_map: Mapping[str, str] | None = None,
    source: tuple[str, int] = ("", 0),
) -> list[CandidateSentence]:
    if not lexicon:
        raise ValueError("lexicon must not be empty")
    lexicon = {w.lower() for w in lexicon}
    out = []
    for idx, sentence in enumerate(sentences):
        n = count_words(sentence)
        if not min_tokens <= n <= max_tokens:
            continue
        words = [tok.lower() for tok in tokenize(sentence)]
        hit = any(
            w in lexicon or (lemma_map is not None and lemma_map.get(w) in lexicon) for w in words
        )
        if hit:
            out.append(CandidateSentence(sentence, n, (source[0], source[1], idx)))
    return out


@dataclass
class ExtractCounts:
    filings: int = 0
    sentences: int = 0
    candidates: int = 0
    empty: int = 0


def extract_filing(
    filing: RawFiling,
    lexicon: set[str],
    min_tokens: int = 8,
    max_tokens: int = 100,
    max_nonalpha_ratio: float = 0.5,
    min_alpha: int = 3,
    lemma_map: Mapping[str, str] | None = None,
) -> tuple[list[str], list[CandidateSentence]]:
    text = strip_markup(filing.body)
    lines = clean_lines(text, max_nonalpha_ratio, min_alpha)
    sentences = segment_sentences("\n".join(lines))
    candidates = filter_candidates(
        sentences, lexicon, min_tokens, max_tokens, lemma_map,
        source=(filing.company_id, filing.fiscal_year),
    )
    return sentences, candidates

