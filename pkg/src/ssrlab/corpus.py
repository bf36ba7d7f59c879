"""Text ingestion: tokenization, sentence segmentation, lexicon, rank-frequency.

A corpus is a flat array of integer word-ids plus the sentence lengths that
cut it, together with a lexicon that maps words to ids and carries counts
and frequency ranks. Two id conventions exist:

* real text gets ids in first-appearance order (`build_corpus`);
* synthetic integer-state streams get ids in ascending state order
  (`corpus_from_states`), so the id order of a model corpus preserves the
  natural order of its states.

Frequency ranks always order by descending count with ties broken by
ascending id, which makes ranks deterministic under both conventions.
"""
from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import stats as scipy_stats


class EmptyCorpusError(ValueError):
    """Raised when an operation requires at least one token."""


@dataclass(frozen=True)
class RawText:
    """Unicode text plus the name of where it came from."""

    content: str
    source_name: str = ""


_GUTENBERG_START = "START OF"
_GUTENBERG_END = "END OF"


def strip_boilerplate(raw: RawText) -> RawText:
    """Cut license header/footer blocks marked in the Project Gutenberg style.

    Keeps the lines strictly between the first line containing "START OF" and
    the last line containing "END OF". If either marker is missing (or they
    are out of order) the text passes through unchanged.
    """
    lines = raw.content.splitlines()
    start = next((i for i, line in enumerate(lines) if _GUTENBERG_START in line), None)
    end = next((i for i in reversed(range(len(lines))) if _GUTENBERG_END in lines[i]), None)
    if start is None or end is None or end <= start:
        return raw
    return RawText("\n".join(lines[start + 1 : end]), raw.source_name)


# A token is a maximal run of letters/digits; apostrophes (ASCII or
# typographic) and hyphens survive only between such runs.
_TOKEN = re.compile(r"[^\W_]+(?:['’-][^\W_]+)*")
_SENTENCE_END = re.compile(r"[.!?]")


def tokenize_and_segment(raw: RawText) -> list[list[str]]:
    """Lowercase and split text into sentences of tokens.

    Sentences end at '.', '!' or '?'; every character that is not a letter,
    digit, or internal apostrophe/hyphen separates tokens. Sentences with no
    tokens are dropped, so abbreviation periods simply produce short
    sentences rather than empty ones.
    """
    sentences = []
    for chunk in _SENTENCE_END.split(raw.content.lower()):
        tokens = _TOKEN.findall(chunk)
        if tokens:
            sentences.append(tokens)
    return sentences


@dataclass
class Lexicon:
    """Bidirectional word/id mapping with occurrence counts and ranks.

    Ids are contiguous 1..W. `counts` and `ranks` are indexed by id (entry 0
    is unused); `ids_by_rank[r-1]` is the id holding frequency rank r.
    """

    words: list[str]
    counts: np.ndarray
    ranks: np.ndarray
    ids_by_rank: np.ndarray
    id_of: dict[str, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.words)

    def word_of(self, word_id: int) -> str:
        return self.words[word_id - 1]

    def count_of(self, word_id: int) -> int:
        return int(self.counts[word_id])

    def rank_of(self, word_id: int) -> int:
        return int(self.ranks[word_id])

    @classmethod
    def _from_counts(cls, words: list[str], counts_by_id: np.ndarray) -> "Lexicon":
        w = len(words)
        ranks = np.zeros(w + 1, dtype=np.int64)
        if w:
            # descending count, ties broken by ascending id (lexsort: last key major)
            ids_by_rank = np.lexsort((np.arange(1, w + 1), -counts_by_id[1:])) + 1
            ranks[ids_by_rank] = np.arange(1, w + 1)
        else:
            ids_by_rank = np.zeros(0, dtype=np.int64)
        id_of = {word: i + 1 for i, word in enumerate(words)}
        return cls(words, counts_by_id, ranks, ids_by_rank, id_of)


@dataclass
class Corpus:
    """A sentence-segmented text: flat id array, sentence lengths, lexicon."""

    tokens: np.ndarray
    sentence_lengths: np.ndarray
    lexicon: Lexicon

    def __post_init__(self) -> None:
        if int(self.sentence_lengths.sum()) != int(self.tokens.size):
            raise ValueError("sentence lengths do not add up to the token count")

    @property
    def n_tokens(self) -> int:
        return int(self.tokens.size)

    @property
    def n_sentences(self) -> int:
        return int(self.sentence_lengths.size)

    def sentence_starts(self) -> np.ndarray:
        """Start offset of every sentence in the flat token array."""
        starts = np.zeros(self.n_sentences, dtype=np.int64)
        if self.n_sentences > 1:
            starts[1:] = np.cumsum(self.sentence_lengths)[:-1]
        return starts

    def sentences(self) -> Iterator[np.ndarray]:
        """Yield each sentence as a view into the flat token array."""
        offset = 0
        for length in self.sentence_lengths:
            yield self.tokens[offset : offset + int(length)]
            offset += int(length)

    def token_sentences(self) -> Iterator[list[str]]:
        """Yield each sentence as a list of word strings."""
        words = self.lexicon.words
        for sent in self.sentences():
            yield [words[i - 1] for i in sent]


def build_corpus(sentences: Sequence[Sequence[str]]) -> Corpus:
    """Build a corpus from tokenized sentences, assigning ids by first appearance."""
    if not sentences:
        raise EmptyCorpusError("no sentences to build a corpus from")
    counter: dict[str, int] = {}
    lengths = np.zeros(len(sentences), dtype=np.int64)
    for k, sent in enumerate(sentences):
        if not sent:
            raise ValueError("sentences must be non-empty")
        lengths[k] = len(sent)
        for tok in sent:
            if not tok:
                raise ValueError("tokens must be non-empty")
            if tok in counter:
                counter[tok] += 1
            else:
                counter[tok] = 1
    # ids follow first-appearance order, which is dict insertion order
    words = list(counter)
    id_of = {word: i + 1 for i, word in enumerate(words)}
    tokens = np.fromiter(
        (id_of[tok] for sent in sentences for tok in sent), dtype=np.int64, count=int(lengths.sum())
    )
    counts = np.zeros(len(words) + 1, dtype=np.int64)
    for word, n in counter.items():
        counts[id_of[word]] = n
    return Corpus(tokens, lengths, Lexicon._from_counts(words, counts))


def corpus_from_states(state_sentences: Sequence[Sequence[int]]) -> Corpus:
    """Build a corpus from integer-state sentences, assigning ids in state order.

    Tokens are the decimal state strings; ids are contiguous over the states
    that actually occur, ordered ascending, so id order preserves state order.
    An empty input yields an empty corpus rather than an error.
    """
    if len(state_sentences) == 0:
        empty = np.zeros(0, dtype=np.int64)
        return Corpus(empty, empty.copy(), Lexicon._from_counts([], np.zeros(1, dtype=np.int64)))
    lengths = np.fromiter((len(s) for s in state_sentences), dtype=np.int64, count=len(state_sentences))
    if (lengths == 0).any():
        raise ValueError("sentences must be non-empty")
    flat = np.concatenate([np.asarray(s, dtype=np.int64) for s in state_sentences])
    if flat.min() < 1:
        raise ValueError("states must be positive integers")
    states, state_counts = np.unique(flat, return_counts=True)
    tokens = np.searchsorted(states, flat) + 1
    words = [str(int(s)) for s in states]
    counts = np.zeros(len(words) + 1, dtype=np.int64)
    counts[1:] = state_counts
    return Corpus(tokens, lengths, Lexicon._from_counts(words, counts))


@dataclass(frozen=True)
class RankFrequency:
    """Word frequencies ordered by rank (rank 1 = most frequent)."""

    ranks: np.ndarray
    frequencies: np.ndarray


def rank_frequency(corpus: Corpus) -> RankFrequency:
    """Rank-ordered frequency view of a corpus's lexicon."""
    if corpus.n_tokens == 0:
        raise EmptyCorpusError("empty corpus has no rank-frequency distribution")
    lex = corpus.lexicon
    freqs = lex.counts[lex.ids_by_rank]
    return RankFrequency(np.arange(1, lex.size + 1, dtype=np.int64), freqs)


@dataclass(frozen=True)
class ZipfFit:
    """Power-law exponent fitted to a rank range of a rank-frequency curve."""

    alpha: float
    fit_range: tuple[int, int]
    residual: float


def fit_zipf(rf: RankFrequency, r_min: int, r_max: int) -> ZipfFit:
    """Fit log f(r) = -alpha log r + c by least squares over ranks [r_min, r_max].

    `residual` is the mean squared log-residual of the fit.
    """
    w = rf.ranks.size
    if not (1 <= r_min < r_max <= w):
        raise ValueError(f"fit range [{r_min}, {r_max}] invalid for {w} ranks")
    sel = slice(r_min - 1, r_max)
    log_r = np.log(rf.ranks[sel].astype(float))
    log_f = np.log(rf.frequencies[sel].astype(float))
    if np.unique(log_r).size < 2:
        raise ValueError("degenerate fit range: fewer than two distinct ranks")
    result = scipy_stats.linregress(log_r, log_f)
    predicted = result.slope * log_r + result.intercept
    residual = float(np.mean((log_f - predicted) ** 2))
    return ZipfFit(alpha=-float(result.slope), fit_range=(r_min, r_max), residual=residual)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def read_text(path: str | Path) -> RawText:
    p = Path(path)
    return RawText(p.read_text(encoding="utf-8"), p.name)


def write_tokenized(corpus: Corpus, path: str | Path, header: str | None = None) -> None:
    """Write one sentence per line, tokens separated by single spaces."""
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            fh.write(f"# {header}\n")
        for sent in corpus.token_sentences():
            fh.write(" ".join(sent))
            fh.write("\n")


def read_tokenized(path: str | Path, numeric_ids: bool | None = None) -> Corpus:
    """Read a tokenized-corpus file (one sentence per line, space separated).

    Lines starting with '#' and blank lines are skipped. When `numeric_ids`
    is None, a file whose tokens are all decimal integers is treated as an
    integer-state stream (state-order ids); anything else gets
    first-appearance ids.
    """
    sentences: list[list[str]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            sentences.append(line.split(" "))
    if not sentences:
        raise EmptyCorpusError(f"no sentences in {path}")
    if numeric_ids is None:
        numeric_ids = all(tok.isdigit() for sent in sentences for tok in sent)
    if numeric_ids:
        return corpus_from_states([[int(tok) for tok in sent] for sent in sentences])
    return build_corpus(sentences)


def write_lexicon_csv(lexicon: Lexicon, path: str | Path, header: str | None = None) -> None:
    """Write `word,id,count,rank` rows for every lexicon entry, in id order."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["word", "id", "count", "rank"])
        for i, word in enumerate(lexicon.words, start=1):
            writer.writerow([word, i, int(lexicon.counts[i]), int(lexicon.ranks[i])])


def write_rank_frequency_csv(rf: RankFrequency, path: str | Path, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["rank", "frequency"])
        for r, f in zip(rf.ranks, rf.frequencies):
            writer.writerow([int(r), int(f)])


def ingest(raw: RawText) -> Corpus:
    """Full ingestion pipeline: strip boilerplate, tokenize, build the corpus."""
    sentences = tokenize_and_segment(strip_boilerplate(raw))
    if not sentences:
        raise EmptyCorpusError(f"no tokens in {raw.source_name or 'input'}")
    return build_corpus(sentences)
