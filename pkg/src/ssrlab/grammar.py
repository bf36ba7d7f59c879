"""Label-driven local reordering of state sentences.

Every word in a lexicon of size W carries a label in {0, 1, .., n_labels};
label 0 is "neutral". A sentence is first cut into blocks: each maximal run
of neutral words fuses with the next non-neutral word and the block carries
that word's label (a trailing all-neutral run forms its own block). Blocks
are then emitted round-robin over the labels 1..n_labels, repeatedly taking
the next unconsumed block of each label in turn and skipping exhausted
labels, with the trailing neutral block, if any, appended last. The result
is a permutation of the sentence.

Applying this to every sentence of a freshly sampled staircase text gives a
generated text whose word frequencies are exactly those of the underlying
chain but whose within-sentence word order follows the label pattern.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .corpus import Corpus, corpus_from_states
from .rng import CHAIN_STREAM, LABEL_STREAM, stream
from .ssr import ssr_sentences


@dataclass(frozen=True)
class GrammarConfig:
    """Label-count, neutral probability, and seed for one reordering grammar."""

    n_labels: int
    neutral_prob: float
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_labels < 1:
            raise ValueError("need at least one non-neutral label")
        if not 0.0 <= self.neutral_prob <= 1.0:
            raise ValueError("neutral probability must lie in [0, 1]")


@dataclass
class LabelMap:
    """Per-word-id labels; `labels[i]` is the label of word id i (entry 0 unused)."""

    labels: np.ndarray

    @property
    def size(self) -> int:
        return int(self.labels.size - 1)

    def label_of(self, word_id: int) -> int:
        return int(self.labels[word_id])


@dataclass
class Block:
    """A reordering unit: zero or more neutral words plus their host.

    `label` is the label of the final (non-neutral) word, or 0 for a trailing
    run of neutrals that has no host.
    """

    words: list[int]
    label: int


def assign_labels(vocab_size: int, cfg: GrammarConfig) -> LabelMap:
    """Draw i.i.d. labels for word ids 1..vocab_size.

    Each word is neutral with probability `neutral_prob`, otherwise uniform
    over the labels 1..n_labels.
    """
    if vocab_size < 1:
        raise ValueError("vocabulary must contain at least one word")
    rng = stream(cfg.seed, LABEL_STREAM)
    labels = rng.integers(1, cfg.n_labels + 1, size=vocab_size + 1)
    labels[rng.random(vocab_size + 1) < cfg.neutral_prob] = 0
    labels[0] = -1  # id 0 does not exist
    return LabelMap(labels)


def block_neutrals(sentence: Sequence[int], labels: LabelMap) -> list[Block]:
    """Cut a sentence into blocks of neutral runs fused with their hosts."""
    if len(sentence) == 0:
        raise ValueError("cannot block an empty sentence")
    arr = labels.labels
    blocks: list[Block] = []
    run: list[int] = []
    for word in sentence:
        word = int(word)
        label = int(arr[word])
        run.append(word)
        if label != 0:
            blocks.append(Block(run, label))
            run = []
    if run:
        blocks.append(Block(run, 0))
    return blocks


def reorder_sentence(sentence: Sequence[int], labels: LabelMap, n_labels: int) -> np.ndarray:
    """Permute one sentence into round-robin label order.

    Blocks of equal label keep their relative order; output takes the t-th
    block of label 1, then of label 2, .. label n_labels, then the (t+1)-th
    of each, skipping labels that ran out. A trailing neutral block goes last.
    """
    groups: list[list[Block]] = [[] for _ in range(n_labels + 1)]
    for block in block_neutrals(sentence, labels):
        groups[block.label].append(block)
    out: list[int] = []
    depth = max((len(g) for g in groups[1:]), default=0)
    for t in range(depth):
        for label in range(1, n_labels + 1):
            group = groups[label]
            if t < len(group):
                out.extend(group[t].words)
    for block in groups[0]:  # at most one: the trailing neutral run
        out.extend(block.words)
    return np.asarray(out, dtype=np.int64)


def reorder_sentences(
    sentences: Sequence[Sequence[int]], labels: LabelMap, n_labels: int
) -> list[np.ndarray]:
    return [reorder_sentence(s, labels, n_labels) for s in sentences]


def gossr_text(template: Corpus, grammar: GrammarConfig) -> Corpus:
    """Sample a grammar-ordered staircase text matched to a template corpus.

    The state count equals the template's lexicon size and the sentence
    lengths are copied from the template. The chain and the label assignment
    draw from disjoint sub-streams of the seed, so with n_labels=1 and
    neutral_prob=0 the output equals the plain staircase text for the same
    seed, token for token.
    """
    if template.n_tokens == 0:
        raise ValueError("template corpus is empty")
    vocab_size = template.lexicon.size
    labels = assign_labels(vocab_size, grammar)
    chain_rng = stream(grammar.seed, CHAIN_STREAM)
    raw = ssr_sentences(vocab_size, template.sentence_lengths, chain_rng)
    return corpus_from_states(reorder_sentences(raw, labels, grammar.n_labels))


def write_labels_csv(labels: LabelMap, path: str | Path, header: str | None = None) -> None:
    """Write `id,label` rows for every word id."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(f"# {header}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "label"])
        for i in range(1, labels.size + 1):
            writer.writerow([i, int(labels.labels[i])])
