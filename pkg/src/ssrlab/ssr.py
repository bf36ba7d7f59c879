"""Sample-space reducing (staircase) chains and their exact visiting law.

The chain lives on states 1..W. From any state above 1 it jumps uniformly to
a strictly lower state; from state 1 it restarts uniformly on {2,..,W}. The
long-run visiting frequency of state i is proportional to 1/i, which is what
makes these chains a generator of rank-frequency power laws with exponent 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import Corpus, corpus_from_states
from .rng import CHAIN_STREAM, stream


@dataclass(frozen=True)
class SsrConfig:
    """State count and seed for one chain."""

    n_states: int
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_states < 2:
            raise ValueError("an SSR chain needs at least 2 states")


def ssr_next(current: int, n_states: int, rng: np.random.Generator) -> int:
    """One chain step: descend uniformly below `current`, or restart from 1.

    A restart draws uniformly from {2,..,n_states}; state 1 is excluded so
    every restart is a genuine lift.
    """
    if not 1 <= current <= n_states:
        raise ValueError(f"state {current} outside 1..{n_states}")
    if current > 1:
        return int(rng.integers(1, current))
    return int(rng.integers(2, n_states + 1))


def ssr_chain(n_states: int, n_steps: int, rng: np.random.Generator) -> np.ndarray:
    """Sample one continuous chain of `n_steps` states, starting with a restart."""
    if n_steps <= 0:
        return np.zeros(0, dtype=np.int64)
    # One 63-bit draw per step, reduced by modulo: exact integer arithmetic
    # keeps the descent strict, and the modulo bias is < 2**-40 for any
    # text-scale state count.
    raw = rng.integers(0, 2**63, size=n_steps, dtype=np.int64).tolist()
    out = np.empty(n_steps, dtype=np.int64)
    current = 2 + raw[0] % (n_states - 1)
    out[0] = current
    for t in range(1, n_steps):
        if current > 1:
            current = 1 + raw[t] % (current - 1)
        else:
            current = 2 + raw[t] % (n_states - 1)
        out[t] = current
    return out


def ssr_sentences(
    n_states: int, sentence_lengths: Sequence[int], rng: np.random.Generator
) -> list[np.ndarray]:
    """One continuous chain cut into consecutive windows of the given lengths.

    Reaching state 1 mid-window records the 1 and restarts on the next step,
    so sentences are sub-sequences of a single chain rather than independent
    chains.
    """
    lengths = np.asarray(sentence_lengths, dtype=np.int64)
    if lengths.size == 0:
        return []
    if (lengths < 1).any():
        raise ValueError("sentence lengths must be >= 1")
    chain = ssr_chain(n_states, int(lengths.sum()), rng)
    return np.split(chain, np.cumsum(lengths)[:-1])


def ssr_text(cfg: SsrConfig, sentence_lengths: Sequence[int]) -> Corpus:
    """Sample an SSR-generated corpus matched to a sentence-length profile."""
    rng = stream(cfg.seed, CHAIN_STREAM)
    return corpus_from_states(ssr_sentences(cfg.n_states, sentence_lengths, rng))


def ssr_theoretical_dist(n_states: int) -> np.ndarray:
    """Stationary visiting distribution: p[i-1] proportional to 1/i, normalized."""
    if n_states < 2:
        raise ValueError("an SSR chain needs at least 2 states")
    p = 1.0 / np.arange(1, n_states + 1, dtype=float)
    return p / p.sum()
