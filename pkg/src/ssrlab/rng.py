"""Seed derivation helpers for reproducible simulation runs.

Every generator in this package owns its RNG; nothing shares random state.
Independent sub-streams of one seed are addressed by a small stream key, and
worker seeds (replicates, realizations) are derived from a master seed plus
integer path components, so whole pipelines are a pure function of one seed.
"""
from __future__ import annotations

import numpy as np

# Stream keys: the state-sampling chain and the label assignment draw from
# disjoint sub-streams so that reordering parameters never perturb the chain.
CHAIN_STREAM = 0
LABEL_STREAM = 1


def stream(seed: int, key: int = CHAIN_STREAM) -> np.random.Generator:
    """Return the generator for sub-stream `key` of `seed`."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(key,)))


def derived_seed(master: int, *path: int) -> int:
    """Derive a well-mixed child seed from a master seed and a counter path."""
    ss = np.random.SeedSequence([master, *path])
    return int(ss.generate_state(1, np.uint64)[0])
