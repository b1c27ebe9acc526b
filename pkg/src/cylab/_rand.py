"""Counter-based RNG plumbing.

Every stochastic routine in the package draws from a Philox generator keyed
by (seed, substream): a pure function of those integers, independent across
substreams, reproducible regardless of scheduling. Callers either pass an
integer seed (a fresh keyed stream is built) or an existing Generator (used
as-is, for composed routines that manage their own substreams).
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


def philox_stream(seed: int, substream: int = 0) -> np.random.Generator:
    """Independent Philox stream for (seed, substream)."""
    key = np.array([int(seed) & _MASK64, int(substream) & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def as_generator(rng, substream: int = 0) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return philox_stream(int(rng), substream)
