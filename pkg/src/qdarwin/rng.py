"""Deterministic random streams.

Everything stochastic in the package draws from a Philox counter-based
generator keyed by (seed, stream).  Distinct stream ids give statistically
independent sequences, so per-sample work can be farmed out to threads in
any order without changing the result for a given seed.
"""

from __future__ import annotations

import numpy as np

# Subset-choice streams live in a separate block so they never collide with
# the per-sample state streams, whatever the sample count.
SUBSET_STREAM_BASE = 2**32


def stream_generator(seed: int, stream: int) -> np.random.Generator:
    """Generator for (seed, stream), independent across stream ids."""
    if seed < 0 or stream < 0:
        raise ValueError("seed and stream must be nonnegative")
    key = np.array([seed, stream], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
