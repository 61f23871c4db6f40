"""Seeded random streams.

Every stochastic component draws from ``Generator(PCG64(SeedSequence(...)))``
keyed by the user seed, a component tag and per-item indices, so results
do not depend on thread count or call order.
"""

from enum import IntEnum

import numpy as np


class StreamTag(IntEnum):
    REPLICATION = 1
    SURFACE = 2
    SELECTION = 3
    BIAS = 4
    NOISE = 5


def substream(seed: int, tag: StreamTag, *index: int) -> np.random.Generator:
    """Independent generator for (seed, tag, index...)."""
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, int(tag), *(int(i) for i in index)]
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy)))
