"""
Seeded random streams.

Every random draw in the simulator comes from numpy's PCG64 bit
generator, which produces the same stream on every platform for a given
seed. Independent streams of one scenario seed are keyed by a stream
number so deployment and head election never share state.
"""
import numpy as np

DEPLOYMENT_STREAM = 0
ELECTION_STREAM = 1


def seeded_generator(seed: int, stream: int = DEPLOYMENT_STREAM):
    """Return a PCG64-backed generator for ``(seed, stream)``."""
    if stream == DEPLOYMENT_STREAM:
        return np.random.Generator(np.random.PCG64(seed))
    return np.random.Generator(np.random.PCG64([seed, stream]))
