"""Keyed random streams.

Every random draw in the package goes through a ``numpy.random.Generator``
supplied by the caller.  ``stream`` derives an independent generator from a
root seed and an arbitrary tuple of integer keys (experiment row, chunk index,
...), so results depend only on the keys and never on how work is scheduled.
"""
import numpy as np

# Trials are drawn in fixed-size chunks, each chunk on its own keyed stream.
CHUNK = 4096


def stream(seed, *keys):
    """Generator for the stream identified by ``(seed, *keys)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed) & 0xFFFFFFFFFFFFFFFF, *map(int, keys)]))


def as_generator(rng):
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def chunk_sizes(trials, chunk=CHUNK):
    full, rest = divmod(int(trials), chunk)
    return [chunk] * full + ([rest] if rest else [])
