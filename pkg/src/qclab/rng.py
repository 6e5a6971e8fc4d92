"""Seeded, purpose-tagged randomness.

Every random decision in the package flows from a 64-bit user seed plus a
chain of purpose tags ("round", 3, ...). Tags are hashed with BLAKE2b, so
streams are stable across platforms and Python versions, and two purposes
never share a stream by accident. The bit generator is counter-based
(Philox), which keeps derived streams independent.
"""

from __future__ import annotations

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def _tag_words(tag: object) -> list[int]:
    if isinstance(tag, (int, np.integer)):
        return [int(tag) & _MASK64, 0x746167]  # disambiguate int tags from raw seeds
    digest = hashlib.blake2b(str(tag).encode("utf-8"), digest_size=16).digest()
    return [
        int.from_bytes(digest[:8], "little"),
        int.from_bytes(digest[8:], "little"),
    ]


def seed_words(seed: int, *tags: object) -> list[int]:
    """Entropy word list for (seed, tags), usable as a SeedSequence."""
    words = [int(seed) & _MASK64]
    for tag in tags:
        words.extend(_tag_words(tag))
    return words


def rng_from(seed: int, *tags: object) -> np.random.Generator:
    """Generator for the stream identified by (seed, tags)."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed_words(seed, *tags))))


def derive_seed(seed: int, *tags: object) -> int:
    """Collapse (seed, tags) to a single 64-bit child seed."""
    payload = b"".join(w.to_bytes(8, "little") for w in seed_words(seed, *tags))
    return int.from_bytes(hashlib.blake2b(payload, digest_size=8).digest(), "little")


def mix_index(seed: int, index: int) -> int:
    """Cheap stateless 64-bit mix of (seed, index), splitmix64 style.

    Used on hot paths where constructing a Generator per call would dominate.
    """
    z = (int(seed) + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix_choice(seed: int, index: int, n: int) -> int:
    """Deterministic near-uniform pick from range(n) keyed by (seed, index)."""
    return (mix_index(seed, index) * n) >> 64
