"""Deterministic, labeled pseudorandom streams.

Every randomized operation takes a single integer seed and derives a child
stream keyed by a purpose label, so independent operations never share or
perturb each other's randomness and whole runs replay byte-for-byte.
"""

from __future__ import annotations

import hashlib
import random


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def derive_rng(seed: int, label: str) -> random.Random:
    """Child generator for `label`; stable across platforms and runs."""
    return random.Random(derive_seed(seed, label))
