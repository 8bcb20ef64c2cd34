"""Seed derivation and RNG construction.

All randomness in the toolkit flows through numpy PCG64 generators whose
seeds are derived here. Child seeds come from SHA-256 over a canonical
byte string, so identical master seeds reproduce identical artifacts on
any platform (fixed-width integer arithmetic end to end).
"""

from __future__ import annotations

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1


def derive_seed(master: int, *parts) -> int:
    """Derive a child 64-bit seed from a master seed and a label path.

    ``parts`` are stringified and joined with ``|`` after the master seed;
    the SHA-256 digest of that byte string is truncated to 64 bits.
    """
    h = hashlib.sha256()
    h.update(str(int(master) & MASK64).encode("ascii"))
    for part in parts:
        h.update(b"|")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest()[:8], "big")


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for ``seed``."""
    return np.random.Generator(np.random.PCG64(int(seed) & MASK64))
