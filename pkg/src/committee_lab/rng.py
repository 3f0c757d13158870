"""Seeded random substreams.

All randomness goes through :func:`substream`, which hashes a master seed
together with string/int labels into a fresh PCG64 generator.  Two calls
with equal arguments give identical streams; different labels give
statistically independent ones, so a rule's tie-breaking never depends on
which other rules ran before it.
"""

from __future__ import annotations

import hashlib
import os

import numpy as np

SEED_ENV_VAR = "COMMITTEE_LAB_SEED"
DEFAULT_SEED = 0
_U64 = 2**64


def derive_key(seed: int, *labels) -> int:
    """128-bit integer key for ``(seed, *labels)``."""
    if not 0 <= int(seed) < _U64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
    h = hashlib.sha256()
    h.update(int(seed).to_bytes(8, "little"))
    for label in labels:
        token = f"{type(label).__name__}:{label}".encode()
        h.update(len(token).to_bytes(4, "little"))
        h.update(token)
    return int.from_bytes(h.digest()[:16], "little")


def substream(seed: int, *labels) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(derive_key(seed, *labels)))


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    return int(raw)
