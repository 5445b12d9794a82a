"""Deterministic randomness helpers.

Every stochastic operation in this package draws from a counter-based
Philox generator keyed by a 64-bit FNV-1a hash of its identifying parts,
so results depend only on declared inputs and never on call order.
"""

from __future__ import annotations

import numpy as np

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes | str) -> int:
    """64-bit FNV-1a hash of a byte string (str is hashed as UTF-8)."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & _MASK64
    return h


def mix64(*parts: int | str | bytes) -> int:
    """Fold several values into one 64-bit key.

    Integers contribute their 8 little-endian bytes, strings their UTF-8
    bytes. Each part is terminated by a sentinel byte so that adjacent
    parts cannot collide by concatenation.
    """
    h = FNV_OFFSET
    for part in parts:
        if isinstance(part, (int, np.integer)):
            raw = int(part & _MASK64).to_bytes(8, "little")
        elif isinstance(part, str):
            raw = part.encode("utf-8")
        else:
            raw = part
        for byte in raw:
            h = ((h ^ byte) * FNV_PRIME) & _MASK64
        h = ((h ^ 0xFF) * FNV_PRIME) & _MASK64
    return h


def philox(*parts: int | str | bytes) -> np.random.Generator:
    """Independent generator keyed by the given parts."""
    return np.random.Generator(np.random.Philox(key=mix64(*parts)))
