"""Vertex sets as Python int bitmasks, plus conversion to fixed-width word arrays.

Bit ``i`` of a mask is vertex ``i``. Kernels consume masks packed into
``(m, WORDS)`` uint64 arrays, word ``w`` holding vertices ``64*w .. 64*w+63``.

The default width covers 128 vertices. Setting ``IDGRAPHS_EXTENDED_N=1``
before import widens it to 256 (slower, for the large bound-table rows).
"""

from __future__ import annotations

import os
from typing import Iterable, Sequence

import numpy as np

EXTENDED_ENV = "IDGRAPHS_EXTENDED_N"
EXTENDED = os.environ.get(EXTENDED_ENV, "").strip().lower() in ("1", "true", "yes", "on")
MAX_N = 256 if EXTENDED else 128
WORDS = MAX_N // 64
_LO = (1 << 64) - 1


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def popcount(mask: int) -> int:
    return mask.bit_count()


def full_mask(n: int) -> int:
    return (1 << n) - 1


def symmetric_difference(a: int, b: int) -> int:
    return a ^ b


def to_words(masks: Sequence[int]) -> np.ndarray:
    arr = np.empty((len(masks), WORDS), dtype=np.uint64)
    for i, m in enumerate(masks):
        m = int(m)
        for w in range(WORDS):
            arr[i, w] = (m >> (64 * w)) & _LO
    return arr


def from_words(arr: np.ndarray) -> list[int]:
    return [sum(int(x) << (64 * w) for w, x in enumerate(row)) for row in arr]
