"""GF(2) linear algebra on rows packed into Python ints (bit c = column c)."""

from __future__ import annotations

from typing import Iterable

import numpy as np


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) by elimination on leading bits."""
    pivots: dict[int, int] = {}  # leading bit -> basis row
    rank = 0
    for r in rows:
        while r:
            lead = r.bit_length() - 1
            basis = pivots.get(lead)
            if basis is None:
                pivots[lead] = r
                rank += 1
                break
            r ^= basis
    return rank


def gf2_in_rowspan(vec: int, rows: Iterable[int]) -> bool:
    rows = list(rows)
    return gf2_rank(rows + [vec]) == gf2_rank(rows)


def pack_bits(mask: np.ndarray) -> int:
    """Boolean vector -> int with element ``c`` at bit ``c``."""
    if len(mask) == 0:
        return 0
    return int.from_bytes(np.packbits(mask.astype(bool), bitorder="little").tobytes(), "little")


def unpack_bits(value: int, width: int) -> list[int]:
    return [value >> c & 1 for c in range(width)]
