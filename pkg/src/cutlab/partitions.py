"""Set-partition enumeration.

Partitions are restricted growth strings (RGS): ``labels[0] == 0`` and each
label is at most one more than the maximum of the labels before it.  RGS are
exactly the canonical label tuples of :class:`~cutlab.graph.Partition`, and
lexicographic RGS order is the canonical partition order.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np


@lru_cache(maxsize=None)
def bell(n: int) -> int:
    if n == 0:
        return 1
    return sum(comb(n - 1, k) * bell(k) for k in range(n))


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def set_partitions(n: int) -> np.ndarray:
    """All partitions of ``n`` elements as a ``(bell(n), n)`` int8 array in lexicographic RGS order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    labels = np.zeros((1, 1), dtype=np.int8)
    maxes = np.zeros(1, dtype=np.int8)
    for _ in range(1, n):
        counts = maxes.astype(np.int64) + 2
        parent = np.repeat(np.arange(len(labels)), counts)
        starts = np.repeat(np.cumsum(counts) - counts, counts)
        child = (np.arange(int(counts.sum())) - starts).astype(np.int8)
        labels = np.concatenate([labels[parent], child[:, None]], axis=1)
        maxes = np.maximum(maxes[parent], child)
    return labels


def partitions_into(n: int, k: int) -> np.ndarray:
    """Partitions with exactly ``k`` blocks, lexicographic RGS order."""
    rows = set_partitions(n)
    if n == 0:
        return rows if k == 0 else rows[:0]
    return rows[rows.max(axis=1) == k - 1]


def bipartitions(n: int) -> np.ndarray:
    """All unordered 2-block partitions (``2^(n-1) - 1`` of them) as 0/1 rows, lexicographic order."""
    if n < 2:
        return np.zeros((0, n), dtype=np.int8)
    codes = np.arange(1, 1 << (n - 1), dtype=np.int64)
    shifts = np.arange(n - 2, -1, -1, dtype=np.int64)
    bits = ((codes[:, None] >> shifts) & 1).astype(np.int8)
    return np.concatenate([np.zeros((len(codes), 1), dtype=np.int8), bits], axis=1)


def assignments(k: int, free: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows ``start..stop`` of all ``k**free`` label tuples over ``range(k)``, last column fastest."""
    total = k**free
    stop = total if stop is None else min(stop, total)
    codes = np.arange(start, stop, dtype=np.int64)
    out = np.empty((len(codes), free), dtype=np.int8)
    for col in range(free - 1, -1, -1):
        codes, digit = np.divmod(codes, k)
        out[:, col] = digit
    return out
