from itertools import product

import pytest

from cutlab.graph import canonical_labels
from cutlab.partitions import assignments, bell, bipartitions, partitions_into, set_partitions, stirling2


def _brute_partitions(n):
    return sorted({canonical_labels(p) for p in product(range(n), repeat=n)})


def test_bell_and_stirling_values():
    assert [bell(n) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]
    assert stirling2(4, 2) == 7
    assert stirling2(5, 3) == 25
    assert sum(stirling2(6, k) for k in range(7)) == bell(6)


@pytest.mark.parametrize("n", range(1, 8))
def test_set_partitions_are_all_rgs_in_lex_order(n):
    rows = [tuple(int(x) for x in r) for r in set_partitions(n)]
    assert rows == _brute_partitions(n)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (6, 1), (6, 6), (3, 4)])
def test_partitions_into(n, k):
    rows = partitions_into(n, k)
    assert len(rows) == stirling2(n, k)
    assert all(r.max() == k - 1 for r in rows)


@pytest.mark.parametrize("n", range(2, 8))
def test_bipartitions(n):
    rows = [tuple(int(x) for x in r) for r in bipartitions(n)]
    assert len(rows) == 2 ** (n - 1) - 1
    assert rows == [p for p in _brute_partitions(n) if max(p) == 1]


def test_assignments_chunks_cover_product():
    full = [tuple(int(x) for x in r) for r in assignments(3, 4)]
    assert full == list(product(range(3), repeat=4))
    chunks = [tuple(int(x) for x in r) for start in range(0, 81, 10) for r in assignments(3, 4, start, start + 10)]
    assert chunks == full
