"""Shared fixtures and independent brute-force references.

The references here avoid every cutlab algorithm: they enumerate raw label
assignments with itertools and sum edge weights directly.
"""

from __future__ import annotations

from itertools import product

import pytest
from hypothesis import strategies as st

from cutlab.graph import WeightedGraph


def brute_cut(edges, labels) -> int:
    return sum(w for u, v, w in edges if labels[u] != labels[v])


def brute_mincut(n: int, edges, pairs) -> int:
    """min over all label assignments in {0..n-1}^n that separate every pair."""
    best = None
    for labels in product(range(n), repeat=n):
        if labels[0] != 0:  # block names are interchangeable
            continue
        if all(labels[u] != labels[v] for u, v in pairs):
            c = brute_cut(edges, labels)
            if best is None or c < best:
                best = c
    return best


def brute_directed_mincut(n: int, edges, pairs) -> int:
    """min weight of an arc set whose removal kills every u -> v path (pairs directed)."""
    best = None
    m = len(edges)
    for mask in range(1 << m):
        kept = [edges[i] for i in range(m) if not mask >> i & 1]
        if all(v not in _reach(n, kept, u) for u, v in pairs):
            c = sum(edges[i][2] for i in range(m) if mask >> i & 1)
            if best is None or c < best:
                best = c
    return best


def _reach(n, edges, s):
    seen = {s}
    stack = [s]
    while stack:
        x = stack.pop()
        for u, v, _ in edges:
            if u == x and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


@st.composite
def graphs(draw, min_n=2, max_n=6, max_w=20, directed=False):
    n = draw(st.integers(min_n, max_n))
    edges = []
    for u in range(n):
        for v in range(n):
            if u == v or (not directed and v < u):
                continue
            if draw(st.booleans()):
                edges.append((u, v, draw(st.integers(0, max_w))))
    return WeightedGraph.from_edges(n, edges, directed)


@pytest.fixture
def triangle():
    return WeightedGraph.from_edges(3, [(0, 1, 1), (0, 2, 2), (1, 2, 3)])


@pytest.fixture
def p4():
    return WeightedGraph.from_edges(4, [(0, 1, 2), (1, 2, 4), (2, 3, 8)])


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
