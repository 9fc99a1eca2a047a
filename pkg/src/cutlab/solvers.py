"""Exact minimum-cut solvers.

``st_mincut`` and ``groupcut`` use max-flow.  ``mincut_oracle`` enumerates
every partition of V and is the brute-force reference the other solvers are
checked against; ``multiway`` enumerates assignments of the non-terminals to
the terminal blocks.  Ties are broken toward the canonically smallest
partition wherever a solver enumerates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import ContractViolation, GuardRefusal
from .flow import FlowNetwork
from .graph import DemandGraph, Partition, WeightedGraph, quotient
from .partitions import assignments, bell, set_partitions

ORACLE_MAX_N = 12
MULTIWAY_MAX_ASSIGNMENTS = 10**7
DIRECTED_MAX_EDGES = 24

# int64 accumulation is exact while every cut value stays below this
_INT64_SAFE = 1 << 62
_CHUNK = 1 << 20


@dataclass(frozen=True)
class CutResult:
    value: int
    partition: Partition


# ---------------------------------------------------------------------------
# max-flow based


def st_mincut(G: WeightedGraph, s: int, t: int) -> CutResult:
    """Minimum s-t cut; for directed graphs only edges leaving the source side count."""
    if s == t:
        raise ContractViolation("st_mincut needs s != t")
    for x in (s, t):
        if not 0 <= x < G.n:
            raise ContractViolation(f"vertex {x} out of range for n={G.n}")
    net = FlowNetwork(G.n)
    for u, v, w in G.edges:
        net.add_edge(u, v, w, undirected=not G.directed)
    value = net.max_flow(s, t)
    side = net.source_side(s)
    return CutResult(value, Partition.from_sides(G.n, side))


def groupcut(G: WeightedGraph, A: Iterable[int], B: Iterable[int]) -> CutResult:
    """Minimum (A,B)-cut: contract A and B to a super-source and super-sink, then one max-flow."""
    A, B = frozenset(A), frozenset(B)
    if not A or not B:
        raise ContractViolation("groupcut needs non-empty A and B")
    if A & B:
        raise ContractViolation(f"A and B intersect in {sorted(A & B)}")
    labels = []
    nxt = 2
    for v in range(G.n):
        if v in A:
            labels.append(0)
        elif v in B:
            labels.append(1)
        else:
            labels.append(nxt)
            nxt += 1
    if not (A | B) <= set(range(G.n)):
        raise ContractViolation("A or B has a vertex out of range")
    res = st_mincut(quotient(G, labels), 0, 1)
    side = res.partition.labels
    source = side[0]
    lifted = Partition(tuple(0 if side[labels[v]] == source else 1 for v in range(G.n)))
    return CutResult(res.value, lifted)


# ---------------------------------------------------------------------------
# enumeration machinery


def _evaluate(G: WeightedGraph, rows: np.ndarray):
    """Cut values for every label row.

    Returns ``(values, err)``: int64 values with ``err = None`` when exact,
    otherwise float64 approximations each within ``err`` of the true value.
    """
    total = G.total_weight
    if total < _INT64_SAFE:
        vals = np.zeros(len(rows), dtype=np.int64)
        for u, v, w in G.edges:
            if w:
                vals += np.int64(w) * (rows[:, u] != rows[:, v])
        return vals, None
    vals = np.zeros(len(rows), dtype=np.float64)
    for u, v, w in G.edges:
        vals += float(w) * (rows[:, u] != rows[:, v])
    err = (G.m + 2) * 2.0**-52 * float(total)
    return vals, err


def _exact_cut(G: WeightedGraph, row) -> int:
    return sum(w for u, v, w in G.edges if row[u] != row[v])


class _Best:
    """Running minimum over chunks of candidate rows with canonical tie-break."""

    def __init__(self, G: WeightedGraph):
        self.G = G
        self.value: int | None = None
        self.partition: Partition | None = None

    def offer(self, rows: np.ndarray, mask: np.ndarray | None = None) -> None:
        if mask is not None:
            rows = rows[mask]
        if len(rows) == 0:
            return
        vals, err = _evaluate(self.G, rows)
        if err is None:
            low = vals.min()
            cand = rows[vals == low]
            exact = [(int(low), Partition(tuple(r.tolist()))) for r in cand]
        else:
            low = vals.min()
            cand = rows[vals <= low + 2 * err]
            exact = [(_exact_cut(self.G, r), Partition(tuple(r.tolist()))) for r in cand]
        best = min(exact)
        if self.value is None or best < (self.value, self.partition):
            self.value, self.partition = best

    def result(self) -> CutResult:
        return CutResult(self.value, self.partition)


@lru_cache(maxsize=2)
def _partition_table(G: WeightedGraph):
    rows = set_partitions(G.n)
    vals, err = _evaluate(G, rows)
    return rows, vals, err


def _agree_mask(rows: np.ndarray, pairs) -> np.ndarray:
    mask = np.ones(len(rows), dtype=bool)
    for u, v in pairs:
        mask &= rows[:, u] != rows[:, v]
    return mask


def _check_demands(G: WeightedGraph, D: DemandGraph) -> None:
    for u, v in D.pairs:
        if u == v:
            raise ContractViolation(f"infeasible demand: self-pair ({u},{u})")
        if not (0 <= u < G.n and 0 <= v < G.n):
            raise ContractViolation(f"demand pair ({u},{v}) out of range for n={G.n}")


# ---------------------------------------------------------------------------
# enumeration solvers


def mincut_oracle(G: WeightedGraph, D: DemandGraph) -> CutResult:
    """Exact ``mincut_G(D)`` by enumerating every partition of V (Bell-number many)."""
    if G.directed:
        raise ContractViolation("mincut_oracle is defined for undirected graphs; use directed_mincut")
    if G.n > ORACLE_MAX_N:
        raise GuardRefusal(
            f"mincut_oracle enumerates bell({G.n}) = {bell(G.n)} partitions; guard is n <= {ORACLE_MAX_N}"
        )
    _check_demands(G, D)
    rows, vals, err = _partition_table(G)
    mask = _agree_mask(rows, D.pairs)
    idx = np.flatnonzero(mask)
    if err is None:
        # rows are in canonical order, so argmin's first hit is the tie-break winner
        j = idx[np.argmin(vals[idx])]
        return CutResult(int(vals[j]), Partition(tuple(rows[j].tolist())))
    best = _Best(G)
    best.offer(rows, mask)
    return best.result()


def multiway(G: WeightedGraph, S: Iterable[int]) -> CutResult:
    """Minimum multiway cut separating all of ``S``.

    An optimum needs at most |S| blocks (extra blocks merge for free), so each
    non-terminal is assigned to one terminal's block: ``k^(n-k)`` candidates.
    """
    if G.directed:
        raise ContractViolation("multiway is defined for undirected graphs")
    S = sorted(set(S))
    k = len(S)
    if k < 2:
        raise ContractViolation("multiway needs at least two terminals")
    if not set(S) <= set(range(G.n)):
        raise ContractViolation(f"terminal set {S} out of range for n={G.n}")
    rest = [v for v in range(G.n) if v not in set(S)]
    total = k ** len(rest)
    if total > MULTIWAY_MAX_ASSIGNMENTS:
        raise GuardRefusal(f"multiway enumerates {k}^{len(rest)} = {total} assignments; guard is {MULTIWAY_MAX_ASSIGNMENTS}")
    best = _Best(G)
    for start in range(0, total, _CHUNK):
        free = assignments(k, len(rest), start, start + _CHUNK)
        rows = np.empty((len(free), G.n), dtype=np.int8)
        for i, s in enumerate(S):
            rows[:, s] = i
        if rest:
            rows[:, rest] = free
        best.offer(rows)
    return best.result()


def multicut(G: WeightedGraph, D: DemandGraph) -> CutResult:
    return mincut_oracle(G, D)


def solve(G: WeightedGraph, D: DemandGraph) -> CutResult:
    """Dispatch on the demand kind: K_{A,B} -> groupcut, K_S -> multiway, pairs -> multicut."""
    if not D.pairs:
        return CutResult(0, Partition((0,) * G.n))
    if D.kind == "bipartite":
        return groupcut(G, D.A, D.B)
    if D.kind == "clique":
        return multiway(G, D.A)
    return multicut(G, D)


# ---------------------------------------------------------------------------
# directed


def directed_mincut(G: WeightedGraph, D: DemandGraph) -> int:
    """Minimum weight of an edge set whose removal leaves no demanded directed path.

    A single pair is solved by max-flow; otherwise every edge subset is tried
    (guard ``m <= 24``) with a bitmask reachability test, skipping subsets
    that already cost at least the best found.
    """
    if not G.directed:
        raise ContractViolation("directed_mincut needs a directed graph")
    _check_demands(G, D)
    pairs = list(D.pairs)
    if not pairs:
        return 0
    if len(pairs) == 1:
        return st_mincut(G, *pairs[0]).value
    if G.m > DIRECTED_MAX_EDGES:
        raise GuardRefusal(f"directed_mincut enumerates 2^{G.m} edge subsets; guard is m <= {DIRECTED_MAX_EDGES}")
    edges = G.edges
    best = sum(w for _, _, w in edges)
    weights = [w for _, _, w in edges]
    for removed in range(1 << G.m):
        cost = 0
        for i in range(G.m):
            if removed >> i & 1:
                cost += weights[i]
        if cost >= best:
            continue
        succ = [0] * G.n
        for i, (u, v, _) in enumerate(edges):
            if not removed >> i & 1:
                succ[u] |= 1 << v
        if all(not (_reach(succ, s) >> t & 1) for s, t in pairs):
            best = cost
    return best


def _reach(succ: list[int], s: int) -> int:
    seen = 1 << s
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= succ[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def directed_groupcut(G: WeightedGraph, A: Iterable[int], B: Iterable[int]) -> int:
    """Directed (A->B)-cut value by one max-flow from a super-source to a super-sink."""
    A, B = set(A), set(B)
    if A & B:
        raise ContractViolation("A and B intersect")
    big = G.total_weight + 1
    s, t = G.n, G.n + 1
    edges = list(G.edges) + [(s, a, big) for a in sorted(A)] + [(b, t, big) for b in sorted(B)]
    H = WeightedGraph.from_edges(G.n + 2, edges, directed=True)
    return st_mincut(H, s, t).value

