"""Weight recovery from (2,1)-group-cut values on an adversarial complete graph.

Vertices are numbered ``1..n`` in this module (vertex ``i`` is graph vertex
``i - 1``).  Path edges ``(j, j+1)`` get huge, strictly decreasing weights and
fork edges (all others) get tiny ones, which pins down the minimum cut of
every ``K_{{1,j},{i}}``: it isolates the interval ``{i, ..., j-1}``.  From
such interval cuts every single weight can be solved for, so any structure
answering these queries must encode all ``C(n,2)`` random weights.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .errors import ContractViolation, OracleInconsistent
from .graph import DemandGraph, WeightedGraph

Oracle = Callable[[DemandGraph], int]


@dataclass(frozen=True)
class AdversarialInstance:
    n: int
    seed: int
    weights: dict[tuple[int, int], int]  # (i, j) with 1 <= i < j <= n

    @property
    def path_edges(self) -> list[tuple[int, int]]:
        return [(j, j + 1) for j in range(1, self.n)]

    @property
    def fork_edges(self) -> list[tuple[int, int]]:
        return [e for e in sorted(self.weights) if e[1] != e[0] + 1]

    def w(self, a: int, b: int) -> int:
        return self.weights[(a, b) if a < b else (b, a)]

    def to_graph(self) -> WeightedGraph:
        return WeightedGraph.from_edges(self.n, [(i - 1, j - 1, w) for (i, j), w in sorted(self.weights.items())])

    def check_invariants(self) -> None:
        n = self.n
        n4 = n**4
        for j in range(1, n):
            lo, hi = 2 * (n - j) * n4, (2 * (n - j) + 1) * n4
            if not lo <= self.w(j, j + 1) <= hi:
                raise ContractViolation(f"path edge ({j},{j + 1}) weight outside [{lo},{hi}]")
        forks = self.fork_edges
        if any(not 0 <= self.weights[e] <= n - 1 for e in forks):
            raise ContractViolation("fork weight outside {0..n-1}")
        fork_total = sum(self.weights[e] for e in forks)
        gap = min((self.w(j, j + 1) - self.w(j + 1, j + 2) for j in range(1, n - 1)), default=n4)
        if not fork_total <= n**3 < n4 <= gap:
            raise ContractViolation("fork total does not stay below the path-weight gaps")


def gen_adversarial(n: int, seed: int) -> AdversarialInstance:
    """Path weight ``w(j,j+1)`` uniform in ``[2(n-j)n^4, (2(n-j)+1)n^4]``; fork weights uniform in ``{0..n-1}``."""
    if n < 3:
        raise ContractViolation("the adversarial family needs n >= 3")
    rng = random.Random(seed)
    n4 = n**4
    weights = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if j == i + 1:
                weights[(i, j)] = rng.randint(2 * (n - i) * n4, (2 * (n - i) + 1) * n4)
            else:
                weights[(i, j)] = rng.randint(0, n - 1)
    return AdversarialInstance(n, seed, weights)


def interval_cut(inst: AdversarialInstance, lo: int, hi: int) -> int:
    """Total weight of edges with exactly one endpoint in ``{lo..hi}``."""
    inside = set(range(lo, hi + 1))
    return sum(w for (a, b), w in inst.weights.items() if (a in inside) != (b in inside))


def claim_cut_formula(inst: AdversarialInstance, i: int, j: int) -> int:
    """Closed form of ``mincut(K_{{1,j},{i}})``: the cut around ``{i, ..., j-1}``."""
    if not 1 <= i < j <= inst.n:
        raise ContractViolation(f"need 1 <= i < j <= n, got i={i}, j={j}, n={inst.n}")
    return interval_cut(inst, i, j - 1)


def K(A, B) -> DemandGraph:
    """``K_{A,B}`` over 1-based vertex names."""
    return DemandGraph.bipartite([a - 1 for a in A], [b - 1 for b in B])


def interval_query(n: int, lo: int, hi: int) -> DemandGraph:
    """A (2,1) demand graph whose minimum cut isolates ``{lo..hi}`` (a proper, non-empty interval).

    * ``1 < lo``, ``hi < n``:  ``K_{{1,hi+1},{lo}}``.
    * prefix ``{1..hi}`` with ``hi <= n-2`` (or its complement suffix):
      ``K_{{hi+1,hi+2},{1}}`` -- 1 is cut off at the cheapest edge left of ``hi+1``.
    * ``{1..n-1}`` or ``{n}``: ``K_{{1,2},{n}}`` -- n is cut off at edge ``(n-1, n)``.
    """
    if not (1 <= lo <= hi <= n and (lo, hi) != (1, n)):
        raise ContractViolation(f"[{lo},{hi}] is not a proper interval of 1..{n}")
    if hi == n:  # suffix: same cut as the complementary prefix
        lo, hi = 1, lo - 1
    if lo > 1:
        return K({1, hi + 1}, {lo})
    if hi <= n - 2:
        return K({hi + 1, hi + 2}, {1})
    return K({1, 2}, {n})


def claim_query(n: int, i: int, j: int) -> DemandGraph:
    """The demand graph whose value ``claim_cut_formula(inst, i, j)`` predicts.

    ``K_{{1,j},{i}}`` for ``i > 1``; for ``i = 1`` that graph is degenerate
    and the boundary query for the prefix ``{1..j-1}`` is used instead.
    """
    if not 1 <= i < j <= n:
        raise ContractViolation(f"need 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    return interval_query(n, i, j - 1)


def recover_weights(oracle: Oracle, n: int) -> tuple[dict[tuple[int, int], int], int]:
    """Recover every edge weight from (2,1)-group-cut values; returns ``(weights, query count)``.

    With ``c(I)`` the cut around an interval ``I`` and ``S_k = c({k})``, the
    edges inside ``I`` weigh ``(sum_{k in I} S_k - c(I)) / 2`` in total.  For
    ``I = [i..j]`` all of them except ``(i, j)`` join closer vertices, so by
    induction on ``j - i`` they are known and ``w(i,j)`` is the remainder.
    For ``j = i + 1`` this reads ``w(i,i+1) = (S_i + S_{i+1} - c({i,i+1})) / 2``.
    """
    if n < 3:
        raise ContractViolation("recovery needs n >= 3")
    cache: dict[DemandGraph, int] = {}

    def c(lo: int, hi: int) -> int:
        if (lo, hi) == (1, n):
            return 0
        D = interval_query(n, lo, hi)
        if D not in cache:
            cache[D] = oracle(D)
        return cache[D]

    S = {k: c(k, k) for k in range(1, n + 1)}
    w: dict[tuple[int, int], int] = {}

    def half(x: int, i: int, j: int) -> int:
        if x % 2 or x < 0:
            raise OracleInconsistent(f"internal weight of [{i},{j}] = {x}/2 is not a non-negative integer")
        return x // 2

    for gap in range(1, n):
        for i in range(1, n - gap + 1):
            j = i + gap
            internal = half(sum(S[k] for k in range(i, j + 1)) - c(i, j), i, j)
            # every other edge inside [i..j] spans fewer positions, so is known
            known = sum(w[(a, b)] for a in range(i, j + 1) for b in range(a + 1, j + 1) if (a, b) != (i, j))
            if internal < known:
                raise OracleInconsistent(f"negative weight recovered for ({i},{j})")
            w[(i, j)] = internal - known

    for (lo, hi), value in ((key, c(*key)) for key in _all_intervals(n)):
        inside = set(range(lo, hi + 1))
        if value != sum(x for (a, b), x in w.items() if (a in inside) != (b in inside)):
            raise OracleInconsistent(f"recovered weights do not reproduce the cut around [{lo},{hi}]")
    # one query per unknown, so a wrong but self-consistent oracle shows up only here
    try:
        AdversarialInstance(n, -1, w).check_invariants()
    except ContractViolation as exc:
        raise OracleInconsistent(f"recovered weights are not adversarial: {exc}") from None
    return w, len(cache)


def _all_intervals(n: int):
    return [(lo, hi) for lo in range(1, n + 1) for hi in range(lo, n + 1) if (lo, hi) != (1, n)]
