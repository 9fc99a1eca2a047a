"""Lower-bound graph families and random test graphs.

Vertex layouts (0-based):

* ``gen_group_lb``: ``s = 0``, then the internal vertices of P_1..P_alpha
  (path-major, left to right), then ``t``, then the internal vertices of
  Q_1..Q_{beta-1}, then ``u = n - 1``.
* ``gen_path_lb``: path ``0 - 1 - ... - n-1``; edge ``e_i = (i-1, i)`` has weight ``2^i``.
* ``gen_matching_lb``: edge ``d_i = (2i-2, 2i-1)`` has weight ``2^i``.
* ``gen_directed_bipartite``: ``X = 0..n-1``, ``Y = n..2n-1``; edge ``x_i -> y_j``
  is the ``(i*n + j + 1)``-th edge and weighs ``2^(i*n + j + 1)``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import ContractViolation
from .families import InstanceFamily, RedundancyReport, analyze
from .graph import DemandGraph, WeightedGraph


@dataclass(frozen=True)
class GroupLayout:
    """Named vertices of a group-cut lower-bound graph."""

    s: int
    t: int
    u: int
    P: tuple[tuple[int, ...], ...]  # internal vertices of each s-t path, left to right
    Q: tuple[tuple[int, ...], ...]  # internal vertices of each t-u path, left to right
    big: int

    def pattern_instances(self):
        """The (A, B) choices that each get a distinct minimum cut: one internal vertex
        per P_i forms A; s plus one internal vertex per Q_j forms B."""
        for picks_a in product(*self.P):
            for picks_b in product(*self.Q):
                yield frozenset(picks_a), frozenset((self.s,) + picks_b)


def group_lb_layout(n: int, alpha: int, beta: int) -> GroupLayout:
    if n < 5 or n % 2 == 0:
        raise ContractViolation(f"group lower bound needs odd n >= 5, got n={n}")
    if alpha < 1 or beta < 2:
        raise ContractViolation(
            f"group lower bound needs alpha >= 1 and beta >= 2 (J has beta-1 paths), got alpha={alpha}, beta={beta}"
        )
    half = (n - 3) // 2
    if half % alpha or half % (beta - 1):
        raise ContractViolation(
            f"(n-3)/2 = {half} must be divisible by alpha = {alpha} and by beta-1 = {beta - 1}"
        )
    lh, lj = half // alpha, half // (beta - 1)
    P = tuple(tuple(range(1 + i * lh, 1 + (i + 1) * lh)) for i in range(alpha))
    t = 1 + half
    Q = tuple(tuple(range(t + 1 + j * lj, t + 1 + (j + 1) * lj)) for j in range(beta - 1))
    return GroupLayout(0, t, n - 1, P, Q, big=0)


def gen_group_lb_with_layout(n: int, alpha: int, beta: int) -> tuple[WeightedGraph, GroupLayout]:
    lay = group_lb_layout(n, alpha, beta)
    finite = []  # (u, v) in path-major order: P_1..P_alpha, then Q_1..Q_{beta-1}
    infinite = []
    for path in lay.P:
        chain = (lay.s,) + path + (lay.t,)
        finite.extend(zip(chain[:-2], chain[1:-1]))
        infinite.append((chain[-2], chain[-1]))
    for path in lay.Q:
        chain = (lay.t,) + path + (lay.u,)
        finite.extend(zip(chain[:-2], chain[1:-1]))
        infinite.append((chain[-2], chain[-1]))
    top = len(finite)
    weights = [1 << (top - i) for i in range(top)]  # 2^top, ..., 2^1: strictly decreasing
    big = 1 + sum(weights)
    edges = [(u, v, w) for (u, v), w in zip(finite, weights)] + [(u, v, big) for u, v in infinite]
    lay = GroupLayout(lay.s, lay.t, lay.u, lay.P, lay.Q, big)
    return WeightedGraph.from_edges(n, edges), lay


def gen_group_lb(n: int, alpha: int, beta: int) -> WeightedGraph:
    """Two bundles of parallel paths glued at ``t`` with power-of-two weights.

    Finite weights strictly decrease along each path away from ``s`` (and
    away from ``t`` in the second bundle), and every weight in the second
    bundle is below every weight in the first.  Edges entering ``t`` (first
    bundle) and ``u`` (second bundle) stand in for infinity with weight
    ``1 + sum of finite weights``.
    """
    return gen_group_lb_with_layout(n, alpha, beta)[0]


def group_lb_expected(n: int, alpha: int, beta: int) -> int:
    half = (n - 3) // 2
    return (half // alpha) ** alpha * (half // (beta - 1)) ** (beta - 1)


def gen_path_lb(n: int) -> WeightedGraph:
    if n < 2:
        raise ContractViolation("path needs n >= 2")
    return WeightedGraph.from_edges(n, [(i - 1, i, 1 << i) for i in range(1, n)])


def gen_matching_lb(n: int) -> WeightedGraph:
    if n < 2 or n % 2:
        raise ContractViolation(f"perfect matching needs even n >= 2, got {n}")
    return WeightedGraph.from_edges(n, [(2 * i - 2, 2 * i - 1, 1 << i) for i in range(1, n // 2 + 1)])


def gen_directed_bipartite(n: int) -> WeightedGraph:
    if n < 1:
        raise ContractViolation("directed bipartite construction needs n >= 1")
    edges = []
    for i in range(n):
        for j in range(n):
            edges.append((i, n + j, 1 << (i * n + j + 1)))
    return WeightedGraph.from_edges(2 * n, edges, directed=True)


def gen_random(n: int, seed: int, p: float = 0.5, wmin: int = 1, wmax: int = 100, connected: bool = True) -> WeightedGraph:
    """Erdos-Renyi style graph; with ``connected`` a random spanning tree is laid down first."""
    rng = random.Random(seed)
    chosen = {}
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            u, v = order[i], order[rng.randrange(i)]
            chosen[(min(u, v), max(u, v))] = rng.randint(wmin, wmax)
    for u, v in combinations(range(n), 2):
        if (u, v) not in chosen and rng.random() < p:
            chosen[(u, v)] = rng.randint(wmin, wmax)
    return WeightedGraph.from_edges(n, [(u, v, w) for (u, v), w in sorted(chosen.items())])


# ---------------------------------------------------------------------------
# verification


@dataclass
class LowerBoundCheck:
    ok: bool
    expected: int
    report: RedundancyReport
    witnesses: dict[int, list[DemandGraph]] = field(default_factory=dict)


def verify_lower_bound(G: WeightedGraph, family: InstanceFamily, expected: int, jobs: int = 1) -> LowerBoundCheck:
    """Check that ``family`` attains at least ``expected`` distinct values on ``G``.

    On failure ``witnesses`` maps each value shared by several instances to
    those instances.
    """
    report = analyze(G, family, jobs)
    ok = report.distinct_count >= expected
    witnesses: dict[int, list[DemandGraph]] = {}
    if not ok:
        groups = defaultdict(list)
        for D, res in report.results:
            groups[res.value].append(D)
        witnesses = {v: ds for v, ds in sorted(groups.items()) if len(ds) > 1}
    return LowerBoundCheck(ok, expected, report, witnesses)
