"""Demand-graph families, distinct-value counts and redundancy factors."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Sequence

from .errors import ContractViolation
from .graph import DemandGraph, WeightedGraph
from .solvers import CutResult, solve

KINDS = ("groupcut", "multiway", "multicut")


@dataclass(frozen=True)
class InstanceFamily:
    """``groupcut`` (params ``(alpha, beta)``), ``multiway`` (``(k,)``) or ``multicut`` (``(k,)``).

    ``terminals=None`` means all vertices of whatever graph the family is
    applied to.  ``exact_sizes=False`` turns ``|A| = alpha`` into
    ``1 <= |A| <= alpha`` (group-cut only).
    """

    kind: str
    params: tuple[int, ...]
    terminals: tuple[int, ...] | None = None
    exact_sizes: bool = True

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ContractViolation(f"unknown family kind {self.kind!r}")
        want = 2 if self.kind == "groupcut" else 1
        if len(self.params) != want:
            raise ContractViolation(f"{self.kind} takes {want} parameter(s), got {self.params}")
        if self.kind == "groupcut" and min(self.params) < 1:
            raise ContractViolation("group-cut sizes must be >= 1")
        if self.kind == "multiway" and self.k < 2:
            raise ContractViolation("multiway needs k >= 2")
        if self.kind == "multicut" and self.k < 1:
            raise ContractViolation("multicut needs k >= 1")
        if self.terminals is not None:
            object.__setattr__(self, "terminals", tuple(sorted(set(self.terminals))))

    @property
    def alpha(self) -> int:
        return self.params[0]

    @property
    def beta(self) -> int:
        return self.params[1]

    @property
    def k(self) -> int:
        return self.params[0]

    @property
    def exponent(self) -> int:
        """Degree of the |T|-polynomial bounding the number of distinct values."""
        if self.kind == "groupcut":
            return self.alpha + self.beta - 1
        if self.kind == "multiway":
            return self.k - 1
        return self.k

    def over(self, terminals: Sequence[int]) -> "InstanceFamily":
        return InstanceFamily(self.kind, self.params, tuple(terminals), self.exact_sizes)

    def resolve(self, G: WeightedGraph) -> "InstanceFamily":
        if self.terminals is not None:
            if any(not 0 <= v < G.n for v in self.terminals):
                raise ContractViolation(f"terminals {self.terminals} out of range for n={G.n}")
            return self
        return self.over(range(G.n))

    def contains(self, D: DemandGraph) -> bool:
        T = set(self.terminals or ())
        if not D.vertices() <= T:
            return False
        if self.kind == "groupcut":
            if D.kind != "bipartite":
                return False
            sizes = (len(D.A), len(D.B))
            return any(self._size_ok(a, b) for a, b in (sizes, sizes[::-1]))
        if self.kind == "multiway":
            return D.kind == "clique" and len(D.A) == self.k
        return len(D.pairs) == self.k and not D.directed

    def _size_ok(self, a: int, b: int) -> bool:
        if self.exact_sizes:
            return (a, b) == (self.alpha, self.beta)
        return 1 <= a <= self.alpha and 1 <= b <= self.beta

    def __str__(self) -> str:
        tag = ",".join(map(str, self.params))
        return f"{self.kind}:{tag}" + ("" if self.exact_sizes else ":le")


def parse_family(text: str) -> InstanceFamily:
    """``groupcut:2,1``, ``multiway:3``, ``multicut:2``; a trailing ``:le`` selects ``<=`` sizes."""
    parts = text.strip().split(":")
    if len(parts) not in (2, 3) or (len(parts) == 3 and parts[2] != "le"):
        raise ContractViolation(f"malformed family {text!r}")
    try:
        params = tuple(int(p) for p in parts[1].split(","))
    except ValueError:
        raise ContractViolation(f"malformed family parameters in {text!r}") from None
    return InstanceFamily(parts[0].lower(), params, exact_sizes=len(parts) == 2)


def GroupCut(alpha: int, beta: int, terminals=None, exact_sizes: bool = True) -> InstanceFamily:
    return InstanceFamily("groupcut", (alpha, beta), None if terminals is None else tuple(terminals), exact_sizes)


def Multiway(k: int, terminals=None) -> InstanceFamily:
    return InstanceFamily("multiway", (k,), None if terminals is None else tuple(terminals))


def Multicut(k: int, terminals=None) -> InstanceFamily:
    return InstanceFamily("multicut", (k,), None if terminals is None else tuple(terminals))


# ---------------------------------------------------------------------------
# enumeration


def _group_pairs(T: Sequence[int], sizes: Sequence[tuple[int, int]]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    # K_{A,B} and K_{B,A} are one demand graph; keep the first orientation met
    seen = set()
    for a, b in sizes:
        for A in combinations(T, a):
            rest = [v for v in T if v not in A]
            for B in combinations(rest, b):
                key = frozenset((A, B))
                if key in seen:
                    continue
                seen.add(key)
                yield A, B


def _group_sizes(fam: InstanceFamily) -> list[tuple[int, int]]:
    if fam.exact_sizes:
        return [(fam.alpha, fam.beta)]
    return [(a, b) for a in range(1, fam.alpha + 1) for b in range(1, fam.beta + 1)]


def enumerate_family(family: InstanceFamily) -> Iterator[DemandGraph]:
    """Every demand graph of the family exactly once, in lexicographic order.

    Group-cut instances are distinct demand graphs, so for ``alpha == beta``
    the pair (A,B) and its swap are emitted once.
    """
    if family.terminals is None:
        raise ContractViolation("family has no terminal set; call resolve(G) or over(T) first")
    T = family.terminals
    t = len(T)
    if family.kind == "groupcut":
        if family.alpha + family.beta > t:
            raise ContractViolation(f"alpha + beta = {family.alpha + family.beta} exceeds |T| = {t}")
        for A, B in _group_pairs(T, _group_sizes(family)):
            yield DemandGraph.bipartite(A, B)
    elif family.kind == "multiway":
        if family.k > t:
            raise ContractViolation(f"k = {family.k} exceeds |T| = {t}")
        for S in combinations(T, family.k):
            yield DemandGraph.clique(S)
    else:
        if family.k > comb(t, 2):
            raise ContractViolation(f"k = {family.k} exceeds C(|T|,2) = {comb(t, 2)}")
        for pairs in combinations(combinations(T, 2), family.k):
            yield DemandGraph.explicit(pairs)


def family_size(family: InstanceFamily) -> int:
    t = len(family.terminals)
    if family.kind == "groupcut":
        if family.exact_sizes:
            total = comb(t, family.alpha) * comb(t - family.alpha, family.beta)
            return total // 2 if family.alpha == family.beta else total
        return sum(1 for _ in _group_pairs(family.terminals, _group_sizes(family)))
    if family.kind == "multiway":
        return comb(t, family.k)
    return comb(comb(t, 2), family.k)


# ---------------------------------------------------------------------------
# bounds and reports


def theoretical_upper_bound(family: InstanceFamily, t: int) -> int:
    """Upper bound on the number of distinct mincut values over ``t`` terminals.

    Group-cut: the number of distinct demand graphs K_{A,B} with
    ``1 <= |A| <= alpha``, ``1 <= |B| <= beta`` that contain a fixed vertex
    v0, counted by enumeration (these rows span the agreement matrix, so they
    bound its rank).  Multiway: ``C(t-1, k-1)``.  Multicut: ``C(t+k, k)``.
    """
    if family.kind == "groupcut":
        sizes = [(a, b) for a in range(1, family.alpha + 1) for b in range(1, family.beta + 1)]
        return sum(1 for A, B in _group_pairs(range(t), sizes) if 0 in A or 0 in B)
    if family.kind == "multiway":
        return comb(t - 1, family.k - 1)
    return comb(t + family.k, family.k)


@dataclass(frozen=True)
class RedundancyReport:
    family: InstanceFamily
    instance_count: int
    distinct_values: tuple[int, ...]
    theoretical_bound: int
    results: tuple[tuple[DemandGraph, CutResult], ...] = field(default=(), repr=False, compare=False)

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_values)

    @property
    def redundancy_factor(self) -> Fraction:
        if not self.distinct_values:
            return Fraction(0)
        return Fraction(self.instance_count, len(self.distinct_values))

    def within_bound(self) -> bool:
        return self.distinct_count <= self.theoretical_bound

    def csv_row(self) -> list:
        return [self.instance_count, self.distinct_count, float(self.redundancy_factor), self.theoretical_bound]


CSV_HEADER = ["instances", "distinct", "redundancy_factor", "theoretical_bound"]


def to_csv(reports: Sequence[RedundancyReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(r.csv_row())
    return buf.getvalue()


def _solve_one(args):
    G, D = args
    return solve(G, D)


def solve_family(G: WeightedGraph, family: InstanceFamily, jobs: int = 1) -> list[tuple[DemandGraph, CutResult]]:
    family = family.resolve(G)
    demands = list(enumerate_family(family))
    if jobs <= 1:
        results = [solve(G, D) for D in demands]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_solve_one, [(G, D) for D in demands], chunksize=16))
    return list(zip(demands, results))


def analyze(G: WeightedGraph, family: InstanceFamily, jobs: int = 1) -> RedundancyReport:
    family = family.resolve(G)
    results = solve_family(G, family, jobs)
    distinct = tuple(sorted({r.value for _, r in results}))
    return RedundancyReport(
        family=family,
        instance_count=len(results),
        distinct_values=distinct,
        theoretical_bound=theoretical_upper_bound(family, len(family.terminals)),
        results=tuple(results),
    )
