"""Executable rank certificates for the distinct-value upper bounds.

Two matrix families over GF(2):

* agreement matrices (rows = demand graphs, columns = partitions, entry 1 iff
  the partition agrees with the demand graph) together with the explicit
  XOR identity showing that rows through a fixed vertex ``v0`` span all rows;
* polynomial evaluation matrices, one row per demand graph in strictly
  increasing mincut order, whose full row rank certifies that the
  associated polynomials are linearly independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

import numpy as np

from .errors import ContractViolation, GuardRefusal
from .gf2 import gf2_rank, pack_bits
from .graph import DemandGraph, Partition, WeightedGraph, agrees
from .partitions import bipartitions, partitions_into, set_partitions, stirling2
from .solvers import ORACLE_MAX_N, solve

GROUP_MATRIX_MAX_N = 16
MULTIWAY_MAX_COLUMNS = 10**6


@dataclass
class GF2Matrix:
    kind: str  # "group" or "multiway"
    params: tuple[int, ...]
    n: int
    rows: list[int]
    row_labels: list[tuple]
    col_labels: list[Partition]
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {lab: i for i, lab in enumerate(self.row_labels)}

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.col_labels)

    def row(self, label) -> int:
        return self.rows[self._index[label]]

    def entry(self, label, col: int) -> int:
        return self.row(label) >> col & 1

    def rank(self) -> int:
        return gf2_rank(self.rows)

    def spanning_labels(self, v0: int) -> list[tuple]:
        """Labels of the rows through ``v0`` (the set whose rows span the matrix)."""
        if self.kind == "group":
            return [lab for lab in self.row_labels if v0 in lab[0] or v0 in lab[1]]
        return [lab for lab in self.row_labels if v0 in lab]


def _agreement_row(cols: np.ndarray, pairs) -> int:
    mask = np.ones(len(cols), dtype=bool)
    for u, v in pairs:
        mask &= cols[:, u] != cols[:, v]
    return pack_bits(mask)


def build_group_matrix(n: int, alpha: int, beta: int) -> GF2Matrix:
    """Rows: ordered disjoint (A, B) with ``1 <= |A| <= alpha``, ``1 <= |B| <= beta``.
    Columns: the ``2^(n-1) - 1`` unordered 2-block partitions, canonical order."""
    if n > GROUP_MATRIX_MAX_N:
        raise GuardRefusal(f"group matrix materialises 2^{n - 1} columns; guard is n <= {GROUP_MATRIX_MAX_N}")
    if alpha < 1 or beta < 1:
        raise ContractViolation("alpha and beta must be >= 1")
    cols = bipartitions(n)
    labels, rows = [], []
    V = range(n)
    for a in range(1, alpha + 1):
        for A in combinations(V, a):
            rest = [v for v in V if v not in A]
            for b in range(1, beta + 1):
                for B in combinations(rest, b):
                    labels.append((A, B))
                    rows.append(_agreement_row(cols, [(x, y) for x in A for y in B]))
    order = sorted(range(len(labels)), key=lambda i: (len(labels[i][0]), len(labels[i][1]), labels[i]))
    return GF2Matrix(
        "group",
        (alpha, beta),
        n,
        [rows[i] for i in order],
        [labels[i] for i in order],
        [Partition(tuple(c.tolist())) for c in cols],
    )


def build_multiway_matrix(n: int, k: int) -> GF2Matrix:
    """Rows: all ``k``-subsets A.  Columns: all partitions into exactly ``k`` blocks."""
    if k < 2 or k > n:
        raise ContractViolation(f"need 2 <= k <= n, got k={k}, n={n}")
    if stirling2(n, k) > MULTIWAY_MAX_COLUMNS or n > ORACLE_MAX_N:
        raise GuardRefusal(f"S({n},{k}) = {stirling2(n, k)} columns exceeds the guard")
    cols = partitions_into(n, k)
    labels = list(combinations(range(n), k))
    rows = [_agreement_row(cols, list(combinations(A, 2))) for A in labels]
    return GF2Matrix("multiway", (k,), n, rows, labels, [Partition(tuple(c.tolist())) for c in cols])


def _proper_subsets(s: tuple[int, ...]):
    for r in range(len(s)):
        yield from combinations(s, r)


def check_span(M: GF2Matrix, v0: int) -> tuple[bool, tuple | None]:
    """Verify that each row avoiding ``v0`` is the XOR of rows through ``v0``.

    Group: row(A,B) = sum over proper A' of row(v0+A', B) + sum over proper B'
    of row(A, B'+v0).  Multiway: row(A) = sum over a in A of row(A - a + v0).
    Returns ``(True, None)`` or ``(False, first failing row label)``.
    """
    if not 0 <= v0 < M.n:
        raise ContractViolation(f"v0 = {v0} out of range")
    for lab in M.row_labels:
        acc = M.row(lab)
        if M.kind == "group":
            A, B = lab
            if v0 in A or v0 in B:
                continue
            for sub in _proper_subsets(A):
                acc ^= M.row((tuple(sorted(sub + (v0,))), B))
            for sub in _proper_subsets(B):
                acc ^= M.row((A, tuple(sorted(sub + (v0,)))))
        else:
            if v0 in lab:
                continue
            for a in lab:
                acc ^= M.row(tuple(sorted([x for x in lab if x != a] + [v0])))
        if acc:
            return False, lab
    return True, None


# ---------------------------------------------------------------------------
# polynomial evaluation matrices


@dataclass
class PolyEvalMatrix:
    kind: str  # "group" (columns: 2-partitions) or "multicut" (columns: all partitions)
    demands: list[DemandGraph]
    values: list[int]
    rows: list[int]
    columns: np.ndarray = field(repr=False)

    def rank(self) -> int:
        return gf2_rank(self.rows)


def group_poly_row(cols: np.ndarray, D: DemandGraph) -> int:
    """Evaluate prod_b (phi_a* - phi_b) * prod_{a != a*} (phi_a - phi_b*) over GF(2)
    at every 0/1 column vector; anchors are a* = min A, b* = min B."""
    a_star, b_star = min(D.A), min(D.B)
    val = np.ones(len(cols), dtype=bool)
    for b in sorted(D.B):
        val &= (cols[:, a_star] ^ cols[:, b]).astype(bool)
    for a in sorted(D.A - {a_star}):
        val &= (cols[:, a] ^ cols[:, b_star]).astype(bool)
    return pack_bits(val)


def multicut_poly_row(cols: np.ndarray, D: DemandGraph) -> int:
    """Evaluate prod over demand pairs of (phi_u - phi_v), each factor taken as the
    GF(2) indicator that u and v lie in different blocks."""
    val = np.ones(len(cols), dtype=bool)
    for u, v in D.pairs:
        val &= cols[:, u] != cols[:, v]
    return pack_bits(val)


def build_poly_eval_matrix(G: WeightedGraph, demands: Sequence[DemandGraph], values: Sequence[int] | None = None) -> PolyEvalMatrix:
    """One evaluation row per demand graph; mincut values must strictly increase.

    All-bipartite input is evaluated over 2-block partitions, anything else
    over all partitions.  ``values`` may be passed to skip re-solving.
    """
    demands = list(demands)
    if values is None:
        values = [solve(G, D).value for D in demands]
    values = list(values)
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ContractViolation(f"mincut values must be strictly increasing, got {values}")
    if demands and all(D.kind == "bipartite" for D in demands):
        if G.n > GROUP_MATRIX_MAX_N:
            raise GuardRefusal(f"n = {G.n} exceeds the 2-partition guard {GROUP_MATRIX_MAX_N}")
        cols = bipartitions(G.n)
        return PolyEvalMatrix("group", demands, values, [group_poly_row(cols, D) for D in demands], cols)
    if G.n > ORACLE_MAX_N:
        raise GuardRefusal(f"n = {G.n} exceeds the partition guard {ORACLE_MAX_N}")
    cols = set_partitions(G.n)
    return PolyEvalMatrix("multicut", demands, values, [multicut_poly_row(cols, D) for D in demands], cols)


def check_independence(M: PolyEvalMatrix) -> bool:
    return M.rank() == len(M.rows)


def increasing_demands(results) -> tuple[list[DemandGraph], list[int]]:
    """Pick the first demand graph attaining each distinct value, sorted by value."""
    first: dict[int, DemandGraph] = {}
    for D, res in results:
        first.setdefault(res.value, D)
    vals = sorted(first)
    return [first[v] for v in vals], vals


# ---------------------------------------------------------------------------
# feasibility equivalence


def _bits(row: int, count: int) -> list[int]:
    return [row >> c & 1 for c in range(count)]


def check_feasibility(n: int, max_pairs: int = 3) -> tuple[bool, tuple | None]:
    """Exhaustively check "nonzero iff the partition agrees with D" on ``n`` vertices.

    Covers the group polynomial over 2-partitions for every disjoint nonempty
    (A, B), the multicut polynomial over all partitions for every set of at
    most ``max_pairs`` pairs, and every entry of the agreement matrices with
    ``alpha, beta <= 2`` and ``k <= 3``.  Returns the first counterexample
    as ``(what, demand, partition)``.
    """
    if n > 8:
        raise GuardRefusal(f"exhaustive feasibility check is limited to n <= 8, got {n}")
    bip = bipartitions(n)
    bip_parts = [Partition(tuple(int(x) for x in r)) for r in bip]
    allp = set_partitions(n)
    all_parts = [Partition(tuple(int(x) for x in r)) for r in allp]
    V = range(n)

    def compare(what, D, row, parts):
        for P, bit in zip(parts, _bits(row, len(parts))):
            if bool(bit) != agrees(P, D):
                return what, D, P
        return None

    for code in product(range(3), repeat=n):
        A = [v for v in V if code[v] == 1]
        B = [v for v in V if code[v] == 2]
        if A and B:
            D = DemandGraph.bipartite(A, B)
            bad = compare("group polynomial", D, group_poly_row(bip, D), bip_parts)
            if bad:
                return False, bad
    pairs = list(combinations(V, 2))
    for k in range(1, max_pairs + 1):
        for chosen in combinations(pairs, k):
            D = DemandGraph.explicit(chosen)
            bad = compare("multicut polynomial", D, multicut_poly_row(allp, D), all_parts)
            if bad:
                return False, bad
    for alpha in (1, 2):
        for beta in (1, 2):
            if alpha + beta > n:
                continue
            M = build_group_matrix(n, alpha, beta)
            for (A, B), row in zip(M.row_labels, M.rows):
                bad = compare("group matrix entry", DemandGraph.bipartite(A, B), row, M.col_labels)
                if bad:
                    return False, bad
    for k in range(2, min(3, n) + 1):
        M = build_multiway_matrix(n, k)
        for S, row in zip(M.row_labels, M.rows):
            bad = compare("multiway matrix entry", DemandGraph.clique(S), row, M.col_labels)
            if bad:
                return False, bad
    return True, None
