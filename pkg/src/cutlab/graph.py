"""Graph, partition and demand-graph primitives.

Vertices are the integers ``0..n-1``.  Weights are non-negative Python
integers, so sums never overflow no matter how large the perturbed or
power-of-two weights get.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ContractViolation, GraphParseError

Edge = tuple[int, int, int]


@dataclass(frozen=True)
class WeightedGraph:
    """Simple weighted graph; parallel edges are merged by :meth:`from_edges`.

    Undirected edges are stored with ``u < v``.  Edge order is load order
    (first occurrence), which is what :func:`perturb_weights` indexes.
    """

    n: int
    edges: tuple[Edge, ...] = ()
    directed: bool = False

    def __post_init__(self):
        if self.n < 0:
            raise ContractViolation(f"vertex count must be non-negative, got {self.n}")
        seen = set()
        for u, v, w in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ContractViolation(f"edge ({u},{v}) out of range for n={self.n}")
            if u == v:
                raise ContractViolation(f"self-loop at vertex {u}")
            if not isinstance(w, int) or isinstance(w, bool):
                raise ContractViolation(f"edge ({u},{v}) weight {w!r} is not an integer")
            if w < 0:
                raise ContractViolation(f"edge ({u},{v}) has negative weight {w}")
            if not self.directed and u > v:
                raise ContractViolation("undirected edges must be stored with u < v; use from_edges")
            if (u, v) in seen:
                raise ContractViolation(f"duplicate edge ({u},{v}); use from_edges to merge")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], directed: bool = False) -> "WeightedGraph":
        merged: dict[tuple[int, int], int] = {}
        for u, v, w in edges:
            key = (u, v) if directed or u < v else (v, u)
            merged[key] = merged.get(key, 0) + w
        return cls(n, tuple((u, v, w) for (u, v), w in merged.items()), directed)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def weight(self, u: int, v: int) -> int:
        for a, b, w in self.edges:
            if (a, b) == (u, v) or (not self.directed and (b, a) == (u, v)):
                return w
        return 0

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Neighbour lists ``adj[u] = [(v, w), ...]``; both directions when undirected."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            if not self.directed:
                adj[v].append((u, w))
        return adj


@dataclass(frozen=True, order=True)
class Partition:
    """A partition of ``0..n-1`` stored as canonical block labels.

    Labels are renumbered in order of first occurrence, so two partitions are
    equal iff they have the same blocks, and tuple order gives a total order
    used for tie-breaking.
    """

    labels: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", canonical_labels(self.labels))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int | None = None) -> "Partition":
        blocks = [list(b) for b in blocks]
        size = n if n is not None else sum(len(b) for b in blocks)
        labels = [-1] * size
        for i, block in enumerate(blocks):
            for v in block:
                if not 0 <= v < size or labels[v] != -1:
                    raise ContractViolation(f"vertex {v} is out of range or in two blocks")
                labels[v] = i
        if -1 in labels:
            raise ContractViolation(f"vertex {labels.index(-1)} is in no block")
        return cls(tuple(labels))

    @classmethod
    def from_sides(cls, n: int, side: Iterable[int]) -> "Partition":
        """Two-block partition ``{side, rest}`` (one block if ``side`` is empty or everything)."""
        inside = set(side)
        return cls(tuple(0 if v in inside else 1 for v in range(n)))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def part_count(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.part_count)]
        for v, b in enumerate(self.labels):
            out[b].append(v)
        return out

    def __getitem__(self, v: int) -> int:
        return self.labels[v]

    def __str__(self) -> str:
        return " | ".join(" ".join(map(str, b)) for b in self.blocks())


def canonical_labels(labels: Iterable[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    out = []
    for b in labels:
        if b not in relabel:
            relabel[b] = len(relabel)
        out.append(relabel[b])
    return tuple(out)


@dataclass(frozen=True)
class DemandGraph:
    """Vertex pairs that a cut must separate.

    ``kind`` is ``"bipartite"`` (K_{A,B}), ``"clique"`` (K_S) or
    ``"explicit"``.  Pairs are sorted; undirected pairs are stored ``u < v``.
    """

    pairs: tuple[tuple[int, int], ...]
    kind: str = "explicit"
    A: frozenset[int] = field(default=frozenset())
    B: frozenset[int] = field(default=frozenset())
    directed: bool = False

    def __post_init__(self):
        for u, v in self.pairs:
            if u == v:
                raise ContractViolation(f"demand pair ({u},{u}) is a self-pair")
            if u < 0 or v < 0:
                raise ContractViolation(f"negative vertex in demand pair ({u},{v})")

    @classmethod
    def bipartite(cls, A: Iterable[int], B: Iterable[int], directed: bool = False) -> "DemandGraph":
        A, B = frozenset(A), frozenset(B)
        if A & B:
            raise ContractViolation(f"A and B intersect in {sorted(A & B)}")
        if directed:
            pairs = sorted((a, b) for a in A for b in B)
        else:
            pairs = sorted((min(a, b), max(a, b)) for a in A for b in B)
        return cls(tuple(pairs), "bipartite", A, B, directed)

    @classmethod
    def clique(cls, S: Iterable[int]) -> "DemandGraph":
        S = frozenset(S)
        return cls(tuple(combinations(sorted(S), 2)), "clique", S)

    @classmethod
    def explicit(cls, pairs: Iterable[Sequence[int]], directed: bool = False) -> "DemandGraph":
        norm = set()
        for u, v in pairs:
            if u == v:
                raise ContractViolation(f"demand pair ({u},{u}) is a self-pair")
            norm.add((u, v) if directed or u < v else (v, u))
        return cls(tuple(sorted(norm)), "explicit", directed=directed)

    @property
    def S(self) -> frozenset[int]:
        return self.A if self.kind == "clique" else frozenset()

    def vertices(self) -> set[int]:
        return {x for p in self.pairs for x in p} | set(self.A) | set(self.B)

    def __str__(self) -> str:
        if self.kind == "bipartite":
            return f"K:{_fmt_set(self.A)},{_fmt_set(self.B)}"
        if self.kind == "clique":
            return f"S:{_fmt_set(self.A)}"
        return "P:" + ";".join(f"({u},{v})" for u, v in self.pairs)


def _fmt_set(s: Iterable[int]) -> str:
    return "{" + ",".join(map(str, sorted(s))) + "}"


_SET = r"\{\s*(\d+(?:\s*,\s*\d+)*)?\s*\}"
_PAIR = r"\(\s*(\d+)\s*,\s*(\d+)\s*\)"


def _ints(group: str | None) -> list[int]:
    return [int(x) for x in group.split(",")] if group else []


def parse_demands(text: str, directed: bool = False) -> DemandGraph:
    """Parse ``K:{a,..},{b,..}``, ``S:{..}`` or ``P:(u,v);(x,y)``; inverse of ``str(D)``."""
    body = text.strip()
    tag, _, rest = body.partition(":")
    tag = tag.strip().upper()
    rest = rest.strip()
    if tag == "K":
        m = re.fullmatch(_SET + r"\s*,\s*" + _SET, rest)
        if m and m.group(1) and m.group(2):
            return DemandGraph.bipartite(_ints(m.group(1)), _ints(m.group(2)), directed)
    elif tag == "S":
        m = re.fullmatch(_SET, rest)
        if m and m.group(1):
            return DemandGraph.clique(_ints(m.group(1)))
    elif tag == "P":
        items = [x.strip() for x in rest.split(";") if x.strip()]
        matches = [re.fullmatch(_PAIR, x) for x in items]
        if items and all(matches):
            return DemandGraph.explicit([(int(m.group(1)), int(m.group(2))) for m in matches], directed)
    raise ContractViolation(f"malformed demand literal {text!r}; expected K:{{a,..}},{{b,..}}, S:{{..}} or P:(u,v);(x,y)")


# ---------------------------------------------------------------------------
# file format


def load_graph(text: str | bytes | io.IOBase) -> WeightedGraph:
    """Parse the line format ``n m d`` then ``m`` lines ``u v w``; ``#`` starts a comment."""
    if hasattr(text, "read"):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    edges: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("u", "d"):
                raise GraphParseError(f"malformed header {line!r}, expected 'n m u|d'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphParseError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise GraphParseError("negative vertex or edge count", lineno)
            header = (n, m, parts[2] == "d")
            continue
        if len(parts) != 3:
            raise GraphParseError(f"expected 'u v w', got {line!r}", lineno)
        try:
            u, v, w = (int(p) for p in parts)
        except ValueError:
            raise GraphParseError(f"non-integer field in {line!r}", lineno) from None
        n = header[0]
        for x in (u, v):
            if not 0 <= x < n:
                raise GraphParseError(f"vertex id {x} out of range [0,{n})", lineno)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno)
        if w < 0:
            raise GraphParseError(f"negative weight {w}", lineno)
        edges.append((u, v, w))
    if header is None:
        raise GraphParseError("missing header")
    n, m, directed = header
    if len(edges) != m:
        raise GraphParseError(f"header announces {m} edges, found {len(edges)}")
    return WeightedGraph.from_edges(n, edges, directed)


def dump_graph(G: WeightedGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"{G.n} {G.m} {'d' if G.directed else 'u'}")
    lines.extend(f"{u} {v} {w}" for u, v, w in G.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# cut function and helpers


def cut_value(G: WeightedGraph, P: Partition) -> int:
    """Total weight of edges whose endpoints lie in different blocks (direction ignored)."""
    if P.n != G.n:
        raise ContractViolation(f"partition covers {P.n} vertices, graph has {G.n}")
    lab = P.labels
    return sum(w for u, v, w in G.edges if lab[u] != lab[v])


def agrees(P: Partition, D: DemandGraph) -> bool:
    lab = P.labels
    return all(lab[u] != lab[v] for u, v in D.pairs)


def quotient(G: WeightedGraph, labels: Sequence[int]) -> WeightedGraph:
    """Merge vertices sharing a label; labels must be exactly ``0..k-1``."""
    k = max(labels) + 1 if len(labels) else 0
    merged = []
    for u, v, w in G.edges:
        a, b = labels[u], labels[v]
        if a != b:
            merged.append((a, b, w))
    return WeightedGraph.from_edges(k, merged, G.directed)


def contract(G: WeightedGraph, S: Iterable[int]) -> tuple[WeightedGraph, list[int]]:
    """Merge ``S`` into one super-vertex; returns the graph and the old->new vertex map.

    The super-vertex takes the position of the smallest member of ``S``; the
    other vertices keep their relative order.
    """
    if G.directed:
        raise ContractViolation("contract is defined for undirected graphs")
    S = set(S)
    if not S:
        raise ContractViolation("cannot contract an empty vertex set")
    if not S <= set(range(G.n)):
        raise ContractViolation(f"contraction set {sorted(S)} out of range for n={G.n}")
    rep = min(S)
    mapping = []
    nxt = 0
    for v in range(G.n):
        if v in S and v != rep:
            mapping.append(-1)
            continue
        mapping.append(nxt)
        nxt += 1
    for v in S:
        mapping[v] = mapping[rep]
    return quotient(G, mapping), mapping


def components(G: WeightedGraph, removed: Iterable[tuple[int, int]] = ()) -> list[int]:
    """Connected-component labels (canonical) ignoring direction and the ``removed`` edges."""
    skip = set(removed)
    parent = list(range(G.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in G.edges:
        if (u, v) in skip:
            continue
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    return list(canonical_labels(find(v) for v in range(G.n)))


def is_connected(G: WeightedGraph) -> bool:
    return G.n <= 1 or max(components(G)) == 0


def crossing_edges(G: WeightedGraph, P: Partition) -> list[tuple[int, int]]:
    return [(u, v) for u, v, _ in G.edges if P.labels[u] != P.labels[v]]


def finest_partition(G: WeightedGraph, P: Partition) -> Partition:
    """Components of ``G`` minus the edges ``P`` cuts.

    Has the same crossing edge set (hence the same cut value) as ``P`` and
    refines it, so it agrees with every demand graph ``P`` agrees with.
    """
    return Partition(tuple(components(G, crossing_edges(G, P))))


# ---------------------------------------------------------------------------
# perturbation


def perturb_weights(G: WeightedGraph) -> WeightedGraph:
    """``w'(e_i) = w(e_i) * 2^m + 2^(i-1)`` for edges in load order, ``i = 1..m``.

    In a connected graph the crossing-edge set determines a 2-partition, and
    the low ``m`` bits of a perturbed cut value spell out that set, so all
    2-partitions get pairwise distinct values.
    """
    m = G.m
    edges = tuple((u, v, (w << m) + (1 << i)) for i, (u, v, w) in enumerate(G.edges))
    return WeightedGraph(G.n, edges, G.directed)


def deperturb(value: int, m: int) -> int:
    return value >> m
