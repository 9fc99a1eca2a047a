"""Flow-equivalent trees by the classic contraction-based Gomory-Hu method."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .errors import ContractViolation
from .graph import Partition, WeightedGraph, quotient
from .solvers import st_mincut


@dataclass(frozen=True)
class GHTree:
    n: int
    edges: tuple[tuple[int, int, int], ...]

    def as_graph(self) -> WeightedGraph:
        return WeightedGraph.from_edges(self.n, self.edges)

    def _path(self, s: int, t: int) -> list[tuple[int, int, int]]:
        adj: dict[int, list[tuple[int, int, int]]] = {v: [] for v in range(self.n)}
        for e in self.edges:
            adj[e[0]].append(e)
            adj[e[1]].append(e)
        prev: dict[int, tuple[int, int, int] | None] = {s: None}
        stack = [s]
        while stack:
            u = stack.pop()
            for e in adj[u]:
                v = e[1] if e[0] == u else e[0]
                if v not in prev:
                    prev[v] = e
                    stack.append(v)
        path = []
        v = t
        while prev[v] is not None:
            e = prev[v]
            path.append(e)
            v = e[0] if e[1] == v else e[1]
        return path

    def cut_partition(self, s: int, t: int) -> Partition:
        """Split obtained by deleting the lightest edge on the s-t tree path.

        Best effort: the contraction construction makes this a minimum s-t
        cut of the source graph as well, but only values are guaranteed.
        """
        lightest = min(self._path(s, t), key=lambda e: e[2])
        rest = tuple(e for e in self.edges if e != lightest)
        side = _reachable(self.n, rest, s)
        return Partition.from_sides(self.n, side)


def _reachable(n: int, edges, s: int) -> set[int]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v, _ in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {s}
    stack = [s]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def build_gh_tree(G: WeightedGraph) -> GHTree:
    """Gomory-Hu tree from ``n - 1`` minimum s-t cuts on contracted graphs.

    Supernodes start as ``{V}``.  Each step picks a supernode X with two
    vertices s, t, contracts every subtree hanging off X to a single vertex,
    splits X by a minimum s-t cut, and reattaches each subtree to the side its
    contracted vertex fell on.
    """
    if G.directed:
        raise ContractViolation("flow-equivalent trees do not exist for directed graphs in general")
    if G.n <= 1:
        return GHTree(G.n, ())
    members: list[list[int]] = [list(range(G.n))]
    tree: list[dict[int, int]] = [{}]  # supernode -> {neighbour supernode: weight}
    while True:
        x = next((i for i, mem in enumerate(members) if len(mem) >= 2), None)
        if x is None:
            break
        s, t = members[x][0], members[x][1]
        labels = [-1] * G.n
        for i, v in enumerate(members[x]):
            labels[v] = i
        nxt = len(members[x])
        hanging: dict[int, int] = {}  # neighbour supernode -> label of its contracted subtree
        for nb in sorted(tree[x]):
            for node in _subtree(tree, nb, x):
                for v in members[node]:
                    labels[v] = nxt
            hanging[nb] = nxt
            nxt += 1
        res = st_mincut(quotient(G, labels), labels[s], labels[t])
        side = res.partition.labels
        s_block = side[labels[s]]
        xs = [v for v in members[x] if side[labels[v]] == s_block]
        xt = [v for v in members[x] if side[labels[v]] != s_block]
        y = len(members)
        members[x] = xs
        members.append(xt)
        tree.append({})
        for nb, lab in hanging.items():
            if side[lab] != s_block:
                w = tree[x].pop(nb)
                del tree[nb][x]
                tree[y][nb] = w
                tree[nb][y] = w
        tree[x][y] = res.value
        tree[y][x] = res.value
    edges = []
    for a, nbrs in enumerate(tree):
        for b, w in nbrs.items():
            if a < b:
                u, v = members[a][0], members[b][0]
                edges.append((min(u, v), max(u, v), w))
    return GHTree(G.n, tuple(sorted(edges)))


def _subtree(tree: list[dict[int, int]], root: int, banned: int) -> list[int]:
    out = [root]
    stack = [root]
    seen = {root, banned}
    while stack:
        for nb in tree[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                out.append(nb)
                stack.append(nb)
    return out


def tree_mincut(T: GHTree, s: int, t: int) -> int:
    if s == t:
        raise ContractViolation("tree_mincut needs s != t")
    return min(w for _, _, w in T._path(s, t))


def distinct_pair_values(G: WeightedGraph) -> tuple[int, Counter]:
    """Number of distinct minimum s-t cut values over all pairs, plus their multiplicities."""
    values = Counter(st_mincut(G, s, t).value for s, t in combinations(range(G.n), 2))
    return len(values), values
