"""Cut-evaluation schemes: a sorted list of (value, partition of T) entries.

Preprocessing solves every family instance on the perturbed graph, so that
each optimal value is attained by one crossing-edge set F, and stores one entry
per distinct perturbed value: the value and the partition of T induced by the
components of G - F.  A query scans the list and answers with the
first entry whose partition agrees with the demand graph; it never touches
the graph.

Binary format (big-endian)::

    b"CUTS" | version u8 | kind u8 | exact u8 | p0 u16 | p1 u16
    | n u32 | |T| u32 | T ids u32 * |T| | modulus u32 | code_bits u8
    | len(W) u16 | W bytes | q u32
    | q * ( len(value) u16 | value bytes | packed partition codes )

Partition codes take ``code_bits`` bits per terminal (1 when every stored
partition has at most two blocks),
packed into ``ceil(|T| * code_bits / 8)`` bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

from .errors import ContractViolation, DomainError, OracleInconsistent
from .families import KINDS, InstanceFamily, enumerate_family
from .graph import DemandGraph, Partition, WeightedGraph, canonical_labels, finest_partition, perturb_weights, quotient
from .solvers import multiway, solve

MAGIC = b"CUTS"
VERSION = 1
# |T|, q, family descriptor and code width
METADATA_BITS = 64
# storage_bits <= STORAGE_C * |T|^e * (|T| + ceil(log2(W + 1))), e the family exponent
STORAGE_C = 16


@dataclass(frozen=True)
class SchemeEntry:
    value: int
    labels: tuple[int, ...]  # canonical block labels, one per terminal in T order

    @property
    def parts(self) -> int:
        return max(self.labels) + 1 if self.labels else 0


@dataclass(frozen=True)
class EvaluationScheme:
    family: InstanceFamily
    entries: tuple[SchemeEntry, ...]
    n: int
    total_weight: int
    modulus: int

    @property
    def terminals(self) -> tuple[int, ...]:
        return self.family.terminals

    @property
    def code_bits(self) -> int:
        parts = max((e.parts for e in self.entries), default=1)
        return max(1, (parts - 1).bit_length())


def build_scheme(G: WeightedGraph, family: InstanceFamily, terminals=None) -> EvaluationScheme:
    if G.directed:
        raise ContractViolation("schemes are built on undirected graphs")
    if terminals is not None:
        family = family.over(terminals)
    family = family.resolve(G)
    T = family.terminals
    Gp = perturb_weights(G)
    by_key: dict[int, tuple[int, ...]] = {}
    for D in enumerate_family(family):
        res = solve(Gp, D)
        # components of G minus the crossing edges: a function of the edge set
        # alone, and it agrees with D exactly when that edge set separates D
        part = finest_partition(Gp, res.partition)
        labels = canonical_labels(part.labels[v] for v in T)
        old = by_key.setdefault(res.value, labels)
        if old != labels:
            raise OracleInconsistent(f"perturbed value {res.value} attained by two different partitions of T")
    entries = tuple(SchemeEntry(key >> G.m, by_key[key]) for key in sorted(by_key))
    return EvaluationScheme(family, entries, G.n, G.total_weight, G.m)


def _positions(scheme: EvaluationScheme, D: DemandGraph) -> list[tuple[int, int]]:
    if not scheme.family.contains(D):
        raise DomainError(f"demand graph {D} is not in family {scheme.family} over T={list(scheme.terminals)}")
    index = {v: i for i, v in enumerate(scheme.terminals)}
    return [(index[u], index[v]) for u, v in D.pairs]


def _scan(scheme: EvaluationScheme, D: DemandGraph) -> SchemeEntry:
    pairs = _positions(scheme, D)
    for entry in scheme.entries:
        lab = entry.labels
        if all(lab[a] != lab[b] for a, b in pairs):
            return entry
    raise OracleInconsistent(f"no stored partition agrees with {D}")


def query_value(scheme: EvaluationScheme, D: DemandGraph) -> int:
    return _scan(scheme, D).value


def query_partition(scheme: EvaluationScheme, D: DemandGraph) -> Partition:
    """Partition of the terminals (position ``i`` is ``scheme.terminals[i]``) attaining the value."""
    return Partition(_scan(scheme, D).labels)


def lift_partition(G: WeightedGraph, terminals, P: Partition) -> Partition:
    """Cheapest extension of a partition of T to all of V (exact multiway on the T-blocks)."""
    terminals = list(terminals)
    if P.n != len(terminals):
        raise ContractViolation("partition size does not match the terminal set")
    labels = [-1] * G.n
    for v, b in zip(terminals, P.labels):
        labels[v] = b
    nxt = P.part_count
    for v in range(G.n):
        if labels[v] < 0:
            labels[v] = nxt
            nxt += 1
    if P.part_count < 2:
        return Partition((0,) * G.n)
    res = multiway(quotient(G, labels), range(P.part_count))
    return Partition(tuple(res.partition.labels[labels[v]] for v in range(G.n)))


# ---------------------------------------------------------------------------
# storage accounting


def storage_bits(scheme: EvaluationScheme) -> int:
    t = len(scheme.terminals)
    cb = scheme.code_bits
    return METADATA_BITS + sum(t * cb + e.value.bit_length() for e in scheme.entries)


def storage_bound(scheme: EvaluationScheme) -> int:
    t = len(scheme.terminals)
    return STORAGE_C * t**scheme.family.exponent * (t + scheme.total_weight.bit_length())


# ---------------------------------------------------------------------------
# serialization


def _int_bytes(x: int) -> bytes:
    return x.to_bytes(max(1, (x.bit_length() + 7) // 8), "big")


def dumps(scheme: EvaluationScheme) -> bytes:
    fam = scheme.family
    p = fam.params + (0,) * (2 - len(fam.params))
    T = scheme.terminals
    cb = scheme.code_bits
    out = bytearray(MAGIC)
    out += struct.pack(">BBBHH", VERSION, KINDS.index(fam.kind), int(fam.exact_sizes), *p)
    out += struct.pack(">II", scheme.n, len(T))
    out += struct.pack(f">{len(T)}I", *T)
    out += struct.pack(">IB", scheme.modulus, cb)
    w = _int_bytes(scheme.total_weight)
    out += struct.pack(">H", len(w)) + w
    out += struct.pack(">I", len(scheme.entries))
    width = (len(T) * cb + 7) // 8
    for e in scheme.entries:
        v = _int_bytes(e.value)
        out += struct.pack(">H", len(v)) + v
        code = 0
        for i, b in enumerate(e.labels):
            code |= b << (i * cb)
        out += code.to_bytes(width, "big")
    return bytes(out)


def loads(data: bytes) -> EvaluationScheme:
    if data[:4] != MAGIC:
        raise ContractViolation("not a scheme file (bad magic)")
    pos = 4
    version, kind, exact, p0, p1 = struct.unpack_from(">BBBHH", data, pos)
    pos += 7
    if version != VERSION:
        raise ContractViolation(f"unsupported scheme version {version}")
    n, t = struct.unpack_from(">II", data, pos)
    pos += 8
    T = struct.unpack_from(f">{t}I", data, pos)
    pos += 4 * t
    modulus, cb = struct.unpack_from(">IB", data, pos)
    pos += 5
    (wl,) = struct.unpack_from(">H", data, pos)
    pos += 2
    W = int.from_bytes(data[pos : pos + wl], "big")
    pos += wl
    (q,) = struct.unpack_from(">I", data, pos)
    pos += 4
    width = (t * cb + 7) // 8
    mask = (1 << cb) - 1
    entries = []
    for _ in range(q):
        (vl,) = struct.unpack_from(">H", data, pos)
        pos += 2
        value = int.from_bytes(data[pos : pos + vl], "big")
        pos += vl
        code = int.from_bytes(data[pos : pos + width], "big")
        pos += width
        entries.append(SchemeEntry(value, tuple(code >> (i * cb) & mask for i in range(t))))
    name = KINDS[kind]
    params = (p0, p1) if name == "groupcut" else (p0,)
    family = InstanceFamily(name, params, T, bool(exact))
    return EvaluationScheme(family, tuple(entries), n, W, modulus)


def save(scheme: EvaluationScheme, path) -> None:
    Path(path).write_bytes(dumps(scheme))


def load(path) -> EvaluationScheme:
    return loads(Path(path).read_bytes())
