import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutlab.constructions import gen_directed_bipartite, gen_group_lb, gen_matching_lb, gen_random
from cutlab.errors import ContractViolation, DomainError
from cutlab.families import GroupCut, Multicut, Multiway, enumerate_family
from cutlab.graph import DemandGraph, Partition, agrees, cut_value
from cutlab.schemes import (
    METADATA_BITS,
    build_scheme,
    dumps,
    lift_partition,
    load,
    loads,
    query_partition,
    query_value,
    save,
    storage_bits,
    storage_bound,
)
from cutlab.solvers import mincut_oracle

FAMILIES = [GroupCut(1, 1), GroupCut(2, 1), GroupCut(2, 2), Multiway(2), Multiway(3), Multicut(1), Multicut(2)]


def test_path_scheme(p4):
    sc = build_scheme(p4, GroupCut(1, 1))
    assert [e.value for e in sc.entries] == [2, 4, 8]
    assert query_value(sc, DemandGraph.bipartite([0], [3])) == 2
    assert query_value(sc, DemandGraph.bipartite([2], [3])) == 8
    assert str(query_partition(sc, DemandGraph.bipartite([0], [3]))) == "0 | 1 2 3"
    assert storage_bits(sc) == METADATA_BITS + sum(4 + e.value.bit_length() for e in sc.entries)


def test_triangle_scheme(triangle):
    sc = build_scheme(triangle, GroupCut(1, 1))
    assert [(e.value, e.labels) for e in sc.entries] == [(3, (0, 1, 1)), (4, (0, 1, 0))]
    assert query_value(sc, DemandGraph.bipartite([1], [2])) == 4
    assert query_partition(sc, DemandGraph.bipartite([0], [1])) == Partition.from_blocks([[0], [1, 2]])


def test_group_lower_bound_scheme():
    G = gen_group_lb(7, 1, 2)
    sc = build_scheme(G, GroupCut(1, 2))
    assert len(sc.entries) >= 4
    assert storage_bits(sc) <= storage_bound(sc)


def test_self_consistency(p4):
    sc = build_scheme(p4, GroupCut(1, 1))
    for D in enumerate_family(sc.family):
        entry_labels = query_partition(sc, D).labels
        assert any(e.labels == entry_labels for e in sc.entries)


@given(st.integers(0, 10**6), st.sampled_from(FAMILIES), st.booleans())
@settings(max_examples=40, deadline=None)
def test_scheme_answers_match_oracle(seed, fam, connected):
    G = gen_random(6, seed, p=0.4, wmax=9, connected=connected)
    sc = loads(dumps(build_scheme(G, fam)))
    assert storage_bits(sc) <= storage_bound(sc)
    for D in enumerate_family(sc.family):
        want = mincut_oracle(G, D).value
        assert query_value(sc, D) == want
        P = lift_partition(G, sc.terminals, query_partition(sc, D))
        assert agrees(P, D) and cut_value(G, P) == want


@pytest.mark.parametrize("terminals", [[0, 2, 4, 5], [1, 3, 6]])
def test_terminal_subsets(terminals):
    G = gen_random(7, 11)
    for fam in (GroupCut(1, 1), GroupCut(2, 1), Multiway(2), Multicut(1)):
        sc = build_scheme(G, fam, terminals)
        assert sc.terminals == tuple(terminals)
        for D in enumerate_family(sc.family):
            assert query_value(sc, D) == mincut_oracle(G, D).value


def test_disconnected_matching_scheme():
    G = gen_matching_lb(8)
    sc = build_scheme(G, Multicut(2))
    for D in enumerate_family(sc.family):
        assert query_value(sc, D) == mincut_oracle(G, D).value


def test_save_load_and_domain(tmp_path, p4):
    sc = build_scheme(p4, GroupCut(1, 1), [0, 1, 3])
    path = tmp_path / "p.cuts"
    save(sc, path)
    back = load(path)
    assert back == sc
    with pytest.raises(DomainError):
        query_value(back, DemandGraph.bipartite([0], [2]))
    with pytest.raises(DomainError):
        query_value(back, DemandGraph.clique([0, 1]))
    with pytest.raises(ContractViolation):
        loads(b"NOPE" + dumps(sc)[4:])


def test_directed_rejected():
    with pytest.raises(ContractViolation):
        build_scheme(gen_directed_bipartite(2), GroupCut(1, 1))
