from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutlab.constructions import gen_matching_lb, gen_random
from cutlab.errors import ContractViolation
from cutlab.families import (
    CSV_HEADER,
    GroupCut,
    Multicut,
    Multiway,
    analyze,
    enumerate_family,
    family_size,
    parse_family,
    theoretical_upper_bound,
    to_csv,
)
from cutlab.graph import DemandGraph


def test_family_sizes():
    assert len(list(enumerate_family(Multiway(3, range(5))))) == 10
    assert len(list(enumerate_family(Multicut(2, range(4))))) == 15
    # K_{{a},{b}} and K_{{b},{a}} are the same demand graph
    assert len(list(enumerate_family(GroupCut(1, 1, range(3))))) == 3
    assert len(list(enumerate_family(GroupCut(2, 1, range(4))))) == 12


@pytest.mark.parametrize(
    "fam", [GroupCut(1, 1), GroupCut(2, 1), GroupCut(2, 2), GroupCut(2, 2, exact_sizes=False), Multiway(3), Multicut(2)]
)
def test_enumeration_is_duplicate_free_and_sized(fam):
    fam = fam.over(range(6))
    ds = list(enumerate_family(fam))
    keys = {frozenset(D.pairs) for D in ds}
    assert len(keys) == len(ds) == family_size(fam)
    assert all(fam.contains(D) for D in ds)


def test_contains_respects_terminals_and_kind():
    fam = GroupCut(2, 1, [0, 1, 2])
    assert fam.contains(DemandGraph.bipartite([0, 1], [2]))
    assert fam.contains(DemandGraph.bipartite([2], [0, 1]))
    assert not fam.contains(DemandGraph.bipartite([0], [2]))
    assert not fam.contains(DemandGraph.bipartite([0, 3], [2]))
    assert not fam.contains(DemandGraph.clique([0, 1]))


def test_theoretical_bounds():
    for n in range(2, 10):
        assert theoretical_upper_bound(GroupCut(1, 1), n) == n - 1
    assert theoretical_upper_bound(Multiway(3), 10) == 36
    assert theoretical_upper_bound(Multicut(2), 10) == 66


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 1), (2, 2)])
def test_group_bound_counts_distinct_demand_graphs(alpha, beta):
    for t in range(2, 8):
        graphs = set()
        for a in range(1, alpha + 1):
            for b in range(1, beta + 1):
                for A in combinations(range(t), a):
                    for B in combinations([v for v in range(t) if v not in A], b):
                        if 0 in A or 0 in B:
                            graphs.add(frozenset((frozenset(A), frozenset(B))))
        assert theoretical_upper_bound(GroupCut(alpha, beta), t) == len(graphs)


def test_analyze_path(p4):
    r = analyze(p4, GroupCut(1, 1))
    assert (r.instance_count, r.distinct_count, r.theoretical_bound) == (6, 3, 3)
    assert r.redundancy_factor == Fraction(2)
    assert r.csv_row() == [6, 3, 2.0, 3]
    assert to_csv([r]) == ",".join(CSV_HEADER) + "\n6,3,2.0,3\n"


def test_analyze_examples(triangle):
    r = analyze(triangle, Multiway(3))
    assert (r.instance_count, r.distinct_count, r.redundancy_factor) == (1, 1, 1)
    pm = analyze(gen_matching_lb(6), Multicut(2))
    assert {6, 10, 12} <= set(pm.distinct_values)


def test_parallel_analyze_matches_serial():
    G = gen_random(7, 3)
    assert analyze(G, GroupCut(2, 1), jobs=2).distinct_values == analyze(G, GroupCut(2, 1)).distinct_values


@given(st.integers(0, 10**6), st.sampled_from([GroupCut(1, 1), GroupCut(2, 1), GroupCut(2, 2), Multiway(2), Multiway(3), Multicut(1), Multicut(2)]))
@settings(max_examples=25, deadline=None)
def test_distinct_counts_within_bound(seed, fam):
    G = gen_random(6, seed, p=0.6)
    r = analyze(G, fam)
    assert r.within_bound()


def test_parse_family():
    assert parse_family("groupcut:2,1") == GroupCut(2, 1)
    assert parse_family("multiway:3") == Multiway(3)
    assert parse_family("groupcut:2,2:le") == GroupCut(2, 2, exact_sizes=False)
    assert str(parse_family("multicut:2")) == "multicut:2"
    for bad in ["groupcut:1", "multiway:x", "foo:1", "multiway:1", "groupcut:1,1:ge"]:
        with pytest.raises(ContractViolation):
            parse_family(bad)


def test_enumeration_guards():
    with pytest.raises(ContractViolation):
        list(enumerate_family(Multiway(4, range(3))))
    with pytest.raises(ContractViolation):
        list(enumerate_family(GroupCut(1, 1)))
    assert family_size(GroupCut(2, 2, range(4))) == comb(4, 2) // 2
