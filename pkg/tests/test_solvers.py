from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cutlab.constructions import gen_directed_bipartite, gen_group_lb_with_layout, gen_matching_lb, gen_path_lb
from cutlab.errors import ContractViolation, GuardRefusal
from cutlab.graph import DemandGraph, Partition, WeightedGraph, agrees, cut_value
from cutlab.solvers import (
    directed_groupcut,
    directed_mincut,
    groupcut,
    mincut_oracle,
    multicut,
    multiway,
    solve,
    st_mincut,
)

from .conftest import brute_directed_mincut, brute_mincut, graphs


def _valid(G, D, res):
    return agrees(res.partition, D) and cut_value(G, res.partition) == res.value


def test_st_mincut_examples(triangle):
    assert st_mincut(triangle, 0, 1).value == 3
    path = WeightedGraph.from_edges(3, [(0, 1, 5), (1, 2, 2)])
    assert st_mincut(path, 0, 2).value == 2
    apart = WeightedGraph.from_edges(4, [(0, 1, 5), (2, 3, 2)])
    assert st_mincut(apart, 0, 3).value == 0


def test_oracle_examples(triangle):
    res = mincut_oracle(triangle, DemandGraph.explicit([(0, 1), (0, 2)]))
    assert res.value == 3 and res.partition == Partition.from_blocks([[0], [1, 2]])
    empty = mincut_oracle(triangle, DemandGraph.explicit([]))
    assert empty.value == 0 and empty.partition.part_count == 1
    pm6 = gen_matching_lb(6)
    assert mincut_oracle(pm6, DemandGraph.explicit([(0, 1), (4, 5)])).value == 10


def test_groupcut_examples(triangle):
    assert groupcut(triangle, {0, 1}, {2}).value == 5
    assert groupcut(triangle, {1}, {2}).value == st_mincut(triangle, 1, 2).value == 4


def test_groupcut_on_lower_bound_pattern():
    G, lay = gen_group_lb_with_layout(7, 1, 2)
    for A, B in lay.pattern_instances():
        res = groupcut(G, A, B)
        assert res.value == mincut_oracle(G, DemandGraph.bipartite(A, B)).value
        assert res.value < lay.big


def test_multiway_examples(triangle):
    assert multiway(triangle, {0, 1, 2}).value == 6
    p5 = gen_path_lb(5)
    assert multiway(p5, {0, 2, 3}).value == 10
    assert multiway(triangle, {0, 2}).value == st_mincut(triangle, 0, 2).value


def test_multicut_examples(triangle):
    pm6 = gen_matching_lb(6)
    assert multicut(pm6, DemandGraph.explicit([(0, 1), (4, 5)])).value == 10
    assert multicut(triangle, DemandGraph.explicit([(0, 1)])).value == 3


@given(graphs(max_n=6), st.data())
@settings(max_examples=60, deadline=None)
def test_oracle_matches_brute_force(G, data):
    pairs = list(combinations(range(G.n), 2))
    chosen = data.draw(st.lists(st.sampled_from(pairs), max_size=4, unique=True))
    D = DemandGraph.explicit(chosen)
    res = mincut_oracle(G, D)
    assert res.value == brute_mincut(G.n, G.edges, chosen)
    assert _valid(G, D, res)


@given(graphs(min_n=2, max_n=7), st.data())
@settings(max_examples=60, deadline=None)
def test_flow_solvers_match_oracle(G, data):
    V = list(range(G.n))
    s, t = data.draw(st.lists(st.sampled_from(V), min_size=2, max_size=2, unique=True))
    D = DemandGraph.bipartite([s], [t])
    res = st_mincut(G, s, t)
    assert res.value == mincut_oracle(G, D).value and _valid(G, D, res)
    code = data.draw(st.lists(st.integers(0, 2), min_size=G.n, max_size=G.n))
    code[s], code[t] = 1, 2
    A = [v for v in V if code[v] == 1]
    B = [v for v in V if code[v] == 2]
    D = DemandGraph.bipartite(A, B)
    res = groupcut(G, A, B)
    assert res.value == mincut_oracle(G, D).value and _valid(G, D, res)


@given(graphs(min_n=2, max_n=7), st.data())
@settings(max_examples=60, deadline=None)
def test_multiway_matches_oracle(G, data):
    S = data.draw(st.lists(st.integers(0, G.n - 1), min_size=2, max_size=min(4, G.n), unique=True))
    D = DemandGraph.clique(S)
    res = multiway(G, S)
    oracle = mincut_oracle(G, D)
    assert res.value == oracle.value and _valid(G, D, res)
    assert solve(G, D).value == oracle.value


def test_solve_dispatch(triangle):
    assert solve(triangle, DemandGraph.explicit([])).value == 0
    assert solve(triangle, DemandGraph.bipartite([0], [1])).value == 3
    assert solve(triangle, DemandGraph.clique([0, 1, 2])).value == 6
    assert solve(triangle, DemandGraph.explicit([(1, 2)])).value == 4


def test_oracle_ties_break_to_smallest_canonical_partition():
    G = WeightedGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    res = mincut_oracle(G, DemandGraph.explicit([(0, 2)]))
    # {0 | 1 2} and {0 1 | 2} both cost 1; (0,0,1) < (0,1,1)
    assert res.value == 1 and res.partition.labels == (0, 0, 1)


def test_guards_and_contracts(triangle):
    big = WeightedGraph.from_edges(13, [(i, i + 1, 1) for i in range(12)])
    with pytest.raises(GuardRefusal):
        mincut_oracle(big, DemandGraph.explicit([(0, 1)]))
    with pytest.raises(ContractViolation):
        mincut_oracle(triangle, DemandGraph.explicit([(0, 5)]))
    with pytest.raises(ContractViolation):
        st_mincut(triangle, 1, 1)
    with pytest.raises(ContractViolation):
        mincut_oracle(gen_directed_bipartite(1), DemandGraph.explicit([(0, 1)]))
    wide = WeightedGraph.from_edges(30, [(i, i + 1, 1) for i in range(29)])
    with pytest.raises(GuardRefusal):
        multiway(wide, [0, 1, 2])


def test_directed_examples():
    G = gen_directed_bipartite(2)  # x0=0, x1=1, y0=2, y1=3; x_i -> y_j weighs 2^(2i+j+1)
    assert directed_mincut(G, DemandGraph.bipartite([0, 1], [2], directed=True)) == 2 + 8
    assert directed_mincut(G, DemandGraph.explicit([(0, 2)], directed=True)) == 2
    assert directed_mincut(G, DemandGraph.explicit([], directed=True)) == 0
    assert directed_groupcut(G, [0, 1], [2]) == 10


@given(graphs(min_n=2, max_n=4, directed=True, max_w=9), st.data())
@settings(max_examples=40, deadline=None)
def test_directed_matches_brute_force(G, data):
    pairs = [(u, v) for u in range(G.n) for v in range(G.n) if u != v]
    chosen = data.draw(st.lists(st.sampled_from(pairs), max_size=3, unique=True))
    D = DemandGraph.explicit(chosen, directed=True)
    assert directed_mincut(G, D) == brute_directed_mincut(G.n, list(G.edges), D.pairs)
