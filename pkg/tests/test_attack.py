from math import comb

import pytest

from cutlab.attack import AdversarialInstance, claim_cut_formula, claim_query, gen_adversarial, interval_query, recover_weights
from cutlab.errors import ContractViolation, OracleInconsistent
from cutlab.families import GroupCut
from cutlab.schemes import build_scheme, query_value
from cutlab.solvers import groupcut, mincut_oracle


def _flow_oracle(inst):
    G = inst.to_graph()
    return lambda D: groupcut(G, D.A, D.B).value


def test_generated_ranges():
    inst = gen_adversarial(4, 7)
    assert 1536 <= inst.w(1, 2) <= 1792
    assert all(inst.weights[e] <= 3 for e in inst.fork_edges)
    assert len(inst.path_edges) == 3 and len(inst.fork_edges) == 3
    inst.check_invariants()
    assert gen_adversarial(6, 1) == gen_adversarial(6, 1)
    with pytest.raises(ContractViolation):
        gen_adversarial(2, 0)


def test_claim_formula_examples():
    inst = gen_adversarial(6, 2)
    assert claim_cut_formula(inst, 2, 3) == sum(inst.w(2, v) for v in range(1, 7) if v != 2)
    assert claim_cut_formula(inst, 1, 6) == sum(inst.w(6, v) for v in range(1, 6))
    with pytest.raises(ContractViolation):
        claim_cut_formula(inst, 3, 3)


@pytest.mark.parametrize("seed", range(4))
def test_claim_formula_matches_oracle(seed):
    inst = gen_adversarial(5, seed)
    G = inst.to_graph()
    for i in range(1, 5):
        for j in range(i + 1, 6):
            assert mincut_oracle(G, claim_query(5, i, j)).value == claim_cut_formula(inst, i, j)


def test_interval_queries_are_two_one_group_cuts():
    for n in range(3, 8):
        for lo in range(1, n + 1):
            for hi in range(lo, n + 1):
                if (lo, hi) == (1, n):
                    continue
                D = interval_query(n, lo, hi)
                assert D.kind == "bipartite" and sorted((len(D.A), len(D.B))) == [1, 2]


def test_base_case_identity():
    inst = gen_adversarial(5, 0)
    G = inst.to_graph()
    S = lambda k: sum(inst.w(k, v) for v in range(1, 6) if v != k)  # noqa: E731
    c = mincut_oracle(G, claim_query(5, 2, 4)).value
    assert inst.w(2, 3) == (S(2) + S(3) - c) // 2


@pytest.mark.parametrize("n", range(3, 10))
def test_recovery_is_exact(n):
    for seed in range(3):
        inst = gen_adversarial(n, seed)
        w, queries = recover_weights(_flow_oracle(inst), n)
        assert w == inst.weights
        assert queries <= 3 * comb(n, 2)


def test_recovery_through_oracle_and_scheme():
    inst = gen_adversarial(4, 5)
    G = inst.to_graph()
    w, _ = recover_weights(lambda D: mincut_oracle(G, D).value, 4)
    assert w == inst.weights
    sc = build_scheme(G, GroupCut(2, 1))
    w, _ = recover_weights(lambda D: query_value(sc, D), 4)
    assert w == inst.weights


def test_inconsistent_oracle_is_detected():
    inst = gen_adversarial(5, 1)
    honest = _flow_oracle(inst)
    with pytest.raises(OracleInconsistent):
        recover_weights(lambda D: honest(D) + 1, 5)
    one = claim_query(5, 3, 4)
    with pytest.raises(OracleInconsistent, match="integer"):
        recover_weights(lambda D: honest(D) + (D == one), 5)
    with pytest.raises(OracleInconsistent):
        recover_weights(lambda D: honest(D) + (100 if D == one else 0), 5)
    # an honest oracle for a graph whose fork weight leaves {0..n-1}
    heavy = AdversarialInstance(5, 1, {**inst.weights, (1, 3): 9})
    with pytest.raises(OracleInconsistent, match="adversarial"):
        recover_weights(_flow_oracle(heavy), 5)
