import itertools

import pytest

from comp_dof.assignments import baseline_assignment, candidate_range
from comp_dof.cluster_scheme import cluster_plan, scheme_dof
from comp_dof.converse import upper_bound
from comp_dof.errors import Infeasible, InvalidDimensions, TooLarge
from comp_dof.net_model import build_network
from comp_dof.search_oracle import (
    _brute_force,
    brute_force_zf_dof,
    message_feasible,
    restricted_zf_dof,
    template_search,
)
from comp_dof.zf_precoder import design_all, design_beam, receivers_reached, verify


def joint_oracle(net, M):
    """Independent maximizer: per active set, exhaust unrestricted transmit
    sets per message and demand a globally verifying design."""
    K = net.K
    best = (0, frozenset())
    for size in range(K, 0, -1):
        for combo in itertools.combinations(range(1, K + 1), size):
            active = frozenset(combo)
            chosen = {}
            for i in combo:
                found = None
                for t_size in range(1, M + 1):
                    for txs in itertools.combinations(range(1, K + 1), t_size):
                        reached = receivers_reached(net, txs)
                        if i not in reached:
                            continue
                        cancels = frozenset(
                            r for r in active if r != i and r in reached)
                        try:
                            design_beam(net, txs, cancels, i)
                        except Infeasible:
                            continue
                        found = (frozenset(txs), cancels)
                        break
                    if found:
                        break
                if found is None:
                    break
                chosen[i] = found
            else:
                return size, active, chosen
    return best + ({},)


def test_message_feasible_examples(asym):
    assert message_feasible(asym(3), 3, {1, 3}, 1)
    assert not message_feasible(asym(2), 1, {1, 2}, 1)
    assert message_feasible(asym(2), 2, {1, 2}, 1)
    assert message_feasible(asym(4), 1, {1}, 1)


def test_brute_force_examples(asym):
    assert brute_force_zf_dof(asym(3), 1).best_count == 2
    assert brute_force_zf_dof(asym(6), 1).best_count == 4
    result7 = brute_force_zf_dof(asym(7), 1)
    assert result7.best_count == 5
    assert result7.witness_plan.active_users == frozenset({1, 3, 4, 6, 7})


def test_brute_force_guards(asym):
    with pytest.raises(TooLarge):
        brute_force_zf_dof(build_network("wyner-asymmetric", 17, 1, False, 0), 1)
    with pytest.raises(TooLarge):
        brute_force_zf_dof(asym(4), 4)


def test_witness_plans_verify(asym):
    for K in (3, 5, 7):
        for M in (1, 2):
            net = asym(K)
            result = brute_force_zf_dof(net, M)
            report = verify(net, result.witness_plan,
                            design_all(net, result.witness_plan), 1e-9)
            assert report.passed
            assert report.dof == result.best_count


def test_matches_joint_enumeration(asym):
    for K in range(1, 6):
        net = asym(K)
        for M in (1, 2):
            count, active, chosen = joint_oracle(net, M)
            result = brute_force_zf_dof(net, M)
            assert result.best_count == count, (K, M)
            assert result.witness_plan.active_users == active, (K, M)


def test_candidate_range_restriction_is_lossless(asym):
    cases = [(K, 1) for K in range(1, 7)] + [(K, 2) for K in range(1, 6)]
    for K, M in cases:
        net = asym(K)
        unrestricted = {i: frozenset(range(1, K + 1)) for i in range(1, K + 1)}
        full = _brute_force(net, M, unrestricted)
        restricted = brute_force_zf_dof(net, M)
        assert full.best_count == restricted.best_count, (K, M)
        assert (full.witness_plan.active_users
                == restricted.witness_plan.active_users), (K, M)
        for i in sorted(restricted.witness_plan.active_users):
            txs = restricted.witness_plan.assignment.transmit_sets[i - 1]
            assert txs <= candidate_range(net, i, M)


def test_restricted_examples(asym):
    net6 = asym(6)
    result = restricted_zf_dof(net6, baseline_assignment(6, 1))
    assert result.best_count == 3
    assert result.restricted
    assert result.witness_plan.active_users == frozenset({1, 3, 5})

    assert restricted_zf_dof(asym(3), baseline_assignment(3, 1)).best_count == 2
    assert restricted_zf_dof(net6, cluster_plan(6, 1).assignment).best_count == 4


def test_flexible_beats_fixed(asym):
    net6 = asym(6)
    flexible = brute_force_zf_dof(net6, 1).best_count
    fixed = restricted_zf_dof(net6, baseline_assignment(6, 1)).best_count
    assert fixed == 3
    assert flexible == 4
    assert flexible > fixed


def test_agreement_with_cluster_scheme(asym):
    for K in range(1, 11):
        assert brute_force_zf_dof(asym(K), 1).best_count == scheme_dof(K, 1)
    for K in range(1, 9):
        assert brute_force_zf_dof(asym(K), 2).best_count == scheme_dof(K, 2)


def test_oracle_within_certificate_bound(asym):
    for M in (1, 2):
        for K in range(M + 1, 11):
            bound = upper_bound(K, M)
            if bound is None:
                continue
            assert brute_force_zf_dof(asym(K), M).best_count <= bound + M


def test_search_is_deterministic(asym):
    first = brute_force_zf_dof(asym(6), 1)
    second = brute_force_zf_dof(asym(6), 1)
    assert first == second


def test_template_search_period3():
    result = template_search("locally-connected", 1, 1, 3, 4)
    assert result.best_count == 2
    net = build_network("locally-connected", 12, 1, False, 0)
    report = verify(net, result.witness_plan,
                    design_all(net, result.witness_plan), 1e-9)
    assert report.passed


def test_template_search_alternating_pattern():
    result = template_search("locally-connected", 2, 1, 2, 6)
    assert result.best_count == 1
    assert result.witness_plan.active_users == frozenset({1, 3, 5, 7, 9, 11})
    sets = result.witness_plan.assignment.transmit_sets
    assert all(sets[u - 1] == frozenset({u}) for u in range(1, 12, 2))


def test_template_search_wide_cluster():
    result = template_search("locally-connected", 2, 2, 6, 3)
    net = build_network("locally-connected", 18, 2, False, 0)
    report = verify(net, result.witness_plan,
                    design_all(net, result.witness_plan), 1e-9)
    assert report.passed
    assert report.dof == 3 * result.best_count


def test_template_search_guards():
    with pytest.raises(TooLarge):
        template_search("locally-connected", 2, 1, 5, 6)
    with pytest.raises(InvalidDimensions):
        template_search("locally-connected", 2, 1, 4, 1)
