"""Acceptance gate: one test and one printed pass/fail line per criterion."""

import json
import random
import time
from fractions import Fraction

from comp_dof.assignments import baseline_assignment, make_assignment, prune_useless
from comp_dof.cli import main
from comp_dof.cluster_scheme import cluster_plan, scheme_dof
from comp_dof.converse import certificate_receivers, guaranteed_free, propagate, upper_bound
from comp_dof.net_model import build_network
from comp_dof.search_oracle import brute_force_zf_dof, restricted_zf_dof, template_search
from comp_dof.zf_precoder import design_all, verify


def report(number, label, ok):
    print(f"ACCEPTANCE {number} [{label}]: {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} ({label}) failed"


def asym(K, seed=0):
    return build_network("wyner-asymmetric", K, 1, False, seed)


def worst_relative_leak(report_):
    return max((r.worst_leak_abs / r.own_gain_abs for r in report_.receivers),
               default=0.0)


def test_criterion_1_scheme_and_bound_at_k7_m3(capsys):
    start = time.perf_counter()
    code = main(["scheme", "--K", "7", "--M", "3", "--seed", "7", "--out", "-"])
    scheme_doc = json.loads(capsys.readouterr().out)
    code_bound = main(["bound", "--K", "7", "--M", "3", "--out", "-"])
    bound_doc = json.loads(capsys.readouterr().out)

    plan = cluster_plan(7, 3)
    residuals = []
    for seed in range(10):
        net = asym(7, seed)
        residuals.append(worst_relative_leak(verify(net, plan,
                                                    design_all(net, plan), 1e-9)))
    elapsed = time.perf_counter() - start

    ok = (code == 0 and code_bound == 0
          and scheme_doc["verification"]["dof"] == 6
          and scheme_doc["verification"]["pass"] is True
          and bound_doc["bound"] == 6
          and len(bound_doc["A"]) == 6
          and max(residuals) < 1e-9
          and elapsed < 1.0)
    with capsys.disabled():
        report(1, "scheme+bound K=7 M=3, residual<1e-9 over 10 seeds", ok)


def test_criterion_2_exact_ratio_at_cluster_multiples():
    start = time.perf_counter()
    ok = True
    for M in (1, 2, 3, 4):
        K = 4 * (2 * M + 1)
        achievable = scheme_dof(K, M)
        bound = upper_bound(K, M)
        ok &= achievable == bound == 8 * M
        ok &= Fraction(achievable, K) == Fraction(2 * M, 2 * M + 1)
    elapsed = time.perf_counter() - start
    ok &= elapsed < 5.0
    report(2, "scheme_dof = upper_bound = 8M at K = 4(2M+1)", ok)


def test_criterion_3_motivating_example():
    start = time.perf_counter()
    two_of_three = brute_force_zf_dof(asym(3, 7), 1).best_count
    four_of_six = brute_force_zf_dof(asym(6, 7), 1).best_count
    certificate = upper_bound(6, 1)
    elapsed = time.perf_counter() - start
    ok = (two_of_three == 2 and four_of_six == 4 and certificate == 4
          and elapsed < 1.0)
    report(3, "oracle 2K/3 at K=3 and certificate match at K=6", ok)


def test_criterion_4_gain_over_fixed_assignment():
    net6 = asym(6, 7)
    fixed = restricted_zf_dof(net6, baseline_assignment(6, 1)).best_count
    flexible = brute_force_zf_dof(net6, 1).best_count
    ok = fixed == 3 and flexible == 4 and flexible > fixed
    for K in range(2, 13):
        net = asym(K, 7)
        fixed_k = restricted_zf_dof(net, baseline_assignment(K, 1)).best_count
        flexible_k = brute_force_zf_dof(net, 1).best_count
        ok &= abs(fixed_k / K - 1 / 2) <= 1 / K
        ok &= abs(flexible_k / K - 2 / 3) <= 1 / K
        ok &= flexible_k >= fixed_k
    report(4, "flexible 4 > fixed 3 at K=6; ratios trend to 2/3 vs 1/2", ok)


def test_criterion_5_pruning_golden_and_idempotent():
    net5 = asym(5, 7)
    golden = prune_useless(
        net5, make_assignment(5, [set(), set(), {2, 4, 5}, set(), set()]))
    ok = golden.transmit_sets[2] == frozenset({2})

    rng = random.Random(20240)
    for _ in range(200):
        K = rng.randint(1, 8)
        M = rng.randint(1, 3)
        sets = [set(rng.sample(range(1, K + 1), k=min(K, rng.randint(0, M))))
                for _ in range(K)]
        net = asym(K, rng.randint(0, 99))
        assignment = make_assignment(K, sets)
        once = prune_useless(net, assignment)
        ok &= prune_useless(net, once) == once
    report(5, "golden prune {2,4,5}->{2}; idempotent on 200 random cases", ok)


def test_criterion_6_converse_machinery():
    net13 = asym(13, 0)
    kept, dropped = certificate_receivers(13, 3)
    free = guaranteed_free(net13, dropped, 3)
    removed = {1, 2, 3}
    reference = propagate(net13, kept, free - removed, removed)
    ok = True
    for trial in range(200):
        rng = random.Random(trial)
        result = propagate(net13, kept, free - removed, removed, pick=rng.choice)
        ok &= result.complete == reference.complete
        ok &= result.known == reference.known

    for trial in range(200):
        rng = random.Random(31_000 + trial)
        K = rng.randint(2, 14)
        net = asym(K, trial % 5)
        removed_set = {j for j in range(1, K + 1) if rng.random() < 0.2}
        known = {j for j in range(1, K + 1)
                 if j not in removed_set and rng.random() < 0.3}
        receivers = {r for r in range(1, K + 1) if rng.random() < 0.7}
        base = propagate(net, receivers, known, removed_set)
        extra = {j for j in range(1, K + 1)
                 if j not in removed_set and rng.random() < 0.3}
        wider = propagate(net, receivers, known | extra, removed_set)
        if base.complete:
            ok &= wider.complete

    chain = propagate(asym(6, 0), {1, 3, 4, 6}, {3, 6}, {1})
    ok &= chain.complete and chain.known - {3, 6} == {2, 4, 5}
    report(6, "confluence, monotonicity, and the K=6 recovery chain", ok)


def test_criterion_7_oracle_scheme_agreement():
    start = time.perf_counter()
    ok = True
    for K in range(1, 11):
        ok &= brute_force_zf_dof(asym(K, 7), 1).best_count == scheme_dof(K, 1)
    for K in range(1, 9):
        ok &= brute_force_zf_dof(asym(K, 7), 2).best_count == scheme_dof(K, 2)
    for M in (1, 2):
        for K in range(M + 1, 11):
            bound = upper_bound(K, M)
            if bound is not None:
                ok &= brute_force_zf_dof(asym(K, 7), M).best_count <= bound + M
    elapsed = time.perf_counter() - start
    ok &= elapsed < 60.0
    report(7, "oracle equals scheme_dof; oracle <= bound + M", ok)


def test_criterion_8_locally_connected_extension():
    narrow = template_search("locally-connected", 2, 1, 2, 6)
    net12 = build_network("locally-connected", 12, 2, False, 0)
    narrow_report = verify(net12, narrow.witness_plan,
                           design_all(net12, narrow.witness_plan), 1e-9)
    ok = (Fraction(narrow.best_count, 2) == Fraction(1, 2)
          and narrow_report.passed
          and worst_relative_leak(narrow_report) < 1e-9)

    wide = template_search("locally-connected", 2, 2, 6, 3)
    net18 = build_network("locally-connected", 18, 2, False, 0)
    wide_report = verify(net18, wide.witness_plan,
                         design_all(net18, wide.witness_plan), 1e-9)
    ok &= wide_report.passed
    matches_reference = Fraction(wide.best_count, 6) == Fraction(2, 3)
    print(f"  note: wide-template ratio {wide.best_count}/6 "
          f"{'matches' if matches_reference else 'differs from'} the 2/3 reference")
    report(8, "periodic templates: 1/2 certified at L=2; wide witness verifies", ok)


def test_convergence_note_sweep_tracks_the_limit(capsys):
    ok = True
    for M in (1, 2, 3):
        code = main(["sweep", "--Kmax", "200", "--M", str(M), "--out", "-"])
        out = capsys.readouterr().out
        ok &= code == 0
        limit = 2 * M / (2 * M + 1)
        for line in out.splitlines()[1:]:
            cells = line.split(",")
            K = int(cells[0])
            ok &= abs(float(cells[5]) - limit) <= (2 * M + 1) / K
            if cells[6]:
                ok &= abs(float(cells[6]) - limit) <= (2 * M + 1) / K
    with capsys.disabled():
        report("note", "sweep ratios within (2M+1)/K of 2M/(2M+1) up to K=200", ok)
