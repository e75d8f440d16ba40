"""Brute-force ground truth at desk scale.

Feasibility of a served-user set decouples across messages: a beam only
constrains its own transmit set, and the cancellation targets depend on the
active set alone.  The oracle therefore maximizes the active set over all
subsets, deciding each member independently by enumerating candidate transmit
sets inside its candidate range, smallest first.  Every candidate is decided
by an actual null-space solve; the dimension shortcut (fewer reached
cancellation targets than transmitters) is not exact for non-contiguous
transmit sets, so it is not used to skip candidates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .assignments import Assignment, candidate_range
from .errors import Infeasible, InvalidDimensions, TooLarge
from .net_model import Network, build_network
from .zf_precoder import SchemePlan, design_all, design_beam, receivers_reached, verify

MAX_BRUTE_USERS = 16
MAX_BRUTE_ORDER = 3
MAX_TEMPLATE_USERS = 24


@dataclass(frozen=True)
class SearchResult:
    """Best verified count with its witness plan.

    ``best_count`` is the maximum active-set size (for periodic template
    searches: active users per period); ``explored`` counts the candidate
    active sets (or patterns) examined, including the successful one.
    """

    best_count: int
    witness_plan: SchemePlan
    explored: int
    restricted: bool


def _beam_or_none(net, transmit_set, cancel_set, receiver):
    try:
        return design_beam(net, transmit_set, cancel_set, receiver)
    except Infeasible:  # includes Disconnected
        return None


def _candidate_sets(pool: list[int], max_size: int):
    for size in range(1, max_size + 1):
        for combo in itertools.combinations(pool, size):
            yield frozenset(combo)


def _message_witness(net: Network, message: int, active: frozenset[int],
                     order: int, pool: Iterable[int]):
    """Smallest (then lexicographic) transmit set serving ``message`` without
    leaking at any other active receiver, or None."""
    for txs in _candidate_sets(sorted(pool), order):
        reached = receivers_reached(net, txs)
        if message not in reached:
            continue
        cancels = frozenset(r for r in active if r != message and r in reached)
        if _beam_or_none(net, txs, cancels, message) is not None:
            return txs, cancels
    return None


def message_feasible(net: Network, message: int, active_set: Iterable[int],
                     M: int) -> bool:
    """Can ``message`` be served at order M given this set of active receivers?"""
    pool = candidate_range(net, message, M)
    return _message_witness(net, message, frozenset(active_set), M, pool) is not None


def _empty_plan(K: int) -> SchemePlan:
    empty = tuple(frozenset() for _ in range(K))
    return SchemePlan(K, Assignment(K, empty), frozenset(), frozenset(), empty)


def _assemble(K: int, active: frozenset[int], witnesses: dict) -> SchemePlan:
    transmit = [frozenset()] * K
    cancel = [frozenset()] * K
    for i, (txs, cancels) in witnesses.items():
        transmit[i - 1] = txs
        cancel[i - 1] = cancels
    return SchemePlan(K, Assignment(K, tuple(transmit)), active, frozenset(),
                      tuple(cancel))


def brute_force_zf_dof(net: Network, M: int) -> SearchResult:
    """Maximum one-shot interference-free user count over all assignments of
    order M, with ties broken by the lexicographically smallest active set."""
    return _brute_force(net, M, None)


def _brute_force(net: Network, M: int,
                 pools: Optional[dict[int, frozenset[int]]]) -> SearchResult:
    K = net.K
    if K > MAX_BRUTE_USERS or M > MAX_BRUTE_ORDER:
        raise TooLarge(
            f"exhaustive search is guarded to K <= {MAX_BRUTE_USERS}, "
            f"M <= {MAX_BRUTE_ORDER}; got K={K}, M={M}")
    if pools is None:
        pools = {i: candidate_range(net, i, M) for i in range(1, K + 1)}
    # a message's feasibility only depends on the active users its candidate
    # transmitters can reach, which keeps the memo small
    windows = {i: receivers_reached(net, pools[i]) for i in pools}
    memo: dict = {}

    def witness(i, active):
        key = (i, active & windows[i])
        if key not in memo:
            memo[key] = _message_witness(net, i, key[1], M, pools[i])
        return memo[key]

    explored = 0
    for size in range(K, 0, -1):
        for combo in itertools.combinations(range(1, K + 1), size):
            explored += 1
            active = frozenset(combo)
            found = {}
            for i in combo:
                got = witness(i, active)
                if got is None:
                    break
                found[i] = got
            else:
                return SearchResult(size, _assemble(K, active, found),
                                    explored, False)
    return SearchResult(0, _empty_plan(K), explored, False)


def restricted_zf_dof(net: Network, assignment: Assignment) -> SearchResult:
    """Best active-set size when transmit sets are fixed: a message may be
    dropped but never reassigned."""
    K = net.K
    if K > MAX_BRUTE_USERS:
        raise TooLarge(f"restricted search is guarded to K <= {MAX_BRUTE_USERS}")
    if assignment.K != K:
        raise InvalidDimensions("assignment does not match the network's K")
    eligible = [i for i in range(1, K + 1) if assignment.transmit_sets[i - 1]]
    reaches = {i: receivers_reached(net, assignment.transmit_sets[i - 1])
               for i in eligible}
    memo: dict = {}

    def witness(i, active):
        if i not in reaches[i]:
            return None
        cancels = frozenset((active & reaches[i]) - {i})
        key = (i, cancels)
        if key not in memo:
            txs = assignment.transmit_sets[i - 1]
            beam = _beam_or_none(net, txs, cancels, i)
            memo[key] = None if beam is None else (txs, cancels)
        return memo[key]

    explored = 0
    for size in range(len(eligible), 0, -1):
        for combo in itertools.combinations(eligible, size):
            explored += 1
            active = frozenset(combo)
            found = {}
            for i in combo:
                got = witness(i, active)
                if got is None:
                    break
                found[i] = got
            else:
                return SearchResult(size, _assemble(K, active, found),
                                    explored, True)
    return SearchResult(0, _empty_plan(K), explored, True)


def template_search(kind: str, L: int, M: int, period: int, copies: int,
                    seed: int = 0) -> SearchResult:
    """Best periodic plan: one local active pattern and per-position transmit
    templates repeated every ``period`` users, verified globally at 1e-9.

    Templates are strictly periodic, so a candidate offset set must stay
    inside the candidate range of the corresponding user in every copy,
    boundary copies included.  ``best_count`` is per period.
    """
    if period < 1:
        raise InvalidDimensions(f"period must be positive, got {period}")
    if copies < 2:
        raise InvalidDimensions(
            "need at least two periods so cross-period interference is exercised")
    if M < 1:
        raise InvalidDimensions(f"M must be positive, got {M}")
    K = period * copies
    if K > MAX_TEMPLATE_USERS:
        raise TooLarge(
            f"template search is guarded to K <= {MAX_TEMPLATE_USERS}, got {K}")
    net = build_network(kind, K, L, False, seed)
    pools = {u: candidate_range(net, u, M) for u in range(1, K + 1)}
    explored = 0
    for size in range(period, 0, -1):
        for pattern in itertools.combinations(range(1, period + 1), size):
            explored += 1
            active = frozenset(c * period + p
                               for c in range(copies) for p in pattern)
            witnesses = _fit_templates(net, M, period, copies, pattern, active,
                                       pools)
            if witnesses is None:
                continue
            plan = _assemble(K, active, witnesses)
            design = design_all(net, plan)
            if verify(net, plan, design, 1e-9).passed:
                return SearchResult(size, plan, explored, False)
    return SearchResult(0, _empty_plan(K), explored, False)


def _fit_templates(net, M, period, copies, pattern, active, pools):
    """One offset template per pattern position, valid in every copy."""
    witnesses: dict = {}
    for p in pattern:
        users = [c * period + p for c in range(copies)]
        shared: Optional[set[int]] = None
        for u in users:
            offsets = {t - u for t in pools[u]}
            shared = offsets if shared is None else shared & offsets
        found = None
        for deltas in _candidate_sets(sorted(shared), M):
            per_user = {}
            for u in users:
                txs = frozenset(u + d for d in deltas)
                reached = receivers_reached(net, txs)
                if u not in reached:
                    break
                cancels = frozenset(r for r in active if r != u and r in reached)
                if _beam_or_none(net, txs, cancels, u) is None:
                    break
                per_user[u] = (txs, cancels)
            else:
                found = per_user
                break
        if found is None:
            return None
        witnesses.update(found)
    return witnesses
