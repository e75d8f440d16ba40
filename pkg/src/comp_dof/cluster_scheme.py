"""Cluster transmission plans for the asymmetric chain.

Users are grouped into clusters of 2M+1 consecutive transceivers.  Inside a
cluster the first M users are served by the leading M transmitters, the last
M users by the middle M transmitters, the middle user is skipped, and the last
transmitter is deactivated so clusters never interfere with each other.  A
final partial cluster reuses the same formulas, truncated; it deactivates
nothing because its last transmitter carries no message anyway.
"""

from __future__ import annotations

from .assignments import Assignment
from .errors import InvalidDimensions
from .zf_precoder import SchemePlan


def cluster_plan(K: int, M: int) -> SchemePlan:
    """Build the cluster plan for K users at cooperation order M.

    Within a full cluster at offset c*(2M+1), local user i <= M gets
    transmitters {i..M} with cancellation at receivers {i+1..M}; local user
    i >= M+2 gets transmitters {M+1..i-1} with cancellation at {M+2..i-1};
    local user M+1 is unserved and local transmitter 2M+1 is deactivated.
    """
    if K < 1 or M < 1:
        raise InvalidDimensions(f"K and M must be positive, got K={K}, M={M}")
    width = 2 * M + 1
    transmit: list[set[int]] = [set() for _ in range(K)]
    cancel: list[set[int]] = [set() for _ in range(K)]
    active: set[int] = set()
    deactivated: set[int] = set()

    full_clusters, tail = divmod(K, width)
    for c in range(full_clusters):
        offset = c * width
        for i in range(1, M + 1):
            user = offset + i
            transmit[user - 1] = {offset + j for j in range(i, M + 1)}
            cancel[user - 1] = {offset + j for j in range(i + 1, M + 1)}
            active.add(user)
        for i in range(M + 2, width + 1):
            user = offset + i
            transmit[user - 1] = {offset + j for j in range(M + 1, i)}
            cancel[user - 1] = {offset + j for j in range(M + 2, i)}
            active.add(user)
        deactivated.add(offset + width)

    if tail:
        offset = full_clusters * width
        for i in range(1, min(M, tail) + 1):
            user = offset + i
            transmit[user - 1] = {offset + j for j in range(i, M + 1) if j <= tail}
            cancel[user - 1] = {offset + j for j in range(i + 1, M + 1) if j <= tail}
            active.add(user)
        for i in range(M + 2, tail + 1):
            user = offset + i
            transmit[user - 1] = {offset + j for j in range(M + 1, i)}
            cancel[user - 1] = {offset + j for j in range(M + 2, i)}
            active.add(user)

    assignment = Assignment(K, tuple(frozenset(t) for t in transmit))
    return SchemePlan(K, assignment, frozenset(active), frozenset(deactivated),
                      tuple(frozenset(c) for c in cancel))


def scheme_dof(K: int, M: int) -> int:
    """Served-user count of the cluster plan: 2M per full cluster plus the
    truncated head/tail contribution of a partial final cluster."""
    return len(cluster_plan(K, M).active_users)
