"""Transmit-set assignments, usefulness pruning, and candidate ranges.

A message is *served* by the transmitters in its transmit set; an empty set
means the message is intentionally left untransmitted.  Pruning removes set
members that provably cannot help: those whose component in the per-message
usefulness graph contains no transmitter connected to the intended receiver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

from .errors import IndexOutOfRange, InvalidDimensions, ParseError
from .net_model import Network, receivers_of, transmitters_of


@dataclass(frozen=True)
class Assignment:
    """Per-message transmit sets over a K-user network."""

    K: int
    transmit_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.K < 1:
            raise InvalidDimensions(f"user count K must be positive, got {self.K}")
        if len(self.transmit_sets) != self.K:
            raise InvalidDimensions(
                f"expected {self.K} transmit sets, got {len(self.transmit_sets)}")
        for i, txs in enumerate(self.transmit_sets, start=1):
            for j in txs:
                if not 1 <= j <= self.K:
                    raise IndexOutOfRange(
                        f"transmit set {i} contains {j}, outside [1, {self.K}]")


def make_assignment(K: int, sets: Iterable[Iterable[int]]) -> Assignment:
    return Assignment(K, tuple(frozenset(s) for s in sets))


def cooperation_order(assignment: Assignment) -> int:
    """Largest transmit-set size; 0 when nothing is served."""
    return max((len(t) for t in assignment.transmit_sets), default=0)


def baseline_assignment(K: int, M: int) -> Assignment:
    """Fixed contiguous assignment: message i on transmitters i..i+M-1.

    Sets are clipped at the network edge, so boundary messages may use fewer
    than M transmitters.
    """
    if K < 1 or M < 1:
        raise InvalidDimensions(f"K and M must be positive, got K={K}, M={M}")
    sets = (frozenset(j for j in range(i, i + M) if j <= K) for i in range(1, K + 1))
    return Assignment(K, tuple(sets))


def check_local_cooperation(assignment: Assignment, radius: int) -> bool:
    """True when every transmit set stays within ``radius`` of its message index."""
    if radius < 0:
        raise InvalidDimensions(f"radius must be nonnegative, got {radius}")
    return all(
        i - radius <= j <= i + radius
        for i, txs in enumerate(assignment.transmit_sets, start=1)
        for j in txs
    )


def shares_receiver(net: Network, x: int, y: int) -> bool:
    """True when transmitters x and y are heard by at least one common receiver."""
    return bool(set(receivers_of(net, x)) & set(receivers_of(net, y)))


@dataclass(frozen=True)
class UsefulnessGraph:
    """Per-message conflict graph over the transmitters of one transmit set.

    Vertices are all K transmitters; edges join transmit-set members sharing a
    receiver; marked vertices are the transmitters the intended receiver hears
    (whether or not they are in the set).
    """

    message: int
    K: int
    edges: frozenset[tuple[int, int]]  # normalized (low, high) pairs
    marked: frozenset[int]


def usefulness_graph(net: Network, message: int, transmit_set: Iterable[int]) -> UsefulnessGraph:
    txs = sorted(set(transmit_set))
    for j in txs:
        if not 1 <= j <= net.K:
            raise IndexOutOfRange(f"transmitter {j} outside [1, {net.K}]")
    edges = set()
    for a in range(len(txs)):
        for b in range(a + 1, len(txs)):
            if shares_receiver(net, txs[a], txs[b]):
                edges.add((txs[a], txs[b]))
    marked = frozenset(transmitters_of(net, message))
    return UsefulnessGraph(message, net.K, frozenset(edges), marked)


def _components(vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
    adjacency: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen: set[int] = set()
    for v in sorted(adjacency):
        if v in seen:
            continue
        component, stack = {v}, [v]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in component:
                    component.add(w)
                    stack.append(w)
        seen |= component
        yield frozenset(component)


def prune_useless(net: Network, assignment: Assignment) -> Assignment:
    """Drop transmit-set members whose component reaches no marked vertex.

    A single pass per message suffices: every surviving component already
    contains a marked vertex, so removals cannot orphan the survivors.
    """
    pruned = []
    for i, txs in enumerate(assignment.transmit_sets, start=1):
        if not txs:
            pruned.append(txs)
            continue
        graph = usefulness_graph(net, i, txs)
        keep: set[int] = set()
        for component in _components(txs, graph.edges):
            if component & graph.marked:
                keep |= component
        pruned.append(frozenset(keep))
    return Assignment(assignment.K, tuple(pruned))


def _cotransmitter_adjacency(net: Network) -> dict[int, set[int]]:
    """Adjacency of the share-a-receiver graph over all K transmitters."""
    adjacency: dict[int, set[int]] = {j: set() for j in range(1, net.K + 1)}
    for r in range(1, net.K + 1):
        heard = transmitters_of(net, r)
        for a in range(len(heard)):
            for b in range(a + 1, len(heard)):
                adjacency[heard[a]].add(heard[b])
                adjacency[heard[b]].add(heard[a])
    return adjacency


def candidate_range(net: Network, message: int, order: int) -> frozenset[int]:
    """Transmitters within distance order-1 of one heard by the receiver.

    Distance is measured in the share-a-receiver graph over all transmitters,
    unrestricted by any particular transmit set.  Every useful transmit set of
    size <= order lies inside this range, so it doubles as the search pool for
    per-message beam candidates.
    """
    if order < 1:
        raise InvalidDimensions(f"cooperation order must be positive, got {order}")
    adjacency = _cotransmitter_adjacency(net)
    frontier = set(transmitters_of(net, message))
    seen = set(frontier)
    for _ in range(order - 1):
        frontier = {y for x in frontier for y in adjacency[x]} - seen
        if not frontier:
            break
        seen |= frontier
    return frozenset(seen)


def serialize_assignment(assignment: Assignment) -> str:
    doc = {
        "K": assignment.K,
        "transmit_sets": [sorted(t) for t in assignment.transmit_sets],
    }
    return json.dumps(doc, indent=2) + "\n"


def deserialize_assignment(text: str) -> Assignment:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    if "K" not in doc:
        raise ParseError("missing field 'K'")
    K = doc["K"]
    if isinstance(K, bool) or not isinstance(K, int):
        raise ParseError("field 'K' must be an integer")
    sets = doc.get("transmit_sets")
    if not isinstance(sets, list):
        raise ParseError("field 'transmit_sets' must be a list of lists")
    parsed = []
    for n, entry in enumerate(sets):
        if not isinstance(entry, list) or any(
                isinstance(j, bool) or not isinstance(j, int) for j in entry):
            raise ParseError(f"transmit_sets[{n}] must be a list of integers")
        parsed.append(frozenset(entry))
    try:
        return Assignment(K, tuple(parsed))
    except (InvalidDimensions, IndexOutOfRange) as exc:
        raise ParseError(str(exc)) from exc
