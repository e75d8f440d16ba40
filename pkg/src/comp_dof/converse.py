"""Reconstruction certificates upper-bounding the one-shot DoF count.

A certificate keeps a set of receivers, removes the first M transmitters, and
names the transmitters that provably carry no message of any dropped receiver.
If every remaining transmit signal can be recovered from the kept receivers'
noise-free equations by iterated single-unknown elimination, the number of
kept receivers bounds the achievable interference-free user count.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .assignments import Assignment, candidate_range
from .errors import IndexOutOfRange, InvalidDimensions
from .net_model import WYNER_ASYMMETRIC, Network, build_network, transmitters_of


@dataclass(frozen=True)
class PropagationResult:
    complete: bool
    known: frozenset[int]
    trace: tuple[tuple[int, int], ...]  # (recovered transmitter, via receiver)
    residual: frozenset[int]


@dataclass(frozen=True)
class Certificate:
    K: int
    M: int
    receivers: frozenset[int]       # kept receiver set; its size is the bound
    removed_tx: frozenset[int]
    free_tx: frozenset[int]
    trace: tuple[tuple[int, int], ...]
    complete: bool
    residual: frozenset[int]


def certificate_receivers(K: int, M: int) -> tuple[frozenset[int], frozenset[int]]:
    """Kept receivers and their complement: every (2M+1)-periodic middle user
    starting at M+1 is dropped."""
    if M < 1:
        raise InvalidDimensions(f"M must be positive, got {M}")
    if K < M + 1:
        raise InvalidDimensions(f"need K >= M+1 for a certificate, got K={K}, M={M}")
    dropped = frozenset(range(M + 1, K + 1, 2 * M + 1))
    kept = frozenset(range(1, K + 1)) - dropped
    return kept, dropped


def guaranteed_free(net: Network, dropped_receivers: Iterable[int],
                    M: int) -> frozenset[int]:
    """Transmitters outside every dropped receiver's candidate range.

    No useful order-M transmit set of a dropped message can touch these, so
    their signals are message-free with respect to the dropped messages.
    """
    covered: set[int] = set()
    for i in sorted(set(dropped_receivers)):
        covered |= candidate_range(net, i, M)
    return frozenset(range(1, net.K + 1)) - covered


def propagate(net: Network, receivers: Iterable[int], known_tx: Iterable[int],
              removed_tx: Iterable[int],
              pick: Optional[Callable[[list[int]], int]] = None) -> PropagationResult:
    """Iterated single-unknown elimination over the kept receivers' equations.

    A receiver equation becomes usable once all but one of its transmitters
    are known or removed; the remaining one is then recovered.  Support
    coefficients are nonzero by construction, so solvability is structural and
    no numerical solve is needed.  Each step processes the smallest eligible
    receiver; ``pick`` overrides that choice (the final outcome is
    order-independent, only the trace changes).

    Succeeds when every non-removed transmitter ends up known.
    """
    receivers = sorted(set(receivers))
    known = set(known_tx)
    removed = set(removed_tx)
    if known & removed:
        raise InvalidDimensions("known and removed transmitter sets overlap")
    for r in receivers:
        if not 1 <= r <= net.K:
            raise IndexOutOfRange(f"receiver {r} outside [1, {net.K}]")
    equations = {r: transmitters_of(net, r) for r in receivers}
    resolved = known | removed
    trace: list[tuple[int, int]] = []
    while True:
        eligible: dict[int, int] = {}
        for r in receivers:
            unknowns = [j for j in equations[r] if j not in resolved]
            if len(unknowns) == 1:
                eligible[r] = unknowns[0]
        if not eligible:
            break
        r = min(eligible) if pick is None else pick(sorted(eligible))
        tx = eligible[r]
        known.add(tx)
        resolved.add(tx)
        trace.append((tx, r))
    residual = frozenset(range(1, net.K + 1)) - resolved
    return PropagationResult(not residual, frozenset(known), tuple(trace), residual)


def build_certificate(K: int, M: int) -> Certificate:
    """Assemble the canonical certificate for the asymmetric chain.

    The first M transmitters are modeled as removed rather than rebuilding a
    smaller network, which keeps indices aligned with the full chain.
    """
    kept, dropped = certificate_receivers(K, M)
    net = build_network(WYNER_ASYMMETRIC, K, 1, False, seed=0)
    removed = frozenset(range(1, M + 1))
    free = guaranteed_free(net, dropped, M)
    result = propagate(net, kept, free - removed, removed)
    return Certificate(K, M, kept, removed, free, result.trace,
                       result.complete, result.residual)


def upper_bound(K: int, M: int) -> Optional[int]:
    """Size of the kept receiver set when reconstruction completes, else None.

    The bound certifies the channel with the first M transmitters removed; at
    some K the canonical dropped set leaves tail signals unrecoverable and no
    certificate is produced.
    """
    certificate = build_certificate(K, M)
    return len(certificate.receivers) if certificate.complete else None


def check_certificate(net: Network, assignment: Assignment,
                      receivers: Iterable[int]) -> bool:
    """Does a specific assignment satisfy the reconstruction premise?

    The transmitters carrying any message of a receiver outside ``receivers``
    must all be recoverable from the kept equations given every other
    transmit signal.
    """
    kept = set(receivers)
    carried: set[int] = set()
    for i in range(1, net.K + 1):
        if i not in kept:
            carried |= assignment.transmit_sets[i - 1]
    known = set(range(1, net.K + 1)) - carried
    return propagate(net, kept, known, frozenset()).complete
