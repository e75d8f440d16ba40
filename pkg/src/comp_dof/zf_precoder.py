"""Per-message zero-forcing beams and whole-plan interference verification."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .assignments import Assignment
from .errors import (
    Disconnected,
    IndexOutOfRange,
    Infeasible,
    InvalidDimensions,
    ParseError,
)
from .net_model import Network, receivers_of

# numerical-rank threshold factor, applied to sigma_max * max(shape)
RANK_RTOL = 1e-12
# minimum usable |gain| at the intended receiver
GAIN_FLOOR = 1e-6


@dataclass(frozen=True)
class SchemePlan:
    """Which users are served, by which transmitters, nulling which receivers.

    Deactivation is structural: a deactivated transmitter carries no message
    at all, rather than a zero beam.
    """

    K: int
    assignment: Assignment
    active_users: frozenset[int]
    deactivated_transmitters: frozenset[int]
    cancellation_sets: tuple[frozenset[int], ...]

    def __post_init__(self):
        if self.assignment.K != self.K:
            raise InvalidDimensions("assignment does not match the plan's K")
        if len(self.cancellation_sets) != self.K:
            raise InvalidDimensions(f"expected {self.K} cancellation sets")
        for u in self.active_users | self.deactivated_transmitters:
            if not 1 <= u <= self.K:
                raise IndexOutOfRange(f"index {u} outside [1, {self.K}]")
        used = set().union(*self.assignment.transmit_sets)
        if used & self.deactivated_transmitters:
            raise InvalidDimensions("a deactivated transmitter carries a message")
        for i, cancels in enumerate(self.cancellation_sets, start=1):
            if i in self.active_users:
                if i in cancels:
                    raise InvalidDimensions(
                        f"cancellation set {i} contains its own receiver")
                if not cancels <= self.active_users:
                    raise InvalidDimensions(
                        f"cancellation set {i} names inactive receivers")
            elif cancels:
                raise InvalidDimensions(f"inactive user {i} has a cancellation set")


@dataclass(frozen=True)
class BeamDesign:
    """Unit-norm beam weights per active message, keyed by transmitter."""

    beams: dict[int, dict[int, complex]]


def effective_gain(net: Network, beam: Mapping[int, complex], receiver: int) -> complex:
    """Combined channel gain of a beam at one receiver; 0 when unreached."""
    return sum(
        (net.coefficients[(receiver, j)] * w
         for j, w in beam.items() if (receiver, j) in net.coefficients),
        start=0j,
    )


def design_beam(net: Network, transmit_set, cancel_set, receiver: int) -> dict[int, complex]:
    """Unit-norm weights over ``transmit_set`` nulling every ``cancel_set`` receiver.

    The weights come from an orthonormal basis of the cancellation matrix's
    null space (numerical rank via singular values, threshold
    sigma_max * max(rows, cols) * 1e-12).  Among the basis vectors, the one
    with the largest intended-gain magnitude is returned, which is
    deterministic for a fixed network.

    Raises Disconnected when ``receiver`` hears none of the transmitters, and
    Infeasible when the null space is trivial or every basis vector leaves
    the intended gain at or below GAIN_FLOOR.
    """
    txs = sorted(transmit_set)
    if not txs:
        raise InvalidDimensions("transmit set is empty")
    target_row = np.array(
        [net.coefficients.get((receiver, j), 0j) for j in txs], dtype=complex)
    if not np.any(target_row):
        raise Disconnected(
            f"receiver {receiver} hears none of {txs}", receiver)
    rows = sorted(cancel_set)
    if rows:
        constraints = np.array(
            [[net.coefficients.get((r, j), 0j) for j in txs] for r in rows],
            dtype=complex)
        _, singular, vh = np.linalg.svd(constraints)
        cutoff = singular[0] * max(constraints.shape) * RANK_RTOL
        rank = int(np.count_nonzero(singular > cutoff))
        null_vectors = vh[rank:].conj()
        if null_vectors.shape[0] == 0:
            raise Infeasible(
                f"cancellation at {rows} exhausts all {len(txs)} beam dimensions",
                receiver)
    else:
        null_vectors = np.eye(len(txs), dtype=complex)
    gains = null_vectors @ target_row
    best = int(np.argmax(np.abs(gains)))
    if abs(gains[best]) <= GAIN_FLOOR:
        raise Infeasible(
            f"no null-space direction reaches receiver {receiver}", receiver)
    return {j: complex(w) for j, w in zip(txs, null_vectors[best])}


def design_all(net: Network, plan: SchemePlan) -> BeamDesign:
    """Beam for every active message; raises on the first infeasible one.

    Nothing partial escapes: the exception carries the failing message index.
    """
    beams: dict[int, dict[int, complex]] = {}
    for i in sorted(plan.active_users):
        beams[i] = design_beam(
            net, plan.assignment.transmit_sets[i - 1],
            plan.cancellation_sets[i - 1], i)
    return BeamDesign(beams)


@dataclass(frozen=True)
class ReceiverReport:
    receiver: int
    own_gain_abs: float
    worst_leak_abs: float
    passed: bool


@dataclass(frozen=True)
class VerifyReport:
    passed: bool
    dof: int
    receivers: tuple[ReceiverReport, ...]


def verify(net: Network, plan: SchemePlan, design: BeamDesign,
           tol: float = 1e-9) -> VerifyReport:
    """Check every active receiver sees its own message and nobody else's.

    All cross-message leakage counts, not just the declared cancellation
    targets, so deactivation and clustering mistakes are caught here.  A
    receiver passes when its own gain exceeds GAIN_FLOOR and the worst leak
    stays below tol times that gain.
    """
    reports = []
    active = sorted(plan.active_users)
    for r in active:
        own = abs(effective_gain(net, design.beams[r], r))
        worst = 0.0
        for i in active:
            if i != r:
                worst = max(worst, abs(effective_gain(net, design.beams[i], r)))
        reports.append(ReceiverReport(r, own, worst,
                                      own > GAIN_FLOOR and worst < tol * own))
    passed = all(rep.passed for rep in reports)
    dof = len(reports) if passed else sum(rep.passed for rep in reports)
    return VerifyReport(passed, dof, tuple(reports))


def count_zf_dof(net: Network, plan: SchemePlan, design: BeamDesign,
                 tol: float = 1e-9) -> int:
    """Interference-free user count delivered by a design."""
    return verify(net, plan, design, tol).dof


def receivers_reached(net: Network, transmit_set) -> frozenset[int]:
    """All receivers hearing at least one member of the transmit set."""
    reached: set[int] = set()
    for j in transmit_set:
        reached.update(receivers_of(net, j))
    return frozenset(reached)


def serialize_plan(plan: SchemePlan, order: int) -> str:
    """Render the plan document; ``order`` is the design cooperation order."""
    doc = {
        "K": plan.K,
        "M": order,
        "active_users": sorted(plan.active_users),
        "deactivated_transmitters": sorted(plan.deactivated_transmitters),
        "transmit_sets": [sorted(t) for t in plan.assignment.transmit_sets],
        "cancellation_sets": [sorted(c) for c in plan.cancellation_sets],
    }
    return json.dumps(doc, indent=2) + "\n"


def deserialize_plan(text: str) -> tuple[SchemePlan, int]:
    """Parse a plan document back into a plan plus its stated order."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    for name in ("K", "M", "active_users", "deactivated_transmitters",
                 "transmit_sets", "cancellation_sets"):
        if name not in doc:
            raise ParseError(f"missing field {name!r}")
    K, order = doc["K"], doc["M"]
    for name, value in (("K", K), ("M", order)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ParseError(f"field {name!r} must be an integer")

    def index_list(name, entry):
        if not isinstance(entry, list) or any(
                isinstance(v, bool) or not isinstance(v, int) for v in entry):
            raise ParseError(f"{name} must be a list of integers")
        return frozenset(entry)

    sets = doc["transmit_sets"]
    cancels = doc["cancellation_sets"]
    if not isinstance(sets, list) or not isinstance(cancels, list):
        raise ParseError("transmit_sets and cancellation_sets must be lists")
    try:
        plan = SchemePlan(
            K,
            Assignment(K, tuple(index_list(f"transmit_sets[{n}]", entry)
                                for n, entry in enumerate(sets))),
            index_list("active_users", doc["active_users"]),
            index_list("deactivated_transmitters",
                       doc["deactivated_transmitters"]),
            tuple(index_list(f"cancellation_sets[{n}]", entry)
                  for n, entry in enumerate(cancels)),
        )
    except (InvalidDimensions, IndexOutOfRange) as exc:
        raise ParseError(str(exc)) from exc
    return plan, order
