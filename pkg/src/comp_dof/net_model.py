"""Banded interference-network topologies with generic complex channel gains.

Two connectivity kinds are supported: the asymmetric chain, where transmitter
j reaches receivers j and j+1, and the locally connected chain of width L,
where receiver i hears transmitters i-floor(L/2) .. i+ceil(L/2).  Both can be
closed into a ring (``cyclic``).  All node indices are 1-based.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, InvalidDimensions, ParseError

WYNER_ASYMMETRIC = "wyner-asymmetric"
LOCALLY_CONNECTED = "locally-connected"
KINDS = (WYNER_ASYMMETRIC, LOCALLY_CONNECTED)

# gains are sampled with magnitude in [MAG_LOW, MAG_HIGH] and uniform phase
MAG_LOW, MAG_HIGH = 0.5, 2.0
# hard floor keeping every stored coefficient away from zero
MIN_MAGNITUDE = 1e-3


def _check_dims(kind: str, K: int, L: int) -> None:
    if kind not in KINDS:
        raise InvalidDimensions(f"unknown topology kind: {kind!r}")
    if K < 1:
        raise InvalidDimensions(f"user count K must be positive, got {K}")
    if L < 1:
        raise InvalidDimensions(f"connectivity width L must be positive, got {L}")
    if kind == WYNER_ASYMMETRIC and L != 1:
        raise InvalidDimensions("wyner-asymmetric networks require L = 1")
    if kind == LOCALLY_CONNECTED and L >= K:
        raise InvalidDimensions(
            f"locally-connected networks require L < K, got L={L}, K={K}")


def support_pairs(kind: str, K: int, L: int, cyclic: bool) -> set[tuple[int, int]]:
    """Exact set of (receiver, transmitter) pairs carrying a nonzero gain."""
    _check_dims(kind, K, L)
    pairs = set()
    if kind == WYNER_ASYMMETRIC:
        for j in range(1, K + 1):
            for i in (j, j + 1):
                if 1 <= i <= K:
                    pairs.add((i, j))
        if cyclic:
            pairs.add((1, K))
    else:
        below, above = L // 2, (L + 1) // 2
        for i in range(1, K + 1):
            for j in range(i - below, i + above + 1):
                if cyclic:
                    pairs.add((i, (j - 1) % K + 1))
                elif 1 <= j <= K:
                    pairs.add((i, j))
    return pairs


@dataclass(frozen=True)
class Network:
    """Immutable topology plus one generic draw of channel coefficients."""

    kind: str
    K: int
    L: int
    cyclic: bool
    seed: int
    coefficients: dict[tuple[int, int], complex] = field(repr=False)

    def __post_init__(self):
        expected = support_pairs(self.kind, self.K, self.L, self.cyclic)
        got = set(self.coefficients)
        if got != expected:
            extra = sorted(got - expected)
            missing = sorted(expected - got)
            raise InvalidDimensions(
                "coefficient support mismatch: "
                f"extra={extra[:4]} missing={missing[:4]}")
        for key, c in self.coefficients.items():
            if abs(c) < MIN_MAGNITUDE:
                raise InvalidDimensions(
                    f"coefficient at {key} is below the magnitude floor")


def build_network(kind: str, K: int, L: int = 1, cyclic: bool = False,
                  seed: int = 0) -> Network:
    """Sample a network with independent gains, deterministic in ``seed``.

    Magnitudes are uniform in [0.5, 2] and phases uniform in [0, 2*pi), drawn
    in sorted support order so identical parameters reproduce identical maps.
    """
    rng = np.random.default_rng(seed)
    coefficients = {}
    for pair in sorted(support_pairs(kind, K, L, cyclic)):
        mag = rng.uniform(MAG_LOW, MAG_HIGH)
        phase = rng.uniform(0.0, 2.0 * math.pi)
        coefficients[pair] = mag * cmath.exp(1j * phase)
    return Network(kind, K, L, cyclic, seed, coefficients)


def _check_node(net: Network, index: int, what: str) -> None:
    if not 1 <= index <= net.K:
        raise IndexOutOfRange(f"{what} {index} outside [1, {net.K}]")


def transmitters_of(net: Network, receiver: int) -> list[int]:
    """Transmitters heard by ``receiver``, ascending."""
    _check_node(net, receiver, "receiver")
    # support offsets never exceed L+1, including cyclic wrap-around
    reach = net.L + 1
    candidates = {(receiver - 1 + d) % net.K + 1 for d in range(-reach, reach + 1)}
    return sorted(j for j in candidates if (receiver, j) in net.coefficients)


def receivers_of(net: Network, transmitter: int) -> list[int]:
    """Receivers that hear ``transmitter``, ascending."""
    _check_node(net, transmitter, "transmitter")
    reach = net.L + 1
    candidates = {(transmitter - 1 + d) % net.K + 1 for d in range(-reach, reach + 1)}
    return sorted(i for i in candidates if (i, transmitter) in net.coefficients)


def serialize_network(net: Network) -> str:
    """Render the network document (JSON, stable field and entry order)."""
    doc = {
        "kind": net.kind,
        "K": net.K,
        "L": net.L,
        "cyclic": net.cyclic,
        "seed": net.seed,
        "coefficients": [
            {"i": i, "j": j, "re": c.real, "im": c.imag}
            for (i, j), c in sorted(net.coefficients.items())
        ],
    }
    return json.dumps(doc, indent=2) + "\n"


def _field(doc: dict, name: str, kind: type, where: str = "document"):
    if name not in doc:
        raise ParseError(f"{where}: missing field {name!r}")
    value = doc[name]
    if kind is int and isinstance(value, bool):
        raise ParseError(f"{where}: field {name!r} must be an integer")
    if kind is float and isinstance(value, int) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, kind):
        raise ParseError(f"{where}: field {name!r} must be {kind.__name__}")
    return value


def deserialize_network(text: str) -> Network:
    """Parse a network document; the inverse of :func:`serialize_network`.

    Raises ParseError naming the offending field, including coefficients that
    fall outside the support prescribed by the topology kind.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document root must be an object")
    kind = _field(doc, "kind", str)
    K = _field(doc, "K", int)
    L = _field(doc, "L", int)
    cyclic = _field(doc, "cyclic", bool)
    seed = _field(doc, "seed", int)
    entries = _field(doc, "coefficients", list)
    coefficients: dict[tuple[int, int], complex] = {}
    for n, entry in enumerate(entries):
        where = f"coefficients[{n}]"
        if not isinstance(entry, dict):
            raise ParseError(f"{where}: entry must be an object")
        i = _field(entry, "i", int, where)
        j = _field(entry, "j", int, where)
        re = _field(entry, "re", float, where)
        im = _field(entry, "im", float, where)
        if (i, j) in coefficients:
            raise ParseError(f"{where}: duplicate coefficient for ({i}, {j})")
        coefficients[(i, j)] = complex(re, im)
    try:
        return Network(kind, K, L, cyclic, seed, coefficients)
    except InvalidDimensions as exc:
        raise ParseError(str(exc)) from exc
