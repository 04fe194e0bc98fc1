"""Exact order predicates on flat (n+1)-dimensional space-time.

An event is a point (t, x) with a time coordinate and an n-dimensional
spatial part, 0 <= n <= 8.  Three order families are supported, each
parameterized by a signal speed c > 0:

* causal      u precedes v when v is reachable from u at speed <= c,
* subluminal  reachable at speed strictly below c,
* temporal    comparability by the time coordinate alone.

All three are exposed as reflexive partial orders.  Predicates are pure
and exact over IEEE doubles; nothing here applies a tolerance unless the
caller passes one explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

MAX_SPACE_DIM = 8

ORTHOGONALITY_TOL = 1e-9


class OrderKind(Enum):
    CAUSAL = "causal"
    SUBLUMINAL = "subluminal"
    TEMPORAL = "temporal"


class Direction(Enum):
    FORWARD = "fwd"
    BACKWARD = "bwd"


class PairClass(Enum):
    EQUAL = "equal"
    TIMELIKE_FORWARD = "timelike-forward"
    LIGHTLIKE_FORWARD = "lightlike-forward"
    SPACELIKE = "spacelike"
    LIGHTLIKE_BACKWARD = "lightlike-backward"
    TIMELIKE_BACKWARD = "timelike-backward"


_MIRROR = {
    PairClass.EQUAL: PairClass.EQUAL,
    PairClass.TIMELIKE_FORWARD: PairClass.TIMELIKE_BACKWARD,
    PairClass.LIGHTLIKE_FORWARD: PairClass.LIGHTLIKE_BACKWARD,
    PairClass.SPACELIKE: PairClass.SPACELIKE,
    PairClass.LIGHTLIKE_BACKWARD: PairClass.LIGHTLIKE_FORWARD,
    PairClass.TIMELIKE_BACKWARD: PairClass.TIMELIKE_FORWARD,
}

_FORWARD_CAUSAL = frozenset(
    {PairClass.EQUAL, PairClass.TIMELIKE_FORWARD, PairClass.LIGHTLIKE_FORWARD}
)
_FORWARD_SUBLUMINAL = frozenset({PairClass.EQUAL, PairClass.TIMELIKE_FORWARD})


@dataclass(frozen=True)
class Event:
    """A space-time point: time coordinate plus spatial tuple."""

    t: float
    x: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        t = float(self.t)
        x = tuple(float(v) for v in self.x)
        if len(x) > MAX_SPACE_DIM:
            raise ValueError(f"space dimension {len(x)} exceeds {MAX_SPACE_DIM}")
        if not math.isfinite(t) or not all(math.isfinite(v) for v in x):
            raise ValueError("event coordinates must be finite")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)

    @property
    def n(self) -> int:
        return len(self.x)


def event(t: float, *xs: float) -> Event:
    """Shorthand constructor: event(t, x1, ..., xn)."""
    return Event(float(t), tuple(float(v) for v in xs))


@dataclass(frozen=True)
class OrderSpec:
    """Which order family to use, at which signal speed and orientation.

    c is ignored by the temporal order (kept for uniform plumbing).
    The backward direction is the dual order: leq(u, v) becomes the
    forward relation evaluated on (v, u).
    """

    kind: OrderKind
    c: float = 1.0
    direction: Direction = Direction.FORWARD

    def __post_init__(self) -> None:
        if self.kind is not OrderKind.TEMPORAL:
            if not (math.isfinite(self.c) and self.c > 0):
                raise ValueError("c must be positive and finite")


def _require_same_dim(u: Event, v: Event) -> None:
    if u.n != v.n:
        raise ValueError(f"dimension mismatch: {u.n} vs {v.n}")


def _separation(u: Event, v: Event) -> tuple[float, float]:
    # Accumulation order is fixed (axis 0, 1, ...) so that scalar and
    # vectorized code paths agree bit for bit.
    dt = v.t - u.t
    s = 0.0
    for a, b in zip(u.x, v.x):
        d = b - a
        s += d * d
    return dt, math.sqrt(s)


def classify_pair(u: Event, v: Event, c: float, eps: float = 0.0) -> PairClass:
    """Classify the ordered pair (u, v) relative to the speed-c cone.

    eps is a relative tolerance for the cone boundary: the pair counts
    as light-like when |dist - c*dt| <= eps * max(dist, c*dt).  The
    default 0 keeps the boundary comparison exact.  Pairs with equal
    times and distinct positions are always space-like.
    """
    _require_same_dim(u, v)
    if not (math.isfinite(c) and c > 0):
        raise ValueError("c must be positive and finite")
    if eps < 0 or not math.isfinite(eps):
        raise ValueError("eps must be finite and >= 0")
    if u == v:
        return PairClass.EQUAL
    dt, dist = _separation(u, v)
    if dt == 0.0:
        return PairClass.SPACELIKE
    if dt < 0.0:
        return _MIRROR[classify_pair(v, u, c, eps)]
    cdt = c * dt
    if abs(dist - cdt) <= eps * max(dist, cdt):
        return PairClass.LIGHTLIKE_FORWARD
    if dist < cdt:
        return PairClass.TIMELIKE_FORWARD
    return PairClass.SPACELIKE


def leq(spec: OrderSpec, u: Event, v: Event) -> bool:
    """Reflexive relation u <= v under the given order spec."""
    if spec.direction is Direction.BACKWARD:
        u, v = v, u
    if spec.kind is OrderKind.TEMPORAL:
        _require_same_dim(u, v)
        return u == v or u.t < v.t
    cls = classify_pair(u, v, spec.c)
    allowed = _FORWARD_CAUSAL if spec.kind is OrderKind.CAUSAL else _FORWARD_SUBLUMINAL
    return cls in allowed


def strictly_below(spec: OrderSpec, u: Event, v: Event) -> bool:
    return u != v and leq(spec, u, v)


def comparable(spec: OrderSpec, u: Event, v: Event) -> bool:
    return leq(spec, u, v) or leq(spec, v, u)


def pairwise_comparable(spec: OrderSpec, events: Iterable[Event]) -> bool:
    """True when every pair drawn from events is comparable under spec."""
    evs = list(events)
    for i in range(len(evs)):
        for j in range(i + 1, len(evs)):
            if not comparable(spec, evs[i], evs[j]):
                return False
    return True


def interval_is_chain(a: Event, b: Event, c: float) -> bool:
    """Whether the causal order interval [a, b] is totally ordered.

    The interval of a light-like pair is the straight segment joining
    the endpoints, hence a chain; a time-like interval contains
    incomparable pairs.  Requires a <= b causally.
    """
    cls = classify_pair(a, b, c)
    if cls in (PairClass.EQUAL, PairClass.LIGHTLIKE_FORWARD):
        return True
    if cls is PairClass.TIMELIKE_FORWARD:
        return False
    raise ValueError("endpoints must satisfy a <= b in the causal order")


def _interval_box(a: Event, b: Event, c: float) -> tuple[tuple[float, float], list[tuple[float, float]]]:
    # Any p in [a, b] stays within c*dt of both endpoints, so this box
    # covers the whole interval.
    dt = b.t - a.t
    pad = 0.5 * c * dt
    spans = [
        (min(xa, xb) - pad, max(xa, xb) + pad) for xa, xb in zip(a.x, b.x)
    ]
    return (a.t, b.t), spans


def interval_is_chain_sampled(
    a: Event, b: Event, c: float, samples: int = 1000, seed: int = 0
) -> bool:
    """Randomized oracle for interval_is_chain.

    Draws `samples` points uniformly from a bounding box of [a, b],
    keeps those inside the interval, and reports False as soon as two
    kept points (or a kept point and an endpoint) are incomparable.
    Deterministic for a fixed seed.
    """
    if samples < 2:
        raise ValueError("need at least 2 samples")
    spec = OrderSpec(OrderKind.CAUSAL, c)
    if not leq(spec, a, b):
        raise ValueError("endpoints must satisfy a <= b in the causal order")
    if a == b:
        return True
    rng = np.random.default_rng(seed)
    (t_lo, t_hi), spans = _interval_box(a, b, c)
    ts = rng.uniform(t_lo, t_hi, size=samples)
    cols = [rng.uniform(lo, hi, size=samples) for lo, hi in spans]
    kept: list[Event] = []
    for i in range(samples):
        p = Event(float(ts[i]), tuple(float(col[i]) for col in cols))
        if leq(spec, a, p) and leq(spec, p, b):
            kept.append(p)
    for i in range(len(kept)):
        if not (comparable(spec, a, kept[i]) and comparable(spec, kept[i], b)):
            return False
        for j in range(i + 1, len(kept)):
            if not comparable(spec, kept[i], kept[j]):
                return False
    return True


def subluminal_via_weakening(a: Event, b: Event, c: float) -> bool:
    """Subluminal relation obtained by weakening the causal one: keep
    a <= b only when the interval [a, b] fails to be a chain (or the
    endpoints coincide).  Coincides with the strict-cone definition."""
    if not leq(OrderSpec(OrderKind.CAUSAL, c), a, b):
        return False
    if a == b:
        return True
    return not interval_is_chain(a, b, c)


def _in_closed_forward_cone(u: Event, v: Event, c: float) -> bool:
    dt, dist = _separation(u, v)
    if dt < 0.0:
        return False
    if dt == 0.0:
        return dist == 0.0
    return dist <= c * dt


def reconstruct_causal_analytic(u: Event, v: Event, c: float) -> bool:
    """Recover the causal relation from the subluminal one.

    u <= v causally iff u <= v subluminally already, or every event
    subluminally above v is subluminally above u.  The quantifier over
    all events collapses to a closed forward-cone membership test on
    v - u, which is evaluated here directly.  Agrees with leq(causal)
    on every pair.
    """
    _require_same_dim(u, v)
    if not (math.isfinite(c) and c > 0):
        raise ValueError("c must be positive and finite")
    if leq(OrderSpec(OrderKind.SUBLUMINAL, c), u, v):
        return True
    return _in_closed_forward_cone(u, v, c)


def reconstruct_causal_sampled(
    u: Event, v: Event, c: float, witnesses: Sequence[Event]
) -> bool:
    """Finite-witness version of reconstruct_causal_analytic.

    Checks the implication "v below w implies u below w" over the given
    witnesses only, skipping witnesses equal to u or v.  Never returns
    False for a truly related pair; unrelated pairs may slip through
    when no witness separates them.  Monotone in the witness set.
    """
    spec = OrderSpec(OrderKind.SUBLUMINAL, c)
    if leq(spec, u, v):
        return True
    for w in witnesses:
        if w == u or w == v:
            continue
        if leq(spec, v, w) and not leq(spec, u, w):
            return False
    return True


def apply_space_isometry(q, b, e: Event) -> Event:
    """Apply x -> Qx + b to the spatial part, leaving time unchanged.

    Q must be orthogonal within max|Q^T Q - I| <= 1e-9.
    """
    q = np.asarray(q, dtype=float)
    b = np.asarray(b, dtype=float)
    n = e.n
    if q.shape != (n, n):
        raise ValueError(f"Q must have shape ({n}, {n}), got {q.shape}")
    if b.shape != (n,):
        raise ValueError(f"b must have shape ({n},), got {b.shape}")
    if n > 0:
        err = np.max(np.abs(q.T @ q - np.eye(n)))
        if err > ORTHOGONALITY_TOL:
            raise ValueError(f"Q is not orthogonal (deviation {err:.3e})")
    x = q @ np.asarray(e.x, dtype=float) + b
    return Event(e.t, tuple(float(v) for v in x))


def apply_dilation(r: float, e: Event) -> Event:
    """Scale the whole event by r > 0: (t, x) -> (r t, r x)."""
    if not (math.isfinite(r) and r > 0):
        raise ValueError("dilation factor must be positive and finite")
    return Event(r * e.t, tuple(r * v for v in e.x))
