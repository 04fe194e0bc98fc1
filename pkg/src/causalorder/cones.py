"""Translation-invariant cone orders and their black-box classification.

An order invariant under translations, spatial isometries, and
dilations is induced by membership of v - u in a fixed cone.  The
closed speed-c cone gives the causal order, its interior (plus the
apex) the subluminal one, and the open upper half-space (plus the apex)
the temporal order.  classify_cone recovers the family, orientation,
and speed of an unknown membership oracle from finitely many probes.

Closedness cannot be decided topologically from finitely many samples;
it is operationalized by one exact probe at the estimated boundary
speed.  The bisection runs on a dyadic bracket,
so any exactly representable boundary speed is probed exactly and the
convention gives the right answer for cleanly specified cones.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

import numpy as np

from .order import Direction, Event, OrderKind

DEFAULT_PROBE_SPAN = 8.0


class ConeKind(Enum):
    CAUSAL = "causal"
    SUBLUMINAL = "subluminal"
    TEMPORAL = "temporal"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConeOracle:
    """Black-box cone membership plus the box probes may range over
    (space axes first, time axis last)."""

    membership: Callable[[Event], bool]
    dimension: int
    probe_box: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        if not 0 <= self.dimension <= 8:
            raise ValueError("space dimension must be in [0, 8]")
        box = tuple((float(lo), float(hi)) for lo, hi in self.probe_box)
        if len(box) != self.dimension + 1:
            raise ValueError(
                f"probe box needs {self.dimension + 1} axes, got {len(box)}"
            )
        for lo, hi in box:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("probe box axes need finite lo < hi")
        object.__setattr__(self, "probe_box", box)


@dataclass(frozen=True)
class ConeEvidence:
    probes: int
    bracket: tuple[float, float] | None = None
    boundary_member: bool | None = None
    witness: str | None = None


@dataclass(frozen=True)
class ConeClass:
    kind: ConeKind
    direction: Direction | None
    c_estimate: float | None
    evidence: ConeEvidence

    def __post_init__(self) -> None:
        has_c = self.c_estimate is not None
        needs_c = self.kind in (ConeKind.CAUSAL, ConeKind.SUBLUMINAL)
        if has_c != needs_c:
            raise ValueError("c_estimate is present exactly for causal/subluminal")


def _neg(e: Event) -> Event:
    return Event(-e.t, tuple(-v for v in e.x))


def _norm(vec: Sequence[float]) -> float:
    s = 0.0
    for v in vec:
        s += v * v
    return math.sqrt(s)


def standard_cone(
    kind: OrderKind, direction: Direction, c: float, n: int
) -> ConeOracle:
    """Reference oracle for the three families at speed c in dimension n."""
    if kind is not OrderKind.TEMPORAL and not (math.isfinite(c) and c > 0):
        raise ValueError("c must be positive and finite")
    if not 0 <= n <= 8:
        raise ValueError("space dimension must be in [0, 8]")

    def fwd(e: Event) -> bool:
        if e.t == 0.0:
            return all(v == 0.0 for v in e.x)
        if e.t < 0.0:
            return False
        if kind is OrderKind.TEMPORAL:
            return True
        dist = _norm(e.x)
        return dist <= c * e.t if kind is OrderKind.CAUSAL else dist < c * e.t

    member = fwd if direction is Direction.FORWARD else (lambda e: fwd(_neg(e)))
    box = tuple((-DEFAULT_PROBE_SPAN, DEFAULT_PROBE_SPAN) for _ in range(n + 1))
    return ConeOracle(member, n, box)


def affine_cone(base: ConeOracle, matrix) -> ConeOracle:
    """Wrap an oracle with a linear map of (x, t); handy for building
    deliberately non-invariant membership predicates."""
    m = np.asarray(matrix, dtype=float)
    n = base.dimension
    if m.shape != (n + 1, n + 1):
        raise ValueError(f"matrix must have shape ({n + 1}, {n + 1})")

    def member(e: Event) -> bool:
        vec = m @ np.array(list(e.x) + [e.t])
        return base.membership(Event(float(vec[-1]), tuple(float(v) for v in vec[:-1])))

    return ConeOracle(member, n, base.probe_box)


def cone_order_leq(oracle: ConeOracle, u: Event, v: Event) -> bool:
    """u <= v in the order induced by the cone: membership of v - u."""
    if u.n != oracle.dimension or v.n != oracle.dimension:
        raise ValueError("event dimension does not match the oracle")
    diff = Event(v.t - u.t, tuple(b - a for a, b in zip(u.x, v.x)))
    return bool(oracle.membership(diff))


@dataclass(frozen=True)
class InvarianceReport:
    passed: bool
    checks: int
    counterexample: str | None = None


def _haar_orthogonal(rng: np.random.Generator, n: int) -> np.ndarray:
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def check_invariance(
    oracle: ConeOracle, n_samples: int = 200, seed: int = 0
) -> InvarianceReport:
    """Spot-check the symmetries a cone order must have: membership
    invariance under spatial isometries and dilations, and order-level
    invariance under spatial translations."""
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = oracle.dimension
    lo = np.array([a for a, _ in oracle.probe_box])
    hi = np.array([b for _, b in oracle.probe_box])
    draws = rng.uniform(lo, hi, size=(n_samples, n + 1))
    events = [Event(float(r[-1]), tuple(float(v) for v in r[:-1])) for r in draws]
    checks = 0
    for i, e in enumerate(events):
        member = oracle.membership(e)
        if n > 0:
            q = _haar_orthogonal(rng, n)
            rx = q @ np.asarray(e.x)
            rot = Event(e.t, tuple(float(v) for v in rx))
            checks += 1
            if oracle.membership(rot) != member:
                return InvarianceReport(
                    False,
                    checks,
                    f"rotation broke membership at {e} (rotated to {rot})",
                )
        r = float(rng.uniform(0.1, 10.0))
        scaled = Event(r * e.t, tuple(r * v for v in e.x))
        checks += 1
        if oracle.membership(scaled) != member:
            return InvarianceReport(
                False,
                checks,
                f"dilation by {r!r} broke membership at {e}",
            )
        if i + 1 < len(events):
            u, v = e, events[i + 1]
            shift = tuple(float(s) for s in rng.uniform(lo[:n], hi[:n])) if n else ()
            su = Event(u.t, tuple(a + d for a, d in zip(u.x, shift)))
            sv = Event(v.t, tuple(a + d for a, d in zip(v.x, shift)))
            checks += 1
            if cone_order_leq(oracle, u, v) != cone_order_leq(oracle, su, sv):
                return InvarianceReport(
                    False,
                    checks,
                    f"translation by {shift} broke the order at ({u}, {v})",
                )
    return InvarianceReport(True, checks)


def _next_pow2(x: float) -> float:
    if x <= 0:
        raise ValueError("need a positive bound")
    m, e = math.frexp(x)
    return float(2.0 ** (e - 1)) if m == 0.5 else float(2.0**e)


def _significand_bits(f: float) -> int:
    if f == 0.0:
        return 0
    m, _ = math.frexp(abs(f))
    mi = int(m * 2**53)
    return 53 - ((mi & -mi).bit_length() - 1)


def classify_cone(
    oracle: ConeOracle, budget: int = 100_000, seed: int = 0, tol: float = 0.01
) -> ConeClass:
    """Identify the family, orientation, and speed of a cone oracle.

    Steps: orient via the pure-time probes (0, +-1); bisect the member
    speed at |t| = 1 along one axis (rotation invariance makes one ray
    representative) over a power-of-two bracket; membership at the
    bracket's top means the speed exceeds what the probe box can
    distinguish from the temporal family.  One exact boundary probe at
    the estimated speed settles causal (member) versus subluminal
    (non-member).  Membership that fails the doubling law v in C =>
    2v in C on sampled points yields kind=unknown with a witness.

    With n = 0 all three families describe the same set; reported as
    temporal.
    """
    if budget < 16:
        raise ValueError("budget too small to classify")
    if not (0 < tol < 1):
        raise ValueError("tol must be in (0, 1)")
    n = oracle.dimension
    count = 0

    def member(e: Event) -> bool:
        nonlocal count
        count += 1
        if count > budget:
            raise ValueError(f"probe budget {budget} exhausted")
        return bool(oracle.membership(e))

    zero = Event(0.0, tuple(0.0 for _ in range(n)))
    if not member(zero):
        return ConeClass(
            ConeKind.UNKNOWN,
            None,
            None,
            ConeEvidence(count, witness="origin is not a member"),
        )
    up = member(Event(1.0, zero.x))
    down = member(Event(-1.0, zero.x))
    if up == down:
        which = "both" if up else "neither"
        return ConeClass(
            ConeKind.UNKNOWN,
            None,
            None,
            ConeEvidence(count, witness=f"{which} of (0, +1) and (0, -1) are members"),
        )
    direction = Direction.FORWARD if up else Direction.BACKWARD
    sgn = 1.0 if up else -1.0
    # Dilation spot-check on the established member.
    if not member(Event(2.0 * sgn, zero.x)):
        return ConeClass(
            ConeKind.UNKNOWN,
            direction,
            None,
            ConeEvidence(count, witness="(0, t) member but (0, 2t) is not"),
        )
    if n == 0:
        return ConeClass(ConeKind.TEMPORAL, direction, None, ConeEvidence(count))

    def axis_event(speed: float) -> Event:
        x = [0.0] * n
        x[0] = speed
        return Event(sgn, tuple(x))

    raw_bound = _norm([max(abs(lo), abs(hi)) for lo, hi in oracle.probe_box[:n]])
    bound = _next_pow2(raw_bound)
    if member(axis_event(bound)):
        return ConeClass(ConeKind.TEMPORAL, direction, None, ConeEvidence(count))
    lo_s, hi_s = 0.0, bound
    while count < budget:
        mid = 0.5 * (lo_s + hi_s)
        if mid == lo_s or mid == hi_s:
            break
        if member(axis_event(mid)):
            lo_s = mid
        else:
            hi_s = mid
    # The boundary speed is one of the bracket ends; prefer the cleaner
    # dyadic, which is the exact speed whenever one was specified.
    c_hat = lo_s if _significand_bits(lo_s) < _significand_bits(hi_s) else hi_s
    inner = axis_event(lo_s)
    doubled = Event(2.0 * inner.t, tuple(2.0 * v for v in inner.x))
    if lo_s > 0.0 and not member(doubled):
        return ConeClass(
            ConeKind.UNKNOWN,
            direction,
            None,
            ConeEvidence(
                count,
                bracket=(lo_s, hi_s),
                witness=f"member at speed {lo_s!r} fails doubling",
            ),
        )
    boundary = member(axis_event(c_hat))
    # A cone is closed under doubling; spot-check sampled members.
    # Doubling is exact in binary floats, so honest oracles never trip this.
    rng = np.random.default_rng(seed)
    lo = np.array([a for a, _ in oracle.probe_box])
    hi = np.array([b for _, b in oracle.probe_box])
    found = 0
    for _ in range(64):
        if found >= 8:
            break
        draw = rng.uniform(lo, hi)
        v = Event(float(draw[-1]), tuple(float(s) for s in draw[:-1]))
        if not member(v):
            continue
        found += 1
        doubled = Event(2.0 * v.t, tuple(2.0 * s for s in v.x))
        if not member(doubled):
            return ConeClass(
                ConeKind.UNKNOWN,
                direction,
                None,
                ConeEvidence(
                    count,
                    bracket=(lo_s, hi_s),
                    witness=f"member {v} fails doubling",
                ),
            )
    kind = ConeKind.CAUSAL if boundary else ConeKind.SUBLUMINAL
    return ConeClass(
        kind,
        direction,
        float(c_hat),
        ConeEvidence(count, bracket=(lo_s, hi_s), boundary_member=boundary),
    )
