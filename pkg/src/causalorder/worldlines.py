"""Piecewise-linear world lines and their light-speed surgery.

A PolyWorldLine is the graph of a Lipschitz trajectory sampled at
vertices over a finite time window; every chord of such a line is
causally comparable, so the line is a chain of the causal order.
Removing the interior of each maximal light-speed stretch, together
with one of its two endpoints, produces a GapWorldLine: a chain of the
subluminal order with unreachable "optical gaps" in its time image.

The canonical two-ray chain built by canonical_gap_chain is the
degenerate extreme of that surgery: two static rays joined by a fully
removed light-speed segment.  Every point of it is strictly time-like
to the construction origin, so the chain misses every subluminal
antichain containing that origin, while its time image omits the whole
gap interval.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .order import Direction, Event, OrderKind, OrderSpec, comparable

SPEED_REL_TOL = 1e-9
DIR_DOT_TOL = 1e-12


def _norm(vec: Sequence[float]) -> float:
    s = 0.0
    for v in vec:
        s += v * v
    return math.sqrt(s)


@dataclass(frozen=True)
class PolyWorldLine:
    """Piecewise-linear trajectory: vertices (t_i, x_i) with strictly
    increasing times, every segment at speed <= c (relative tolerance
    1e-9 on the speed bound)."""

    vertices: tuple[tuple[float, tuple[float, ...]], ...]
    c: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.c) and self.c > 0):
            raise ValueError("c must be positive and finite")
        if len(self.vertices) < 2:
            raise ValueError("a world line needs at least 2 vertices")
        verts = []
        n = len(self.vertices[0][1])
        for t, x in self.vertices:
            e = Event(float(t), tuple(float(v) for v in x))  # validates finiteness
            if e.n != n:
                raise ValueError("all vertices must share one space dimension")
            verts.append((e.t, e.x))
        for i in range(len(verts) - 1):
            (t0, x0), (t1, x1) = verts[i], verts[i + 1]
            dt = t1 - t0
            if dt <= 0:
                raise ValueError(f"vertex times must strictly increase (index {i + 1})")
            dist = _norm([b - a for a, b in zip(x0, x1)])
            if dist > self.c * dt * (1.0 + SPEED_REL_TOL):
                raise ValueError(
                    f"segment {i} exceeds speed {self.c:g}: speed {dist / dt:.17g}"
                )
        object.__setattr__(self, "vertices", tuple(verts))
        object.__setattr__(self, "_times", tuple(t for t, _ in verts))

    @property
    def n(self) -> int:
        return len(self.vertices[0][1])

    @property
    def window(self) -> tuple[float, float]:
        return self.vertices[0][0], self.vertices[-1][0]

    def eval(self, t: float) -> tuple[float, ...]:
        """Position at time t: exact at vertices, linear in between."""
        times = self._times  # type: ignore[attr-defined]
        t0, t1 = times[0], times[-1]
        if t < t0 or t > t1:
            raise ValueError(f"time {t!r} outside window [{t0!r}, {t1!r}]")
        i = bisect_right(times, t) - 1
        if i == len(times) - 1:
            return self.vertices[-1][1]
        ta, xa = self.vertices[i]
        tb, xb = self.vertices[i + 1]
        if t == ta:
            return xa
        w = (t - ta) / (tb - ta)
        return tuple(a + (b - a) * w for a, b in zip(xa, xb))

    def event_at(self, t: float) -> Event:
        return Event(t, self.eval(t))

    def is_chain(self, spec: OrderSpec, sample_times: Sequence[float]) -> bool:
        """Pairwise comparability of the line at the given times."""
        t0, t1 = self.window
        for t in sample_times:
            if t < t0 or t > t1:
                raise ValueError(f"sample time {t!r} outside window")
        evs = [self.event_at(t) for t in sample_times]
        for i in range(len(evs)):
            for j in range(i + 1, len(evs)):
                if not comparable(spec, evs[i], evs[j]):
                    return False
        return True

    def extend_probe(self, p: Event, spec: OrderSpec, grid: int = 33) -> bool:
        """Whether p is comparable to the line at a vertex-plus-probe
        sample: the point sharing p's time, all vertices, and a uniform
        grid over the window.  False means p cannot extend the chain."""
        t0, t1 = self.window
        if p.t < t0 or p.t > t1:
            raise ValueError("probe time outside window; maximality is window-relative")
        if not comparable(spec, p, self.event_at(p.t)):
            return False
        for t, x in self.vertices:
            if not comparable(spec, p, Event(t, x)):
                return False
        for t in np.linspace(t0, t1, grid):
            if not comparable(spec, p, self.event_at(float(t))):
                return False
        return True

    def light_segments(self) -> tuple["LightSegment", ...]:
        """Maximal runs of consecutive segments at speed exactly c
        (relative tolerance 1e-9) with a common direction (unit-vector
        dot >= 1 - 1e-12).  Collinear neighbours merge, so the result
        is stable under inserting extra vertices along a run."""
        runs: list[LightSegment] = []
        cur: list | None = None  # [t_start, t_end, dir]
        for i in range(len(self.vertices) - 1):
            (t0, x0), (t1, x1) = self.vertices[i], self.vertices[i + 1]
            dt = t1 - t0
            dist = _norm([b - a for a, b in zip(x0, x1)])
            light = dist > 0.0 and abs(dist - self.c * dt) <= SPEED_REL_TOL * (self.c * dt)
            if not light:
                if cur is not None:
                    runs.append(LightSegment(cur[0], cur[1], cur[2]))
                    cur = None
                continue
            d = tuple((b - a) / dist for a, b in zip(x0, x1))
            if cur is not None and sum(p * q for p, q in zip(cur[2], d)) >= 1.0 - DIR_DOT_TOL:
                cur[1] = t1
            else:
                if cur is not None:
                    runs.append(LightSegment(cur[0], cur[1], cur[2]))
                cur = [t0, t1, d]
        if cur is not None:
            runs.append(LightSegment(cur[0], cur[1], cur[2]))
        return tuple(runs)


def make_polyline(
    vertices: Iterable[tuple[float, Sequence[float]]], c: float
) -> PolyWorldLine:
    """Build a PolyWorldLine, validating monotone times and the speed bound."""
    return PolyWorldLine(tuple((t, tuple(x)) for t, x in vertices), float(c))


@dataclass(frozen=True)
class LightSegment:
    """A maximal light-speed stretch: time range plus unit direction."""

    t_start: float
    t_end: float
    direction: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.t_start < self.t_end:
            raise ValueError("light segment needs t_start < t_end")
        object.__setattr__(self, "direction", tuple(float(v) for v in self.direction))


class KeptEnd(Enum):
    LOWER = "lower"
    UPPER = "upper"


@dataclass(frozen=True)
class Gap:
    """A removed light-speed stretch.  kept_end names the endpoint that
    stays in the point set; None removes both (two-ray construction)."""

    segment: LightSegment
    kept_end: KeptEnd | None


@dataclass(frozen=True)
class Ray:
    """Half-infinite straight branch, anchor excluded.  span +1 opens
    toward later times, -1 toward earlier ones."""

    anchor_t: float
    anchor_x: tuple[float, ...]
    velocity: tuple[float, ...]
    span: int

    def __post_init__(self) -> None:
        if self.span not in (-1, 1):
            raise ValueError("span must be +1 or -1")
        object.__setattr__(self, "anchor_x", tuple(float(v) for v in self.anchor_x))
        object.__setattr__(self, "velocity", tuple(float(v) for v in self.velocity))

    def covers(self, t: float) -> bool:
        return t > self.anchor_t if self.span > 0 else t < self.anchor_t

    def position(self, t: float) -> tuple[float, ...]:
        dt = t - self.anchor_t
        return tuple(x + v * dt for x, v in zip(self.anchor_x, self.velocity))


@dataclass(frozen=True)
class TimeSpan:
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def contains(self, t: float) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True


@dataclass(frozen=True)
class GapWorldLine:
    """A world line with its light-speed stretches cut out.

    Either base-backed (a PolyWorldLine minus gap interiors and the
    non-kept endpoint of every gap) or ray-backed (straight branches
    with open anchors, used for the canonical two-ray chain).
    """

    c: float
    base: PolyWorldLine | None
    gaps: tuple[Gap, ...]
    rays: tuple[Ray, ...] = ()

    def __post_init__(self) -> None:
        if self.base is None and not self.rays:
            raise ValueError("need a base world line or at least one ray")

    @property
    def n(self) -> int:
        if self.base is not None:
            return self.base.n
        return len(self.rays[0].anchor_x)

    def _time_in_base_set(self, t: float) -> bool:
        for gap in self.gaps:
            seg = gap.segment
            if seg.t_start < t < seg.t_end:
                return False
            if t == seg.t_start and gap.kept_end is not KeptEnd.LOWER:
                return False
            if t == seg.t_end and gap.kept_end is not KeptEnd.UPPER:
                return False
        return True

    def contains(self, p: Event, tol: float = 0.0) -> bool:
        """Membership of p in the represented point set.  tol bounds the
        spatial distance from the trajectory; time handling is exact, so
        removed gap endpoints report False even at distance zero."""
        if p.n != self.n:
            raise ValueError(f"dimension mismatch: {p.n} vs {self.n}")
        if tol < 0:
            raise ValueError("tol must be >= 0")
        for ray in self.rays:
            if ray.covers(p.t):
                d = _norm([a - b for a, b in zip(ray.position(p.t), p.x)])
                if d <= tol:
                    return True
        if self.base is not None:
            t0, t1 = self.base.window
            if t0 <= p.t <= t1 and self._time_in_base_set(p.t):
                d = _norm([a - b for a, b in zip(self.base.eval(p.t), p.x)])
                if d <= tol:
                    return True
        return False

    def time_image(self) -> tuple[TimeSpan, ...]:
        """Per-branch time ranges of the represented set."""
        spans: list[TimeSpan] = []
        for ray in self.rays:
            if ray.span < 0:
                spans.append(TimeSpan(-math.inf, ray.anchor_t, False, False))
            else:
                spans.append(TimeSpan(ray.anchor_t, math.inf, False, False))
        if self.base is not None:
            t0, t1 = self.base.window
            lo, lo_closed = t0, True
            for gap in sorted(self.gaps, key=lambda g: g.segment.t_start):
                seg = gap.segment
                spans.append(
                    TimeSpan(lo, seg.t_start, lo_closed, gap.kept_end is KeptEnd.LOWER)
                )
                lo, lo_closed = seg.t_end, gap.kept_end is KeptEnd.UPPER
            spans.append(TimeSpan(lo, t1, lo_closed, True))
        return tuple(sorted(spans, key=lambda s: (s.lo, s.hi)))

    def sample_times(
        self, per_branch: int = 40, margin: float = 1e-3, reach: float | None = None
    ) -> list[float]:
        """Deterministic dense time sample of the represented set.

        Ray branches are sampled from `margin` past the anchor out to
        `reach` (default ten times the largest gap span), with a few
        extra points hugging the anchor.
        """
        if reach is None:
            spans = [g.segment.t_end - g.segment.t_start for g in self.gaps]
            reach = 10.0 * max([1.0] + spans)
        times: list[float] = []
        if self.base is not None:
            t0, t1 = self.base.window
            cand = {t for t, _ in self.base.vertices}
            cand.update(float(t) for t in np.linspace(t0, t1, per_branch))
            for gap in self.gaps:
                cand.add(gap.segment.t_start)
                cand.add(gap.segment.t_end)
            times.extend(t for t in sorted(cand) if self._time_in_base_set(t))
        for ray in self.rays:
            offs = [margin, 2.0 * margin, 5.0 * margin]
            offs.extend(float(o) for o in np.linspace(10.0 * margin, reach, per_branch))
            times.extend(ray.anchor_t + ray.span * off for off in offs)
        return sorted(times)

    def sample_events(
        self, per_branch: int = 40, margin: float = 1e-3, reach: float | None = None
    ) -> list[Event]:
        out: list[Event] = []
        for t in self.sample_times(per_branch, margin, reach):
            out.append(Event(t, self._position(t)))
        return out

    def _position(self, t: float) -> tuple[float, ...]:
        for ray in self.rays:
            if ray.covers(t):
                return ray.position(t)
        if self.base is not None:
            t0, t1 = self.base.window
            if t0 <= t <= t1 and self._time_in_base_set(t):
                return self.base.eval(t)
        raise ValueError(f"time {t!r} not covered by the point set")

    def probe_sample(self, p: Event) -> list[Event]:
        """Dense sample for extension probes; points sharing p's time
        come first so off-line probes are rejected cheaply."""
        out: list[Event] = []
        for ray in self.rays:
            if ray.covers(p.t):
                out.append(Event(p.t, ray.position(p.t)))
        if self.base is not None:
            t0, t1 = self.base.window
            if t0 <= p.t <= t1 and self._time_in_base_set(p.t):
                out.append(self.base.event_at(p.t))
        out.extend(self.sample_events())
        return out


def make_gap_worldline(
    wl: PolyWorldLine, kept_ends: Sequence[KeptEnd | str | None]
) -> GapWorldLine:
    """Remove every maximal light-speed stretch of wl, keeping the named
    endpoint of each (None removes both endpoints).  Gaps must be
    pairwise disjoint and must not touch the window boundary."""
    segs = wl.light_segments()
    ends: list[KeptEnd | None] = []
    for k in kept_ends:
        if k is None or isinstance(k, KeptEnd):
            ends.append(k)
        elif isinstance(k, str):
            ends.append(KeptEnd(k))
        else:
            raise ValueError(f"kept end must be lower/upper/None, got {k!r}")
    if len(ends) != len(segs):
        raise ValueError(f"expected {len(segs)} kept-end choices, got {len(ends)}")
    t0, t1 = wl.window
    for seg in segs:
        if seg.t_start == t0 or seg.t_end == t1:
            raise ValueError("light segment touches the window boundary")
    for prev, nxt in zip(segs, segs[1:]):
        if prev.t_end >= nxt.t_start:
            raise ValueError("light segments share an endpoint")
    gaps = tuple(Gap(seg, end) for seg, end in zip(segs, ends))
    return GapWorldLine(c=wl.c, base=wl, gaps=gaps)


def gap_contains(gwl: GapWorldLine, p: Event, tol: float = 0.0) -> bool:
    return gwl.contains(p, tol)


def is_subluminal_chain_probe(
    gwl: GapWorldLine,
    p: Event,
    c: float | None = None,
    per_branch: int = 40,
    margin: float = 1e-3,
    reach: float | None = None,
) -> bool:
    """Whether p is subluminally comparable with a dense sample of the
    point set (kept gap endpoints included, removed points absent by
    construction).  False certifies that p cannot extend the chain."""
    spec = OrderSpec(OrderKind.SUBLUMINAL, gwl.c if c is None else c)
    seen: set[Event] = set()
    for q in gwl.probe_sample(p):
        if q in seen:
            continue
        seen.add(q)
        if not comparable(spec, p, q):
            return False
    return True


def canonical_gap_chain(
    origin: Event,
    light_dir: Sequence[float],
    t_len: float,
    c: float,
    orientation: Direction = Direction.FORWARD,
) -> GapWorldLine:
    """Two static rays separated by a removed light-speed segment.

    The forward construction sits at `origin` for all earlier times and,
    after a silent light-speed hop of duration t_len along light_dir,
    rests at the displaced position for all later times.  Both segment
    endpoints are removed, the origin itself included, so every point of
    the chain is strictly time-like to `origin`: the chain avoids any
    subluminal antichain through that event.  Its time image omits the
    whole interval [origin.t, origin.t + t_len].

    The backward orientation mirrors the construction in time.
    """
    d = tuple(float(v) for v in light_dir)
    if len(d) != origin.n:
        raise ValueError(f"dimension mismatch: {len(d)} vs {origin.n}")
    if origin.n == 0:
        raise ValueError("need at least one space dimension")
    nrm = _norm(d)
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"light direction must have unit norm, got {nrm!r}")
    if not (math.isfinite(t_len) and t_len > 0):
        raise ValueError("t_len must be positive and finite")
    if not (math.isfinite(c) and c > 0):
        raise ValueError("c must be positive and finite")
    zero = tuple(0.0 for _ in d)
    hop = tuple(x + c * t_len * v for x, v in zip(origin.x, d))
    if orientation is Direction.FORWARD:
        seg = LightSegment(origin.t, origin.t + t_len, d)
        rays = (
            Ray(origin.t, origin.x, zero, -1),
            Ray(origin.t + t_len, hop, zero, +1),
        )
    else:
        # Lower endpoint is the displaced position; motion runs back to origin.
        seg = LightSegment(origin.t - t_len, origin.t, tuple(-v for v in d))
        rays = (
            Ray(origin.t, origin.x, zero, +1),
            Ray(origin.t - t_len, hop, zero, -1),
        )
    return GapWorldLine(c=c, base=None, gaps=(Gap(seg, None),), rays=rays)
