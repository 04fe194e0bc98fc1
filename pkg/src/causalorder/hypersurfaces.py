"""Space-like hypersurfaces as graphs of strictly sub-critical Lipschitz
height functions, and the gradings they induce.

A surface is pinned at finitely many anchors (x_i, h_i) and extended
everywhere by the lower envelope h(x) = min_i(h_i + k ||x - x_i||).
With k c < 1 every chord of the graph {(x, h(x))} stays strictly
outside the speed-c cone, so any sample of the graph is an antichain of
the causal order.  The induced grading g(x, t) = t - h(x) is strictly
increasing along every world line with speed at most c, which makes
level crossings unique and cheap to bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .order import Event, PairClass, classify_pair
from .worldlines import PolyWorldLine


def _dist(a: Sequence[float], b: Sequence[float]) -> float:
    s = 0.0
    for p, q in zip(a, b):
        d = q - p
        s += d * d
    return math.sqrt(s)


@dataclass(frozen=True)
class Hypersurface:
    """Lower-envelope extension of consistent anchors.

    anchors: ((x_i, h_i), ...) with |h_i - h_j| <= k ||x_i - x_j||.
    modulus: the Lipschitz constant k, with 0 < k and k * c < 1.
    """

    anchors: tuple[tuple[tuple[float, ...], float], ...]
    modulus: float
    c: float

    def __post_init__(self) -> None:
        k = float(self.modulus)
        c = float(self.c)
        if not (math.isfinite(c) and c > 0):
            raise ValueError("c must be positive and finite")
        if not (math.isfinite(k) and k > 0):
            raise ValueError("modulus k must be positive and finite")
        if k * c >= 1.0:
            raise ValueError(f"need k*c < 1 for a space-like graph, got {k * c!r}")
        if not self.anchors:
            raise ValueError("need at least one anchor")
        norm: list[tuple[tuple[float, ...], float]] = []
        n = len(self.anchors[0][0])
        for x, h in self.anchors:
            xt = tuple(float(v) for v in x)
            hf = float(h)
            if len(xt) != n:
                raise ValueError("all anchors must share one space dimension")
            if not (math.isfinite(hf) and all(math.isfinite(v) for v in xt)):
                raise ValueError("anchor coordinates must be finite")
            norm.append((xt, hf))
        for i in range(len(norm)):
            for j in range(i + 1, len(norm)):
                (xi, hi), (xj, hj) = norm[i], norm[j]
                if abs(hi - hj) > k * _dist(xi, xj):
                    raise ValueError(
                        f"anchors {i} and {j} violate the Lipschitz bound"
                    )
        object.__setattr__(self, "anchors", tuple(norm))
        object.__setattr__(self, "modulus", k)
        object.__setattr__(self, "c", c)

    @property
    def dimension(self) -> int:
        return len(self.anchors[0][0])

    def height(self, x: Sequence[float]) -> float:
        """h(x) = min over anchors of h_i + k ||x - x_i||."""
        xt = tuple(float(v) for v in x)
        if len(xt) != self.dimension:
            raise ValueError(f"dimension mismatch: {len(xt)} vs {self.dimension}")
        k = self.modulus
        return min(h + k * _dist(xt, xa) for xa, h in self.anchors)

    def graph_event(self, x: Sequence[float]) -> Event:
        return Event(self.height(x), tuple(float(v) for v in x))


def make_hypersurface(
    anchors: Sequence[tuple[Sequence[float], float]], k: float, c: float
) -> Hypersurface:
    return Hypersurface(tuple((tuple(x), h) for x, h in anchors), float(k), float(c))


@dataclass(frozen=True)
class Grading:
    """The level function g(x, t) = t - h(x) of a hypersurface; the
    surface graph is exactly level zero."""

    surface: Hypersurface

    def value(self, e: Event) -> float:
        return e.t - self.surface.height(e.x)

    def level_contains(self, r: float, e: Event, tol: float = 0.0) -> bool:
        if tol < 0:
            raise ValueError("tol must be >= 0")
        return abs(self.value(e) - r) <= tol


def grading_value(g: Grading, e: Event) -> float:
    return g.value(e)


def level_contains(g: Grading, r: float, e: Event, tol: float = 0.0) -> bool:
    return g.level_contains(r, e, tol)


def is_antichain_sample(hs: Hypersurface, points: Sequence[Sequence[float]]) -> bool:
    """Lift the sample onto the graph and verify pairwise space-likeness.
    Duplicate positions collapse to one graph point."""
    lifted: list[Event] = []
    seen: set[tuple[float, ...]] = set()
    for x in points:
        xt = tuple(float(v) for v in x)
        if xt in seen:
            continue
        seen.add(xt)
        lifted.append(hs.graph_event(xt))
    for i in range(len(lifted)):
        for j in range(i + 1, len(lifted)):
            if classify_pair(lifted[i], lifted[j], hs.c) is not PairClass.SPACELIKE:
                return False
    return True


CROSSING_TOL = 1e-9
CROSSING_MAX_ITER = 200


def crossing_time(
    hs: Hypersurface,
    wl: PolyWorldLine,
    tol: float = CROSSING_TOL,
    max_iter: int = CROSSING_MAX_ITER,
    grid: int = 33,
) -> float:
    """Unique time at which wl crosses the surface graph.

    phi(t) = t - h(f(t)) grows at rate >= 1 - k*c > 0 along the line, so
    a sign change over the window brackets exactly one root; bisection
    stops at |phi| <= tol.  Raises when the crossing lies outside the
    window or the monotonicity spot-check fails.
    """
    if hs.dimension != wl.n:
        raise ValueError(f"dimension mismatch: surface {hs.dimension} vs line {wl.n}")
    if hs.modulus * wl.c >= 1.0:
        raise ValueError("world line speed bound breaks the k*c < 1 margin")

    def phi(t: float) -> float:
        return t - hs.height(wl.eval(t))

    t0, t1 = wl.window
    ts = [float(t) for t in np.linspace(t0, t1, grid)]
    vals = [phi(t) for t in ts]
    for a, b in zip(vals, vals[1:]):
        if not a < b:
            raise RuntimeError("crossing function failed its monotonicity check")
    f0, f1 = vals[0], vals[-1]
    if abs(f0) <= tol:
        return t0
    if abs(f1) <= tol:
        return t1
    if f0 > 0 or f1 < 0:
        raise ValueError("no crossing inside the window")
    lo, hi = t0, t1
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        fm = phi(mid)
        if abs(fm) <= tol:
            return mid
        if fm < 0:
            lo = mid
        else:
            hi = mid
    raise RuntimeError(f"bisection missed tolerance {tol} in {max_iter} steps")


def grading_monotone_on(
    g: Grading, wl: PolyWorldLine, sample_times: Sequence[float]
) -> bool:
    """Strict increase of the grading along the line at sorted sample times."""
    t0, t1 = wl.window
    prev = None
    for t in sample_times:
        if t < t0 or t > t1:
            raise ValueError(f"sample time {t!r} outside window")
        if prev is not None and not t > prev:
            raise ValueError("sample times must be strictly increasing")
        prev = t
    vals = [g.value(wl.event_at(t)) for t in sample_times]
    return all(a < b for a, b in zip(vals, vals[1:]))
