"""Finite event sets under the space-time orders: sprinkling, relation
matrices, Hasse diagrams, chain/antichain enumeration, cutset checks,
and reconstruction of the causal order from the subluminal one.

Relation matrices hold the strict relation (diagonal False).  They are
built by a vectorized kernel whose arithmetic mirrors the scalar
predicates in order.py operation for operation, so both routes agree
bit for bit; the order axioms are re-verified on every construction and
a violation aborts, since it would mean the predicates are broken.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .order import Direction, Event, OrderKind, OrderSpec

MAX_EVENTS = 2000
MAX_ANTICHAIN_EVENTS = 24
DEFAULT_CHAIN_CAP = 1_000_000


class CapExceeded(Exception):
    """Enumeration hit its cap; .partial holds the results found so far."""

    def __init__(self, message: str, partial: tuple):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SprinkleConfig:
    """Uniform iid sprinkle: `count` events in a box, space axes first,
    time axis last.  Deterministic for a fixed 64-bit seed."""

    count: int
    dimension: int
    box: tuple[tuple[float, float], ...]
    seed: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise ValueError("count must be >= 0")
        if not 0 <= self.dimension <= 8:
            raise ValueError("space dimension must be in [0, 8]")
        box = tuple((float(lo), float(hi)) for lo, hi in self.box)
        if len(box) != self.dimension + 1:
            raise ValueError(
                f"box needs {self.dimension + 1} axes (space then time), got {len(box)}"
            )
        for lo, hi in box:
            if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
                raise ValueError("box axes need finite lo < hi")
        object.__setattr__(self, "box", box)


def sprinkle(cfg: SprinkleConfig) -> list[Event]:
    rng = np.random.default_rng(cfg.seed)
    lo = np.array([a for a, _ in cfg.box])
    hi = np.array([b for _, b in cfg.box])
    draws = rng.uniform(lo, hi, size=(cfg.count, cfg.dimension + 1))
    return [
        Event(float(row[-1]), tuple(float(v) for v in row[:-1])) for row in draws
    ]


def _strict_matrix(events: Sequence[Event], spec: OrderSpec) -> np.ndarray:
    """Strict relation matrix; arithmetic matches order._separation."""
    n_ev = len(events)
    t = np.array([e.t for e in events], dtype=float)
    dt = t[None, :] - t[:, None]
    if n_ev and events[0].n:
        xs = np.array([e.x for e in events], dtype=float)
        sq = np.zeros((n_ev, n_ev))
        for axis in range(xs.shape[1]):
            d = xs[None, :, axis] - xs[:, None, axis]
            sq += d * d
        dist = np.sqrt(sq)
    else:
        dist = np.zeros((n_ev, n_ev))
    if spec.kind is OrderKind.TEMPORAL:
        fwd = dt > 0.0
    elif spec.kind is OrderKind.CAUSAL:
        fwd = (dt > 0.0) & (dist <= spec.c * dt)
    else:
        fwd = (dt > 0.0) & (dist < spec.c * dt)
    return fwd.T if spec.direction is Direction.BACKWARD else fwd


@dataclass(frozen=True)
class FiniteCausalSet:
    """Events plus the strict relation matrix of the chosen order."""

    events: tuple[Event, ...]
    spec: OrderSpec
    relation: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.events)


def build(events: Sequence[Event], spec: OrderSpec) -> FiniteCausalSet:
    """Construct the relation matrix and verify the strict-order axioms.

    Irreflexivity holds by construction; antisymmetry and transitivity
    are checked explicitly and a failure aborts, because it could only
    come from a broken predicate.
    """
    evs = tuple(events)
    if len(evs) > MAX_EVENTS:
        raise ValueError(f"at most {MAX_EVENTS} events supported, got {len(evs)}")
    if evs:
        n = evs[0].n
        for e in evs:
            if e.n != n:
                raise ValueError("all events must share one space dimension")
    rel = _strict_matrix(evs, spec)
    if np.any(rel & rel.T):
        i, j = map(int, np.argwhere(rel & rel.T)[0])
        raise RuntimeError(f"antisymmetry violated at pair ({i}, {j})")
    ri = rel.astype(np.int32)
    closure_gap = ((ri @ ri) > 0) & ~rel
    if np.any(closure_gap):
        i, j = map(int, np.argwhere(closure_gap)[0])
        raise RuntimeError(f"transitivity violated at pair ({i}, {j})")
    rel.flags.writeable = False
    return FiniteCausalSet(evs, spec, rel)


def hasse(fcs: FiniteCausalSet) -> list[tuple[int, int]]:
    """Edges of the transitive reduction, in lexicographic order.  For a
    finite strict order the reduction is unique: (i, j) is an edge iff
    i < j with no element strictly between."""
    ri = fcs.relation.astype(np.int32)
    covers = fcs.relation & ~((ri @ ri) > 0)
    return [(int(i), int(j)) for i, j in np.argwhere(covers)]


def _successors(fcs: FiniteCausalSet) -> list[list[int]]:
    succ: list[list[int]] = [[] for _ in range(len(fcs))]
    for i, j in hasse(fcs):
        succ[i].append(j)
    return succ


def maximal_chains(
    fcs: FiniteCausalSet, cap: int = DEFAULT_CHAIN_CAP
) -> list[list[int]]:
    """All maximal chains as index lists, emitted in lexicographic order
    (DFS over cover edges from minimal elements).  CapExceeded carries
    the first `cap` chains when enumeration overruns."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    succ = _successors(fcs)
    rel = fcs.relation
    minimal = [j for j in range(len(fcs)) if not np.any(rel[:, j])]
    out: list[list[int]] = []

    def emit(path: list[int]) -> None:
        if len(out) >= cap:
            raise CapExceeded(f"more than {cap} maximal chains", tuple(out))
        out.append(list(path))

    for root in minimal:
        if not succ[root]:
            emit([root])
            continue
        path = [root]
        stack = [iter(succ[root])]
        while stack:
            try:
                nxt = next(stack[-1])
            except StopIteration:
                stack.pop()
                path.pop()
                continue
            path.append(nxt)
            if succ[nxt]:
                stack.append(iter(succ[nxt]))
            else:
                emit(path)
                path.pop()
    return out


def maximal_antichains(
    fcs: FiniteCausalSet, cap: int = DEFAULT_CHAIN_CAP
) -> list[list[int]]:
    """All maximal antichains: maximal cliques of the incomparability
    graph, via pivoted Bron-Kerbosch.  Limited to 24 events; output is
    sorted lexicographically."""
    if cap < 1:
        raise ValueError("cap must be >= 1")
    n_ev = len(fcs)
    if n_ev > MAX_ANTICHAIN_EVENTS:
        raise ValueError(
            f"full antichain enumeration supports at most {MAX_ANTICHAIN_EVENTS} events"
        )
    rel = fcs.relation
    nbr = [
        {j for j in range(n_ev) if j != i and not rel[i, j] and not rel[j, i]}
        for i in range(n_ev)
    ]
    found: list[list[int]] = []

    def bk(r: set[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            if len(found) >= cap:
                raise CapExceeded(
                    f"more than {cap} maximal antichains", tuple(found)
                )
            found.append(sorted(r))
            return
        pivot = min(sorted(p | x), key=lambda v: (-len(p & nbr[v]), v))
        for v in sorted(p - nbr[pivot]):
            bk(r | {v}, p & nbr[v], x & nbr[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(range(n_ev)), set())
    found.sort()
    return found


def _check_antichain(fcs: FiniteCausalSet, indices: Sequence[int]) -> list[int]:
    idx = list(indices)
    n_ev = len(fcs)
    for i in idx:
        if not 0 <= i < n_ev:
            raise ValueError(f"index {i} out of range")
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate indices")
    rel = fcs.relation
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            i, j = idx[a], idx[b]
            if rel[i, j] or rel[j, i]:
                raise ValueError(f"not an antichain: events {i} and {j} are comparable")
    return idx


def find_avoiding_chain(
    fcs: FiniteCausalSet, antichain: Sequence[int], cap: int = DEFAULT_CHAIN_CAP
) -> list[int] | None:
    """First maximal chain disjoint from the antichain, or None."""
    target = set(_check_antichain(fcs, antichain))
    for chain in maximal_chains(fcs, cap):
        if target.isdisjoint(chain):
            return chain
    return None


def is_cutset(
    fcs: FiniteCausalSet, antichain: Sequence[int], cap: int = DEFAULT_CHAIN_CAP
) -> bool:
    """Whether the antichain meets every maximal chain of the set."""
    return find_avoiding_chain(fcs, antichain, cap) is None


def reconstruct_order(fcs: FiniteCausalSet) -> np.ndarray:
    """Causal relation recovered from a subluminal set, using the set's
    own events as witnesses: i related to j when i is subluminally below
    j, or when every witness subluminally above j is subluminally above
    i (witnesses equal in value to either endpoint are skipped).

    The result is a superset of the true strict causal relation on the
    same events; sparse regions may add false positives, never false
    negatives.
    """
    if fcs.spec.kind is not OrderKind.SUBLUMINAL:
        raise ValueError("reconstruction expects a subluminal relation")
    rel = fcs.relation
    n_ev = len(fcs)
    ri = rel.astype(np.int32)
    # bad[i, j] = number of witnesses w != i with j <' w but not i <' w.
    # (w = j contributes nothing: rel[j, j] is False; witnesses equal in
    # value to i cannot violate the implication, see below.)
    counts = (ri @ (1 - ri).T).T - ri.T
    dup_groups: dict[Event, list[int]] = {}
    for i, e in enumerate(fcs.events):
        dup_groups.setdefault(e, []).append(i)
    if any(len(g) > 1 for g in dup_groups.values()):
        # Duplicate event values: redo the count per pair with value-level
        # witness exclusion.  Rare path, kept simple.
        counts = np.zeros((n_ev, n_ev), dtype=np.int32)
        for i in range(n_ev):
            for j in range(n_ev):
                skip = set(dup_groups[fcs.events[i]]) | set(dup_groups[fcs.events[j]])
                keep = [w for w in range(n_ev) if w not in skip]
                counts[i, j] = int(np.sum(rel[j, keep] & ~rel[i, keep]))
    off_diag = ~np.eye(n_ev, dtype=bool)
    rec = (rel | (counts == 0)) & off_diag
    rec.flags.writeable = False
    return rec


@dataclass(frozen=True)
class RelationDiff:
    """Cell-level comparison of two strict relation matrices."""

    agreements: int
    false_positives: int
    false_negatives: int
    samples: tuple[tuple[int, int, str], ...]  # at most 100, lexicographic


def compare_relations(
    candidate: np.ndarray, truth: np.ndarray, sample_cap: int = 100
) -> RelationDiff:
    cand = np.asarray(candidate, dtype=bool)
    ref = np.asarray(truth, dtype=bool)
    if cand.shape != ref.shape or cand.ndim != 2 or cand.shape[0] != cand.shape[1]:
        raise ValueError("relation matrices must be square and share a shape")
    off_diag = ~np.eye(cand.shape[0], dtype=bool)
    agree = int(np.sum((cand == ref) & off_diag))
    fp_mask = cand & ~ref
    fn_mask = ref & ~cand
    samples: list[tuple[int, int, str]] = []
    diff_cells = sorted(
        [(int(i), int(j), "fp") for i, j in np.argwhere(fp_mask)]
        + [(int(i), int(j), "fn") for i, j in np.argwhere(fn_mask)]
    )
    samples = diff_cells[:sample_cap]
    return RelationDiff(
        agreements=agree,
        false_positives=int(np.sum(fp_mask)),
        false_negatives=int(np.sum(fn_mask)),
        samples=tuple(samples),
    )
