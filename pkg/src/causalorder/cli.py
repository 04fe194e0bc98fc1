"""Command-line front end.

Exit codes: 0 success, 1 a check command found a failing property,
2 usage or parse errors.  Reports echo the command and seed; every
line except the trailing `# elapsed` one is byte-deterministic for
fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import fileio
from .cones import ConeKind, ConeOracle, affine_cone, check_invariance, classify_cone, standard_cone
from .finite import (
    SprinkleConfig,
    build,
    compare_relations,
    find_avoiding_chain,
    hasse,
    is_cutset,
    reconstruct_order,
    sprinkle,
)
from .hypersurfaces import Grading, crossing_time
from .order import (
    Direction,
    Event,
    OrderKind,
    OrderSpec,
    classify_pair,
    leq,
    pairwise_comparable,
    reconstruct_causal_analytic,
)
from .worldlines import canonical_gap_chain

_FMT = "{:.17g}".format


def _fmt(v: float) -> str:
    return _FMT(float(v))


class Report:
    """Accumulates output lines; timing goes last and is the only
    non-deterministic line."""

    def __init__(self, argv: list[str], seed: int | None = None):
        self._t0 = time.perf_counter()
        self.lines = [f"# command: {' '.join(argv)}"]
        if seed is not None:
            self.lines.append(f"# seed: {seed}")

    def add(self, line: str) -> None:
        self.lines.append(line)

    def emit(self) -> None:
        self.lines.append(f"# elapsed {time.perf_counter() - self._t0:.3f}s")
        sys.stdout.write("\n".join(self.lines) + "\n")


def _parse_box(text: str, axes: int) -> tuple[tuple[float, float], ...]:
    parts = text.split(",")
    try:
        pairs = []
        for part in parts:
            lo, hi = part.split(":")
            pairs.append((float(lo), float(hi)))
    except ValueError:
        raise ValueError(
            f"box must be lo:hi[,lo:hi...], got {text!r}"
        ) from None
    if len(pairs) == 1:
        pairs = pairs * axes
    if len(pairs) != axes:
        raise ValueError(
            f"box needs 1 or {axes} axis ranges, got {len(pairs)}"
        )
    return tuple(pairs)


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise ValueError(f"bad index list {text!r}") from None


def _spec_from_args(args, default: OrderSpec) -> OrderSpec:
    kind = OrderKind(args.order) if args.order else default.kind
    c = args.c if args.c is not None else default.c
    direction = Direction(args.dir) if args.dir else default.direction
    return OrderSpec(kind, c, direction)


def _parse_oracle(text: str, dim: int) -> ConeOracle:
    """Oracle specs: causal:<c>:<fwd|bwd>, subluminal:<c>:<fwd|bwd>,
    temporal:<fwd|bwd>, affine:<r;r;...>:<spec> with ';'-separated rows
    of ','-separated entries acting on (x, t)."""
    head, _, rest = text.partition(":")
    if head == "temporal":
        if rest not in ("fwd", "bwd"):
            raise ValueError(f"bad oracle spec {text!r}")
        return standard_cone(OrderKind.TEMPORAL, Direction(rest), 1.0, dim)
    if head in ("causal", "subluminal"):
        c_text, _, d_text = rest.partition(":")
        try:
            c = float(c_text)
        except ValueError:
            raise ValueError(f"bad speed in {text!r}") from None
        if d_text not in ("fwd", "bwd"):
            raise ValueError(f"bad direction in {text!r}")
        return standard_cone(OrderKind(head), Direction(d_text), c, dim)
    if head == "affine":
        m_text, _, base_text = rest.partition(":")
        try:
            rows = [[float(v) for v in row.split(",")] for row in m_text.split(";")]
        except ValueError:
            raise ValueError(f"bad matrix in {text!r}") from None
        base = _parse_oracle(base_text, dim)
        try:
            return affine_cone(base, rows)
        except ValueError as exc:
            raise ValueError(str(exc)) from None
    raise ValueError(f"unknown oracle kind {head!r}")


# ---------------------------------------------------------------- commands

def cmd_sprinkle(args, argv) -> int:
    box = _parse_box(args.box, args.dim + 1)
    cfg = SprinkleConfig(args.count, args.dim, box, args.seed)
    events = sprinkle(cfg)
    spec = OrderSpec(OrderKind(args.order or "causal"), args.c if args.c is not None else 1.0,
                     Direction(args.dir or "fwd"))
    fileio.write_events(args.out, events, spec, dim=args.dim)
    rep = Report(argv, seed=args.seed)
    rep.add(f"written {args.out}")
    rep.add(f"events {len(events)}")
    rep.emit()
    return 0


def cmd_relate(args, argv) -> int:
    events, spec = fileio.read_events(args.file)
    if not (0 <= args.i < len(events) and 0 <= args.j < len(events)):
        raise ValueError(f"indices must be in [0, {len(events) - 1}]")
    u, v = events[args.i], events[args.j]
    c = args.c if args.c is not None else spec.c
    direction = Direction(args.dir) if args.dir else spec.direction
    rep = Report(argv)
    rep.add(f"pair {args.i} {args.j}")
    rep.add(f"class {classify_pair(u, v, c, args.tol).value}")
    for kind in OrderKind:
        val = leq(OrderSpec(kind, c, direction), u, v)
        rep.add(f"leq {kind.value} {str(val).lower()}")
    rep.emit()
    return 0


def cmd_hasse(args, argv) -> int:
    events, spec = fileio.read_events(args.file)
    fcs = build(events, _spec_from_args(args, spec))
    edges = hasse(fcs)
    rep = Report(argv)
    rep.add(f"events {len(fcs)}")
    rep.add(f"edges {len(edges)}")
    if args.dot:
        Path(args.dot).write_text(
            fileio.dot_digraph(len(fcs), edges), encoding="utf-8"
        )
        rep.add(f"written {args.dot}")
    rep.emit()
    return 0


def cmd_cutset_check(args, argv) -> int:
    events, spec = fileio.read_events(args.file)
    fcs = build(events, _spec_from_args(args, spec))
    witness = find_avoiding_chain(fcs, args.indices)
    rep = Report(argv)
    rep.add(f"antichain {','.join(str(i) for i in args.indices)}")
    if witness is None:
        rep.add("cutset true")
        rep.emit()
        return 0
    rep.add("cutset false")
    rep.add(f"avoiding_chain {','.join(str(i) for i in witness)}")
    rep.emit()
    return 1


def cmd_grade(args, argv) -> int:
    hs = fileio.read_surface(args.surface)
    events, _ = fileio.read_events(args.file)
    g = Grading(hs)
    rep = Report(argv)
    for i, e in enumerate(events):
        rep.add(f"grade {i} {_fmt(g.value(e))}")
    rep.emit()
    return 0


def cmd_crossing(args, argv) -> int:
    hs = fileio.read_surface(args.surface)
    wl, _ = fileio.read_worldline(args.worldline)
    t_star = crossing_time(hs, wl, tol=args.tol)
    residual = t_star - hs.height(wl.eval(t_star))
    rep = Report(argv)
    rep.add(f"t_star {_fmt(t_star)}")
    rep.add(f"residual {_fmt(residual)}")
    rep.emit()
    return 0


def cmd_reconstruct(args, argv) -> int:
    events, spec = fileio.read_events(args.file)
    c = args.c if args.c is not None else spec.c
    rep = Report(argv)
    rep.add(f"mode {args.mode}")
    if args.mode == "analytic":
        causal = build(events, OrderSpec(OrderKind.CAUSAL, c))
        diffs = 0
        for i, u in enumerate(events):
            for j, v in enumerate(events):
                if i == j:
                    continue
                truth = bool(causal.relation[i, j]) or u == v
                if reconstruct_causal_analytic(u, v, c) != truth:
                    diffs += 1
        rep.add(f"differences {diffs}")
        rep.emit()
        return 0 if diffs == 0 else 1
    sub = build(events, OrderSpec(OrderKind.SUBLUMINAL, c))
    causal = build(events, OrderSpec(OrderKind.CAUSAL, c))
    diff = compare_relations(reconstruct_order(sub), causal.relation)
    rep.add(f"false_positives {diff.false_positives}")
    rep.add(f"false_negatives {diff.false_negatives}")
    rep.emit()
    return 0 if diff.false_negatives == 0 else 1


def cmd_counterexample(args, argv) -> int:
    hs = fileio.read_surface(args.surface)
    n = hs.dimension
    if n < 1:
        raise ValueError("need at least one space dimension")
    if args.basepoint:
        x0 = tuple(float(v) for v in args.basepoint.split(","))
        if len(x0) != n:
            raise ValueError(f"basepoint needs {n} coordinates")
    else:
        x0 = hs.anchors[0][0]
    if args.base_t is not None and abs(args.base_t - hs.height(x0)) > 1e-9:
        raise ValueError("surface does not pass through the requested base event")
    origin = hs.graph_event(x0)
    d = [0.0] * n
    d[0] = 1.0
    if args.light_dir:
        d = [float(v) for v in args.light_dir.split(",")]
    chain = canonical_gap_chain(
        origin, d, args.t_len, hs.c, Direction(args.dir or "fwd")
    )
    g = Grading(hs)
    rng = np.random.default_rng(args.seed)
    params = np.concatenate(
        [-rng.uniform(1e-3, 10.0 * args.t_len, args.samples // 2),
         args.t_len + rng.uniform(1e-3, 10.0 * args.t_len, args.samples - args.samples // 2)]
    )
    sign = 1.0 if (args.dir or "fwd") == "fwd" else -1.0
    hits = 0
    for p in params:
        t = origin.t + sign * float(p)
        e = Event(t, chain._position(t))
        if g.level_contains(0.0, e, args.tol):
            hits += 1
    sample = chain.sample_events(per_branch=60)
    chain_ok = pairwise_comparable(OrderSpec(OrderKind.SUBLUMINAL, hs.c), sample)
    spans = chain.time_image()
    rep = Report(argv, seed=args.seed)
    rep.add(f"surface_hits {hits} / {args.samples}")
    rep.add(f"chain_ok {str(chain_ok).lower()}")
    for s in spans:
        lo = "-inf" if s.lo == -np.inf else _fmt(s.lo)
        hi = "inf" if s.hi == np.inf else _fmt(s.hi)
        rep.add(f"time_branch {'[' if s.lo_closed else '('}{lo}, {hi}{']' if s.hi_closed else ')'}")
    gap_lo = min(seg.segment.t_start for seg in chain.gaps)
    gap_hi = max(seg.segment.t_end for seg in chain.gaps)
    omitted = all(s.hi <= gap_lo or s.lo >= gap_hi for s in spans)
    rep.add(f"time_gap_certified {str(omitted).lower()}")
    rep.emit()
    return 0 if hits == 0 and chain_ok and omitted else 1


def cmd_cone_classify(args, argv) -> int:
    oracle = _parse_oracle(args.oracle, args.dim)
    rep = Report(argv, seed=args.seed)
    code = 0
    if args.invariance_samples:
        inv = check_invariance(oracle, args.invariance_samples, args.seed)
        rep.add(f"invariance {'pass' if inv.passed else 'fail'}")
        if not inv.passed:
            rep.add(f"invariance_witness {inv.counterexample}")
            code = 1
    result = classify_cone(oracle, budget=args.budget, seed=args.seed)
    rep.add(f"kind {result.kind.value}")
    rep.add(f"direction {result.direction.value if result.direction else 'unknown'}")
    if result.c_estimate is not None:
        rep.add(f"c_estimate {_fmt(result.c_estimate)}")
    if result.evidence.witness:
        rep.add(f"witness {result.evidence.witness}")
    rep.add(f"probes {result.evidence.probes}")
    rep.emit()
    if result.kind is ConeKind.UNKNOWN:
        return 1
    return code


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="causalorder",
        description="Space-time order toolkit: sprinkles, relations, "
        "Hasse diagrams, gradings, crossings, and cone classification.",
        epilog="exit codes: 0 ok, 1 failed check, 2 usage/parse error",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def order_flags(p):
        p.add_argument("--order", choices=[k.value for k in OrderKind])
        p.add_argument("--c", type=float)
        p.add_argument("--dir", choices=[d.value for d in Direction])

    p = sub.add_parser("sprinkle", help="write a uniform random event file")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--box", required=True, help="lo:hi[,lo:hi...], space axes then time")
    p.add_argument("--seed", type=int, default=0)
    order_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sprinkle)

    p = sub.add_parser("relate", help="classify one event pair")
    p.add_argument("file")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--tol", type=float, default=0.0, help="light-cone tolerance")
    order_flags(p)
    p.set_defaults(func=cmd_relate)

    p = sub.add_parser("hasse", help="relation matrix summary and DOT export")
    p.add_argument("file")
    order_flags(p)
    p.add_argument("--dot", help="write the cover digraph here")
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("cutset-check", help="does the antichain meet every maximal chain")
    p.add_argument("file")
    p.add_argument("--indices", type=_parse_indices, required=True)
    order_flags(p)
    p.set_defaults(func=cmd_cutset_check)

    p = sub.add_parser("grade", help="grading values of events against a surface")
    p.add_argument("file")
    p.add_argument("--surface", required=True)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("crossing", help="surface/world-line crossing time")
    p.add_argument("--surface", required=True)
    p.add_argument("--worldline", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_crossing)

    p = sub.add_parser("reconstruct", help="recover the causal order from the subluminal one")
    p.add_argument("file")
    p.add_argument("--mode", choices=["analytic", "sampled"], default="analytic")
    p.add_argument("--c", type=float)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("counterexample", help="two-ray chain that dodges a surface antichain")
    p.add_argument("--surface", required=True)
    p.add_argument("--basepoint", help="comma-separated spatial point on the surface")
    p.add_argument("--base-t", type=float, help="expected surface time at the basepoint")
    p.add_argument("--light-dir", help="comma-separated unit direction")
    p.add_argument("--t-len", type=float, default=1.0)
    p.add_argument("--dir", choices=[d.value for d in Direction])
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=0.0)
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("cone-classify", help="identify a cone membership oracle")
    p.add_argument("--oracle", required=True,
                   help="causal:<c>:<fwd|bwd> | subluminal:<c>:<fwd|bwd> | "
                        "temporal:<fwd|bwd> | affine:<rows>:<spec>")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--invariance-samples", type=int, default=0)
    p.set_defaults(func=cmd_cone_classify)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args, argv)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
