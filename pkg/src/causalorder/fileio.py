"""Plain-text file formats: event sets, hypersurfaces, world lines, and
DOT export.

Every format is line-oriented UTF-8: `#` starts a comment, blank lines
are skipped, the first payload line is a `key=value` header, and data
rows are whitespace-separated numbers written with 17 significant
digits so values round-trip exactly.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .hypersurfaces import Hypersurface, make_hypersurface
from .order import Direction, Event, OrderKind, OrderSpec
from .worldlines import GapWorldLine, KeptEnd, PolyWorldLine, make_gap_worldline, make_polyline


class ParseError(ValueError):
    pass


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def _payload_lines(path: Path) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def _parse_header(
    path: Path, no: int, line: str, required: Sequence[str]
) -> dict[str, str]:
    fields: dict[str, str] = {}
    for tok in line.split():
        if "=" not in tok:
            raise ParseError(f"{path}:{no}: malformed header token {tok!r}")
        key, val = tok.split("=", 1)
        fields[key] = val
    missing = [k for k in required if k not in fields]
    extra = [k for k in fields if k not in required]
    if missing or extra:
        raise ParseError(
            f"{path}:{no}: header must have exactly {' '.join(required)}"
        )
    return fields


def _parse_floats(path: Path, no: int, line: str, want: int) -> list[float]:
    toks = line.split()
    if len(toks) != want:
        raise ParseError(f"{path}:{no}: expected {want} numbers, got {len(toks)}")
    try:
        return [float(t) for t in toks]
    except ValueError as exc:
        raise ParseError(f"{path}:{no}: {exc}") from None


def _parse_int(path: Path, no: int, val: str, key: str) -> int:
    try:
        return int(val)
    except ValueError:
        raise ParseError(f"{path}:{no}: {key} must be an integer") from None


def _parse_float(path: Path, no: int, val: str, key: str) -> float:
    try:
        return float(val)
    except ValueError:
        raise ParseError(f"{path}:{no}: {key} must be a number") from None


# ---------------------------------------------------------------- events

def write_events(
    path: str | Path, events: Iterable[Event], spec: OrderSpec, dim: int | None = None
) -> None:
    """Event file: header `dim= c= order= dir=`, one `t x1 .. xn` row
    per event.  dim pins the header dimension for empty event lists."""
    events = list(events)
    n = dim if dim is not None else (events[0].n if events else 0)
    lines = [
        f"dim={n} c={_fmt(spec.c)} order={spec.kind.value} dir={spec.direction.value}"
    ]
    for e in events:
        if e.n != n:
            raise ValueError("all events must share one space dimension")
        lines.append(" ".join([_fmt(e.t)] + [_fmt(v) for v in e.x]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_events(path: str | Path) -> tuple[list[Event], OrderSpec]:
    path = Path(path)
    rows = _payload_lines(path)
    if not rows:
        raise ParseError(f"{path}:1: missing header")
    no, header = rows[0]
    fields = _parse_header(path, no, header, ["dim", "c", "order", "dir"])
    dim = _parse_int(path, no, fields["dim"], "dim")
    if not 0 <= dim <= 8:
        raise ParseError(f"{path}:{no}: dim must be in [0, 8]")
    c = _parse_float(path, no, fields["c"], "c")
    try:
        kind = OrderKind(fields["order"])
        direction = Direction(fields["dir"])
        spec = OrderSpec(kind, c, direction)
    except ValueError as exc:
        raise ParseError(f"{path}:{no}: {exc}") from None
    events = []
    for no, line in rows[1:]:
        vals = _parse_floats(path, no, line, dim + 1)
        try:
            events.append(Event(vals[0], tuple(vals[1:])))
        except ValueError as exc:
            raise ParseError(f"{path}:{no}: {exc}") from None
    return events, spec


# --------------------------------------------------------------- surfaces

def write_surface(path: str | Path, hs: Hypersurface) -> None:
    """Surface file: header `dim= c= k=`, one `h x1 .. xn` row per anchor."""
    lines = [f"dim={hs.dimension} c={_fmt(hs.c)} k={_fmt(hs.modulus)}"]
    for x, h in hs.anchors:
        lines.append(" ".join([_fmt(h)] + [_fmt(v) for v in x]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_surface(path: str | Path) -> Hypersurface:
    path = Path(path)
    rows = _payload_lines(path)
    if not rows:
        raise ParseError(f"{path}:1: missing header")
    no, header = rows[0]
    fields = _parse_header(path, no, header, ["dim", "c", "k"])
    dim = _parse_int(path, no, fields["dim"], "dim")
    c = _parse_float(path, no, fields["c"], "c")
    k = _parse_float(path, no, fields["k"], "k")
    anchors = []
    for no, line in rows[1:]:
        vals = _parse_floats(path, no, line, dim + 1)
        anchors.append((tuple(vals[1:]), vals[0]))
    if not anchors:
        raise ParseError(f"{path}:{rows[0][0]}: surface needs at least one anchor")
    try:
        return make_hypersurface(anchors, k, c)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


# ------------------------------------------------------------ world lines

def write_worldline(
    path: str | Path, wl: PolyWorldLine, gaps: Sequence[tuple[float, float, KeptEnd]] = ()
) -> None:
    """World-line file: event header plus `t x1 .. xn` vertex rows; gap
    rows `gap t_start t_end lower|upper` describe removed stretches."""
    lines = [f"dim={wl.n} c={_fmt(wl.c)} order=causal dir=fwd"]
    for t, x in wl.vertices:
        lines.append(" ".join([_fmt(t)] + [_fmt(v) for v in x]))
    for t0, t1, kept in gaps:
        lines.append(f"gap {_fmt(t0)} {_fmt(t1)} {kept.value}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_gap_worldline(path: str | Path, gwl: GapWorldLine) -> None:
    if gwl.base is None:
        raise ValueError("only base-backed gap world lines serialize")
    rows = [
        (g.segment.t_start, g.segment.t_end, g.kept_end)
        for g in gwl.gaps
    ]
    if any(k is None for _, _, k in rows):
        raise ValueError("gap rows need a kept endpoint")
    write_worldline(path, gwl.base, rows)  # type: ignore[arg-type]


def read_worldline(
    path: str | Path,
) -> tuple[PolyWorldLine, list[tuple[float, float, KeptEnd]]]:
    path = Path(path)
    rows = _payload_lines(path)
    if not rows:
        raise ParseError(f"{path}:1: missing header")
    no, header = rows[0]
    fields = _parse_header(path, no, header, ["dim", "c", "order", "dir"])
    dim = _parse_int(path, no, fields["dim"], "dim")
    c = _parse_float(path, no, fields["c"], "c")
    vertices: list[tuple[float, tuple[float, ...]]] = []
    gaps: list[tuple[float, float, KeptEnd]] = []
    for no, line in rows[1:]:
        if line.startswith("gap"):
            toks = line.split()
            if len(toks) != 4:
                raise ParseError(f"{path}:{no}: gap row needs t_start t_end kept")
            try:
                gaps.append((float(toks[1]), float(toks[2]), KeptEnd(toks[3])))
            except ValueError as exc:
                raise ParseError(f"{path}:{no}: {exc}") from None
            continue
        vals = _parse_floats(path, no, line, dim + 1)
        vertices.append((vals[0], tuple(vals[1:])))
    try:
        wl = make_polyline(vertices, c)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return wl, gaps


def gap_worldline_from_file(path: str | Path) -> GapWorldLine:
    """Rebuild a GapWorldLine: gap rows must match the line's own light
    segments one for one."""
    wl, gap_rows = read_worldline(path)
    segs = wl.light_segments()
    if len(gap_rows) != len(segs):
        raise ParseError(
            f"{path}: file lists {len(gap_rows)} gaps, line has {len(segs)} light segments"
        )
    kept: list[KeptEnd] = []
    for (t0, t1, end), seg in zip(sorted(gap_rows), segs):
        span = seg.t_end - seg.t_start
        if abs(t0 - seg.t_start) > 1e-9 * span or abs(t1 - seg.t_end) > 1e-9 * span:
            raise ParseError(
                f"{path}: gap ({t0:g}, {t1:g}) does not match a light segment"
            )
        kept.append(end)
    return make_gap_worldline(wl, kept)


# ------------------------------------------------------------------- DOT

def dot_digraph(num_nodes: int, edges: Sequence[tuple[int, int]], name: str = "hasse") -> str:
    """DOT digraph with 0-based index nodes and lexicographic edges."""
    lines = [f"digraph {name} {{"]
    for i in range(num_nodes):
        lines.append(f"  {i};")
    for i, j in sorted(edges):
        if not (0 <= i < num_nodes and 0 <= j < num_nodes):
            raise ValueError(f"edge ({i}, {j}) outside node range [0, {num_nodes})")
        lines.append(f"  {i} -> {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
