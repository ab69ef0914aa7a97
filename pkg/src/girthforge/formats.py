"""Line-oriented text formats for graphs, posets, curve families and reports.

Every format allows blank lines and ``#`` comments. Artifacts written by
the command line carry ``# artifact <kind>`` and ``# config key=value ...``
comment lines; :func:`read_header` recovers them.
"""

from __future__ import annotations

import csv
import io
from typing import NamedTuple

from .curves import Curve, CurveFamily
from .errors import ParseError
from .graph import Graph
from .poset import Poset


class Header(NamedTuple):
    kind: str | None
    config: dict


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield no, line.split()


def comments(text: str) -> list:
    return [raw.strip()[1:].strip() for raw in text.splitlines() if raw.strip().startswith("#")]


def read_header(text: str) -> Header:
    kind = None
    config = {}
    for c in comments(text):
        if c.startswith("artifact "):
            kind = c.split(None, 1)[1].strip()
        elif c.startswith("config"):
            for item in c.split()[1:]:
                key, _, value = item.partition("=")
                config[key] = value
    return Header(kind, config)


def header_lines(kind: str, config: dict) -> list:
    items = " ".join(f"{k}={config[k]}" for k in config)
    return [f"# artifact {kind}", f"# config {items}".rstrip()]


def _ints(tokens, no, path, count=None):
    try:
        vals = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no, path) from None
    if count is not None and len(vals) != count:
        raise ParseError(f"expected {count} integers, got {len(vals)}", no, path)
    return vals


# graphs -----------------------------------------------------------------


def write_graph(g: Graph, layers: tuple | None = None, header: list = ()) -> str:
    out = list(header)
    out.append(f"graph {g.n}")
    if layers is not None:
        out.append(f"layers {layers[0]} {layers[1]}")
    out.extend(f"e {u} {v}" for u, v in g.sorted_edges())
    return "\n".join(out) + "\n"


def parse_graph(text: str, path=None) -> tuple:
    """Returns ``(graph, layers)`` where ``layers`` is ``(k, m)`` or None."""
    n = None
    layers = None
    edges = []
    seen = set()
    for no, tok in _lines(text):
        word = tok[0]
        if n is None:
            if word != "graph":
                raise ParseError(f"expected 'graph <n>' header, got {word!r}", no, path)
            (n,) = _ints(tok[1:], no, path, 1)
            if n < 0:
                raise ParseError("vertex count must be nonnegative", no, path)
        elif word == "layers":
            if layers is not None or edges:
                raise ParseError("'layers' must directly follow the header", no, path)
            layers = tuple(_ints(tok[1:], no, path, 2))
            if layers[0] * layers[1] != n:
                raise ParseError(f"layers {layers[0]}x{layers[1]} do not cover {n} vertices", no, path)
        elif word == "e":
            u, v = _ints(tok[1:], no, path, 2)
            if u == v:
                raise ParseError(f"self-loop at {u}", no, path)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge endpoint outside 1..{n}", no, path)
            e = (min(u, v), max(u, v))
            if e in seen:
                raise ParseError(f"duplicate edge {e}", no, path)
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    if n is None:
        raise ParseError("missing 'graph <n>' header", None, path)
    return Graph(n, frozenset(edges)), layers


# posets -----------------------------------------------------------------


def write_poset(n: int, covers, extension=None, header: list = ()) -> str:
    out = list(header)
    out.append(f"poset {n}")
    out.extend(f"cover {x} {y}" for x, y in sorted(covers))
    if extension is not None:
        out.append("ext " + " ".join(map(str, extension)))
    return "\n".join(out) + "\n"


def parse_poset(text: str, path=None) -> tuple:
    """Returns ``(poset, covers)``: the reachability closure of the listed covers, and the covers as listed."""
    n = None
    covers = []
    ext = None
    for no, tok in _lines(text):
        word = tok[0]
        if n is None:
            if word != "poset":
                raise ParseError(f"expected 'poset <n>' header, got {word!r}", no, path)
            (n,) = _ints(tok[1:], no, path, 1)
        elif word == "cover":
            x, y = _ints(tok[1:], no, path, 2)
            if x == y or not (1 <= x <= n and 1 <= y <= n):
                raise ParseError(f"invalid cover {x} {y}", no, path)
            covers.append((x, y))
        elif word == "ext":
            if ext is not None:
                raise ParseError("more than one 'ext' line", no, path)
            ext = _ints(tok[1:], no, path, n)
        else:
            raise ParseError(f"unknown directive {word!r}", no, path)
    if n is None:
        raise ParseError("missing 'poset <n>' header", None, path)
    if len(set(covers)) != len(covers):
        raise ParseError("duplicate cover line", None, path)
    try:
        poset = Poset.from_covers(n, covers, ext)
    except ValueError as exc:
        raise ParseError(str(exc), None, path) from None
    return poset, covers


# curves -----------------------------------------------------------------


def write_curves(f: CurveFamily, header: list = ()) -> str:
    out = list(header)
    out.append(f"curves {len(f.curves)}")
    for c in f.curves:
        out.append(f"curve {c.id} {len(c.points)}")
        out.extend(f"{x} {y}" for x, y in c.points)
    return "\n".join(out) + "\n"


def parse_curves(text: str, path=None) -> CurveFamily:
    rows = list(_lines(text))
    if not rows or rows[0][1][0] != "curves":
        raise ParseError("expected 'curves <count>' header", rows[0][0] if rows else None, path)
    no, tok = rows[0]
    (count,) = _ints(tok[1:], no, path, 1)
    pos = 1
    curves = []
    for _ in range(count):
        if pos >= len(rows):
            raise ParseError(f"expected {count} curves, file ends after {len(curves)}", rows[-1][0], path)
        no, tok = rows[pos]
        if tok[0] != "curve":
            raise ParseError(f"expected 'curve <id> <npoints>', got {tok[0]!r}", no, path)
        cid, npts = _ints(tok[1:], no, path, 2)
        pos += 1
        pts = []
        for _ in range(npts):
            if pos >= len(rows):
                raise ParseError(f"curve {cid} declares {npts} points, file ends after {len(pts)}", rows[-1][0], path)
            pno, ptok = rows[pos]
            if ptok[0] == "curve":
                raise ParseError(f"curve {cid} declares {npts} points, found {len(pts)}", pno, path)
            pts.append(tuple(_ints(ptok, pno, path, 2)))
            pos += 1
        curves.append(Curve(cid, tuple(pts)))
    if pos != len(rows):
        raise ParseError("unexpected content after the last curve", rows[pos][0], path)
    return CurveFamily(tuple(curves))


# colorings and reports --------------------------------------------------


def write_coloring(coloring: dict, header: list = ()) -> str:
    out = list(header)
    out.append(f"coloring {len(coloring)}")
    out.extend(f"color {v} {coloring[v]}" for v in sorted(coloring))
    return "\n".join(out) + "\n"


def parse_coloring(text: str, path=None) -> dict:
    n = None
    color = {}
    for no, tok in _lines(text):
        if n is None:
            if tok[0] != "coloring":
                raise ParseError(f"expected 'coloring <n>' header, got {tok[0]!r}", no, path)
            (n,) = _ints(tok[1:], no, path, 1)
        elif tok[0] == "color":
            v, c = _ints(tok[1:], no, path, 2)
            color[v] = c
        else:
            raise ParseError(f"unknown directive {tok[0]!r}", no, path)
    if n is None:
        raise ParseError("missing 'coloring <n>' header", None, path)
    return color


def write_report(values: dict, header: list = ()) -> str:
    """Flat ``key value`` block."""
    out = list(header)
    out.extend(f"{k} {values[k]}" for k in values)
    return "\n".join(out) + "\n"


def parse_report(text: str) -> dict:
    out = {}
    for _, tok in _lines(text):
        out[tok[0]] = " ".join(tok[1:])
    return out


def write_verification(report, header: list = ()) -> str:
    out = list(header)
    for c in report.clauses:
        out.append(f"clause {c.name} {'pass' if c.passed else 'fail'} {c.witness}")
    return "\n".join(out) + "\n"


def parse_verification(text: str, path=None) -> list:
    out = []
    for no, tok in _lines(text):
        if tok[0] != "clause" or len(tok) < 3 or tok[2] not in ("pass", "fail"):
            raise ParseError("expected 'clause <name> pass|fail <witness>'", no, path)
        out.append((tok[1], tok[2] == "pass", " ".join(tok[3:])))
    return out


def write_mc_csv(report, header: list = ()) -> str:
    buf = io.StringIO()
    for line in header:
        buf.write(line + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["trial", "seed", "statistic", "value"])
    for t, (seed, value) in enumerate(zip(report.seeds, report.values)):
        w.writerow([t, seed, report.statistic, value])
    summary = report.summary()
    bound = summary.get("bound", summary.get("exact"))
    buf.write(f"# mean={_fmt(report.mean)} stderr={_fmt(report.stderr)} bound={_fmt(bound)} verdict={report.verdict}\n")
    extras = " ".join(f"{k}={_fmt(v)}" for k, v in summary.items() if k not in ("mean", "stderr", "verdict"))
    if extras:
        buf.write(f"# {extras}\n")
    return buf.getvalue()


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)
