"""Command line: generate, color, realize, mc, verify, constants.

Exit codes: 0 every certificate passed, 2 a verification failed, 3 bad
input or configuration, 4 a resource budget was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .construction import (
    ConstructionParams,
    LayeredGraph,
    build_poset,
    event_A_check,
    paper_constant_chain,
    repair,
    sample_layered_graph,
    verify_construction,
)
from .curves import realize_height2, verify_realization
from .errors import (
    ChainOfThree,
    CycleCapExceeded,
    GirthforgeError,
    InstanceTooLarge,
    InsufficientSurvivors,
    NotUniquelyGenerated,
    ParseError,
)
from .formats import (
    header_lines,
    parse_coloring,
    parse_curves,
    parse_graph,
    parse_poset,
    read_header,
    write_coloring,
    write_curves,
    write_graph,
    write_mc_csv,
    write_poset,
    write_report,
    write_verification,
)
from .independence import DEFAULT_MIS_BUDGET
from .poset import (
    color_bound,
    covers_from_order,
    greedy_color,
    unique_generation_violation,
    verify_color_bound,
    verify_tree_claim,
)
from .probability import layered_estimate, lemma1_estimate
from .svg import render_svg

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4
BUDGET_ENV = "GIRTHFORGE_BUDGET"

GENERATED_FILES = ("layered.graph", "gprime.graph", "poset.poset", "repair.txt", "verify.txt")


class CliFailure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def resolve_budget(explicit=None) -> int:
    if explicit is not None:
        return int(explicit)
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliFailure(EXIT_INPUT, f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MIS_BUDGET


def _clause_line(name, passed, witness="-") -> str:
    return f"clause {name} {'pass' if passed else 'fail'} {witness}"


# generate ---------------------------------------------------------------


def generate_config(layers, layer_size, r, scale, target_n, seed, budget) -> dict:
    return {
        "subcommand": "generate",
        "layers": layers,
        "layer-size": layer_size,
        "r": r,
        "scale": scale,
        "target-n": "none" if target_n is None else target_n,
        "seed": seed,
        "budget": budget,
    }


def _params_from_config(cfg: dict) -> ConstructionParams:
    try:
        target = cfg.get("target-n", "none")
        return ConstructionParams.desk_scale(
            int(cfg["layers"]),
            int(cfg["layer-size"]),
            int(cfg["r"]),
            edge_scale=Fraction(cfg.get("scale", "1")),
            seed=int(cfg["seed"]),
            target_n=None if target == "none" else int(target),
        )
    except (KeyError, ValueError) as exc:
        raise CliFailure(EXIT_INPUT, f"bad generate configuration: {exc}") from None


def render_generate(cfg: dict) -> tuple:
    """All artifact texts of one ``generate`` run plus the verification report."""
    params = _params_from_config(cfg)
    budget = int(cfg.get("budget", DEFAULT_MIS_BUDGET))
    lg = sample_layered_graph(params)
    gprime, rep = repair(lg, params.r, params.target_n)
    poset = build_poset(gprime)
    cd = covers_from_order(poset)
    vr = verify_construction(gprime, params.r, params, rep.event_A, budget=budget)
    files = {
        "layered.graph": write_graph(lg.graph, (lg.k, lg.m), header_lines("layered", cfg)),
        "gprime.graph": write_graph(gprime, None, header_lines("gprime", cfg)),
        "poset.poset": write_poset(gprime.n, cd.cover_edges, poset.extension, header_lines("poset", cfg)),
        "repair.txt": write_report(rep.as_dict(), header_lines("repair", cfg)),
        "verify.txt": write_verification(vr, header_lines("verification", cfg)),
    }
    return files, vr, rep


def cmd_generate(args) -> int:
    budget = resolve_budget(args.budget)
    cfg = generate_config(args.layers, args.layer_size, args.r, args.scale, args.target_n, args.seed, budget)
    try:
        files, vr, rep = render_generate(cfg)
    except InsufficientSurvivors as exc:
        raise CliFailure(EXIT_VERIFY, f"{exc}; try --seed {args.seed + 1}") from None
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_text(text, encoding="utf-8")
    print(f"layered graph: {rep.bad_pairs_found} bad pairs, {rep.short_cycles_found}"
          f"{'+' if rep.short_cycles_capped else ''} short cycles; deleted {len(rep.deleted)}, kept {rep.survived_n}")
    for c in vr.clauses:
        print(_clause_line(c.name, c.passed, c.witness))
    failed = vr.failed()
    if failed:
        print(f"verification failed: {failed[0].name}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# color ------------------------------------------------------------------


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliFailure(EXIT_INPUT, f"cannot read {path}: {exc}") from None


def render_color(poset_text: str, cfg: dict, path=None) -> tuple:
    poset, covers = parse_poset(poset_text, path)
    cd = covers_from_order(poset)
    witness = unique_generation_violation(cd)
    if witness is not None:
        raise NotUniquelyGenerated(witness)
    coloring = greedy_color(cd, poset.extension)
    lines = [
        ("proper", True, "-"),
        ("log_bound", verify_color_bound(coloring, poset.n),
         f"colors={max(coloring.values(), default=0)} bound={color_bound(poset.n)}"),
        ("tree_claim", verify_tree_claim(cd, coloring), "-"),
    ]
    return write_coloring(coloring, header_lines("coloring", cfg)), coloring, lines


def cmd_color(args) -> int:
    cfg = {"subcommand": "color", "poset": args.poset}
    try:
        text, coloring, lines = render_color(_read(args.poset), cfg, args.poset)
    except NotUniquelyGenerated as exc:
        print(f"not uniquely generated: witness {exc.pair[0]} {exc.pair[1]}", file=sys.stderr)
        return EXIT_VERIFY
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    ok = True
    for name, passed, witness in lines:
        print(_clause_line(name, passed, witness))
        ok &= passed
    return EXIT_OK if ok else EXIT_VERIFY


# realize ----------------------------------------------------------------


def render_realize(poset_text: str, cfg: dict, path=None) -> tuple:
    poset, _ = parse_poset(poset_text, path)
    family = realize_height2(poset)
    check = verify_realization(family, covers_from_order(poset))
    return write_curves(family, header_lines("curves", cfg)), render_svg(family), check


def cmd_realize(args) -> int:
    cfg = {"subcommand": "realize", "poset": args.poset}
    try:
        curves_text, svg_text, check = render_realize(_read(args.poset), cfg, args.poset)
    except ChainOfThree as exc:
        print("poset has a chain of three: " + " ".join(map(str, exc.chain)), file=sys.stderr)
        return EXIT_VERIFY
    if args.out:
        Path(args.out).write_text(curves_text, encoding="utf-8")
    else:
        sys.stdout.write(curves_text)
    if args.svg:
        try:
            Path(args.svg).write_text(svg_text, encoding="utf-8")
        except OSError as exc:
            raise CliFailure(EXIT_INPUT, f"cannot write SVG to {args.svg}: {exc}") from None
    print(_clause_line("realization", check.ok, "-" if check.ok else f"missing={check.missing} extra={check.extra}"))
    return EXIT_OK if check.ok else EXIT_VERIFY


# mc ---------------------------------------------------------------------


def cmd_mc(args) -> int:
    cfg = {"subcommand": "mc", "kind": args.kind, "trials": args.trials, "seed": args.seed}
    if args.kind == "lemma":
        cfg.update({"m": args.m, "d": args.d})
        report = lemma1_estimate(args.m, Fraction(args.d), args.trials, args.seed)
    else:
        statistic = {"paths": "paths", "cycles": "triangles", "badpairs": "badpairs", "edges": "edges"}[args.kind]
        cfg.update({"layers": args.layers, "layer-size": args.layer_size, "scale": args.scale})
        report = layered_estimate(statistic, args.layers, args.layer_size, args.trials, args.seed, Fraction(args.scale))
    text = write_mc_csv(report, header_lines("mc", cfg))
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"verdict {report.verdict} mean={report.mean} stderr={report.stderr}", file=sys.stderr)
    return EXIT_VERIFY if report.verdict == "fail" else EXIT_OK


# verify -----------------------------------------------------------------


def _resolve_input(ref: str, near: Path) -> Path:
    p = Path(ref)
    if p.is_absolute() or p.exists():
        return p
    return near.parent / p


def _verify_gprime(text, cfg, path, layered_text=None) -> list:
    g, _ = parse_graph(text, path)
    params = _params_from_config(cfg)
    event_a = None
    if layered_text is not None:
        lgraph, layers = parse_graph(layered_text, path)
        try:
            event_a = event_A_check(LayeredGraph(lgraph, *layers))
        except (ValueError, TypeError):
            pass  # reported by the layers clause
    vr = verify_construction(g, params.r, params, event_a, budget=int(cfg.get("budget", DEFAULT_MIS_BUDGET)))
    return [(c.name, c.passed, c.witness) for c in vr.clauses]


def _verify_poset_file(text, path) -> list:
    poset, listed = parse_poset(text, path)
    true_covers = set(covers_from_order(poset).cover_edges)
    diff = sorted(true_covers ^ set(listed))
    out = [("covers", not diff, "-" if not diff else "cover {} {}".format(*diff[0]))]
    return out


def verify_generated(cfg: dict, texts: dict, where: Path) -> list:
    """Re-certify a ``generate`` artifact set (any subset of its files)."""
    clauses = []
    try:
        expected, _, _ = render_generate(cfg)
    except GirthforgeError as exc:
        return [("regenerate", False, str(exc))]
    for name, text in texts.items():
        same = expected[name] == text
        clauses.append((f"regenerate:{name}", same, "-" if same else "content differs from a fresh run"))
    if "layered.graph" in texts:
        try:
            g, layers = parse_graph(texts["layered.graph"], where / "layered.graph")
            LayeredGraph(g, *layers)
            clauses.append(("layers", True, "-"))
        except (ValueError, TypeError) as exc:
            clauses.append(("layers", False, str(exc).replace(" ", "_")))
    if "gprime.graph" in texts:
        clauses += _verify_gprime(texts["gprime.graph"], cfg, where / "gprime.graph", texts.get("layered.graph"))
    if "poset.poset" in texts:
        clauses += [("poset_" + n, p, w) for n, p, w in _verify_poset_file(texts["poset.poset"], where / "poset.poset")]
        if "gprime.graph" in texts:
            # the stored poset's own cover relation must equal the stored edge set
            g, _ = parse_graph(texts["gprime.graph"])
            poset, _ = parse_poset(texts["poset.poset"])
            diff = sorted(set(g.edges) ^ set(covers_from_order(poset).cover_edges))
            idx = next(i for i, c in enumerate(clauses) if c[0] == "covers")
            if diff:
                clauses[idx] = ("covers", False, "edge {} {}".format(*diff[0]))
    return clauses


def _pairs(pairs) -> str:
    return ",".join(f"{a}-{b}" for a, b in pairs) or "none"


def _grounded_clause(family) -> tuple:
    try:
        family.validate()
    except ValueError as exc:
        return ("grounded", False, str(exc).replace(" ", "_"))
    return ("grounded", True, "-")


def verify_path(path: Path) -> list:
    if path.is_dir():
        texts = {name: _read(path / name) for name in GENERATED_FILES if (path / name).exists()}
        if not texts:
            raise CliFailure(EXIT_INPUT, f"{path} holds no generated artifacts")
        cfg = read_header(next(iter(texts.values()))).config
        for name, text in texts.items():
            if read_header(text).config != cfg:
                return [("config", False, f"{name}_disagrees")]
        return verify_generated(cfg, texts, path)

    text = _read(path)
    header = read_header(text)
    cfg = header.config
    kind = header.kind
    if kind is None:
        # bare files: sniff the first directive
        first = next((ln.split()[0] for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")), "")
        kind = {"graph": "graph", "poset": "poset", "curves": "curves-bare"}.get(first)
    if kind in ("layered", "gprime", "poset", "repair", "verification") and cfg.get("subcommand") == "generate":
        name = {"layered": "layered.graph", "gprime": "gprime.graph", "poset": "poset.poset",
                "repair": "repair.txt", "verification": "verify.txt"}[kind]
        return verify_generated(cfg, {name: text}, path.parent)
    if kind == "graph":
        g, _ = parse_graph(text, path)
        return [("parse", True, f"n={g.n} edges={len(g.edges)}")]
    if kind == "poset":
        return _verify_poset_file(text, path)
    if kind == "curves":
        poset_path = _resolve_input(cfg.get("poset", ""), path)
        poset_text = _read(poset_path)
        family = parse_curves(text, path)
        clauses = [_grounded_clause(family)]
        expected, _, _ = render_realize(poset_text, cfg, poset_path)
        poset, _ = parse_poset(poset_text, poset_path)
        if clauses[0][1]:
            stored = verify_realization(family, covers_from_order(poset))
            witness = "-" if stored.ok else f"missing={_pairs(stored.missing)}_extra={_pairs(stored.extra)}"
            clauses.append(("realization", stored.ok, witness))
        else:
            clauses.append(("realization", False, "not_checked:invalid_family"))
        clauses.append(("regenerate", expected == text, "-" if expected == text else "content differs from a fresh run"))
        return clauses
    if kind == "curves-bare":
        return [_grounded_clause(parse_curves(text, path))]
    if kind == "coloring":
        poset_path = _resolve_input(cfg.get("poset", ""), path)
        expected, _, lines = render_color(_read(poset_path), cfg, poset_path)
        parse_coloring(text, path)
        return list(lines) + [("regenerate", expected == text, "-" if expected == text else "content differs from a fresh run")]
    raise CliFailure(EXIT_INPUT, f"{path}: unrecognized artifact")


def cmd_verify(args) -> int:
    clauses = verify_path(Path(args.path))
    ok = True
    for name, passed, witness in clauses:
        print(_clause_line(name, passed, witness or "-"))
        ok &= passed
    return EXIT_OK if ok else EXIT_VERIFY


# constants --------------------------------------------------------------


def cmd_constants(args) -> int:
    ok = True
    for r in range(args.r_min, args.r_max + 1):
        cert = paper_constant_chain(r)
        lo, hi = cert.lhs_interval
        good = cert.holds and cert.series_remainder > 0 and cert.split_sum_max < 2
        ok &= good
        print(f"r={r} k/21 in [{lo}, {hi}] > {cert.rhs}: {'pass' if cert.holds else 'fail'}; "
              f"series remainder {cert.series_remainder}; split sum max {cert.split_sum_max}")
    return EXIT_OK if ok else EXIT_VERIFY


# parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="girthforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="sample, repair and certify a high-girth cover graph")
    g.add_argument("--layers", type=int, required=True)
    g.add_argument("--layer-size", type=int, required=True)
    g.add_argument("--r", type=int, required=True, help="girth target")
    g.add_argument("--scale", default="1", help="edge-probability scale (rational)")
    g.add_argument("--target-n", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--budget", type=int, default=None, help=f"search-node budget (env {BUDGET_ENV})")
    g.add_argument("--out", default="girthforge-out", help="output directory")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("color", help="greedy-color the cover graph of a uniquely generated poset")
    c.add_argument("poset")
    c.add_argument("--out")
    c.set_defaults(func=cmd_color)

    r = sub.add_parser("realize", help="grounded curves for a poset of height at most 2")
    r.add_argument("poset")
    r.add_argument("--out")
    r.add_argument("--svg")
    r.set_defaults(func=cmd_realize)

    m = sub.add_parser("mc", help="seeded Monte Carlo checks")
    m.add_argument("kind", choices=["lemma", "paths", "cycles", "badpairs", "edges"])
    m.add_argument("--m", type=int, default=8)
    m.add_argument("--d", default="4")
    m.add_argument("--layers", type=int, default=4)
    m.add_argument("--layer-size", type=int, default=16)
    m.add_argument("--scale", default="1")
    m.add_argument("--trials", type=int, default=10_000)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--out")
    m.set_defaults(func=cmd_mc)

    v = sub.add_parser("verify", help="re-certify an artifact file or a generate output directory")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("constants", help="check the constant chain in exact rational arithmetic")
    k.add_argument("--r-min", type=int, default=4)
    k.add_argument("--r-max", type=int, default=64)
    k.set_defaults(func=cmd_constants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CycleCapExceeded, InstanceTooLarge) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GirthforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except ValueError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
