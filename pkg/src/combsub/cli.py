"""Command-line interface.

Exit codes: 0 when the checked property holds or the output was produced,
1 when the property fails (a witness is printed), 2 on usage, parse or
precondition errors. Reports are ``key: value`` lines.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .core import Cell, CollisionError, DimensionError, Pattern, fmt_vec
from .corpus import NAMES, example, fixture_text
from .decide import (
    PreconditionError,
    StructureError,
    check_consistency_domino_complete,
    check_consistency_restricted,
    decide_overlap,
    extract_structure,
    is_domino_complete,
)
from .io import (
    ParseError,
    parse_document,
    parse_squares,
    parse_tiles,
    serialize_pattern,
    serialize_substitution,
    serialize_tiles,
)
from .render import RenderStyle, render_svg
from .substitution import (
    InconsistentInputError,
    IterationError,
    NotCoveredError,
    Substitution,
    check_consistent_on,
    check_nonoverlapping_on,
    cover_graph,
    iterate,
    validate,
)
from .wang import build_consistency_reduction, build_overlap_reduction, find_cycle


class UsageError(Exception):
    pass


def fmt_cells(cells) -> str:
    return " ".join(str(c) for c in cells)


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load_substitution(path: str) -> Substitution:
    doc = parse_document(_read(path))
    if doc.substitution is None:
        raise UsageError(f"{path}: no substitution (missing alphabet line)")
    return doc.substitution


def load_pattern(spec: str, s: Optional[Substitution] = None) -> Pattern:
    """``file`` (first pattern block) or ``file::name``."""
    path, _, name = spec.partition("::")
    doc = parse_document(_read(path))
    try:
        P = doc.pattern(name or None)
    except KeyError as exc:
        raise UsageError(f"{path}: {exc.args[0]}") from None
    if s is not None:
        unknown = sorted({c.type for c in P} - set(s.alphabet))
        if unknown:
            raise UsageError(f"{spec}: symbols not in the alphabet: {' '.join(unknown)}")
    return P


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def cmd_validate(args, out) -> int:
    s = load_substitution(args.subst)
    problems = validate(s)
    out(f"symbols: {len(s.alphabet)}")
    out(f"rules: {len(s.rules)}")
    if problems:
        out("valid: no")
        for p in problems:
            out(f"violation: {p}")
        return 1
    out("valid: yes")
    return 0


def _components(g) -> List[List[Cell]]:
    seen, comps = set(), []
    for c in sorted(g):
        if c in seen:
            continue
        stack, comp = [c], []
        seen.add(c)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in g[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def cmd_coverage(args, out) -> int:
    s = load_substitution(args.subst)
    P = load_pattern(args.pattern, s)
    comps = _components(cover_graph(s, P))
    out(f"cells: {len(P)}")
    out(f"components: {len(comps)}")
    if len(comps) <= 1:
        out("covered: yes")
        return 0
    out("covered: no")
    for i, comp in enumerate(comps):
        out(f"component {i}: {fmt_cells(comp)}")
    return 1


def _print_loop(out, loop, vector) -> None:
    out("consistent: no")
    out(f"loop: {fmt_cells(loop)}")
    out(f"image_vector: {fmt_vec(vector)}")


def cmd_consistency(args, out) -> int:
    s = load_substitution(args.subst)
    if args.pattern:
        P = load_pattern(args.pattern, s)
        v = check_consistent_on(s, P)
        if v:
            out("consistent: yes")
            return 0
        _print_loop(out, v.witness, v.image_vector)
        return 1
    if args.restricted:
        squares = parse_squares(_read(args.restricted))
        verdict = check_consistency_restricted(s, squares)
    else:
        complete = is_domino_complete(s)
        verdict = check_consistency_domino_complete(s, strict=False)
        if verdict and not complete:
            raise PreconditionError(
                "substitution is not domino-complete; missing " + " ".join(map(str, complete.missing))
            )
    out(f"squares_checked: {verdict.checked}")
    if verdict:
        out("consistent: yes")
        return 0
    w = verdict.witness
    bl, br, tl, tr = (w.type_at(v) for v in ((0, 0), (1, 0), (0, 1), (1, 1)))
    _print_loop(out, (Cell((0, 0), bl), Cell((1, 0), br), Cell((1, 1), tr), Cell((0, 1), tl), Cell((0, 0), bl)),
                verdict.loop_vector)
    out(f"square: {fmt_cells(w)}")
    return 1


def cmd_overlap(args, out) -> int:
    s = load_substitution(args.subst)
    if args.pattern:
        P = load_pattern(args.pattern, s)
        v = check_nonoverlapping_on(s, P)
        if v:
            out("overlapping: no")
            return 0
        a, b = v.witness
        out("overlapping: yes")
        out(f"cells: {a} {b}")
        out(f"path: {fmt_cells(v.path)}")
        out(f"collision_vector: {fmt_vec(v.collision_vector)}")
        return 1
    d = decide_overlap(s)
    if not d.overlapping:
        out("overlapping: no")
        return 0
    out("overlapping: yes")
    out(f"t: {d.t}")
    out(f"t_prime: {d.t_prime}")
    out(f"a: {fmt_vec(d.a)}")
    out(f"b: {fmt_vec(d.b)}")
    out(f"xy: {fmt_vec(d.xy)}")
    return 1


def cmd_structure(args, out) -> int:
    s = load_substitution(args.subst)
    st = extract_structure(s)
    out(f"t0: {st.t0}")
    out(f"alpha: {fmt_vec(st.alpha)}")
    out(f"beta: {fmt_vec(st.beta)}")
    for t in s.alphabet:
        out(f"v({t}): {fmt_vec(st.v[t])}")
    return 0


def _parse_origin(text: str):
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad origin {text!r}; expected x,y") from None


def cmd_apply(args, out) -> int:
    s = load_substitution(args.subst)
    P = load_pattern(args.pattern, s)
    origin = None
    if args.origin:
        v = _parse_origin(args.origin)
        origin = P.cell_at(v)
        if origin is None:
            raise UsageError(f"no cell at {fmt_vec(v)} in the pattern")
    try:
        seq = iterate(s, P, args.iterations, origin)
    except IterationError as exc:
        cause = exc.cause
        out(f"failed_iterate: {exc.index}")
        if isinstance(cause, CollisionError):
            a, b = cause.cells
            out("collision: yes")
            out(f"cells: {a} {b}")
            out(f"position: {fmt_vec(cause.vector)}")
            return 1
        out("covered: no")
        out(f"reason: {cause}")
        return 1
    result = seq[-1]
    text = serialize_pattern(result, "image")
    out(f"iterations: {args.iterations}")
    out(f"cells: {len(result)}")
    if args.out:
        _write(args.out, text)
        out(f"out: {args.out}")
    else:
        for line in text.splitlines():
            out(line)
    return 0


def cmd_render(args, out) -> int:
    P = load_pattern(args.pattern)
    svg = render_svg(P, RenderStyle(cell_size=args.cell_size))
    _write(args.svg, svg)
    out(f"cells: {len(P)}")
    out(f"svg: {args.svg}")
    return 0


def cmd_wang_reduce(args, out) -> int:
    T = parse_tiles(_read(args.tiles))
    if args.overlap:
        try:
            red = build_overlap_reduction(T, *args.overlap)
        except (KeyError, IndexError) as exc:
            raise UsageError(str(exc.args[0])) from None
        s = red.substitution
        out("reduction: overlap")
        out(f"a0: {red.a0}")
        out(f"b0: {red.b0}")
    else:
        s = build_consistency_reduction(T)
        out("reduction: consistency")
    out(f"symbols: {len(s.alphabet)}")
    out(f"rules: {len(s.rules)}")
    text = serialize_substitution(s)
    if args.out:
        _write(args.out, text)
        out(f"out: {args.out}")
    else:
        for line in text.splitlines():
            out(line)
    return 0


def cmd_wang_cycle(args, out) -> int:
    T = parse_tiles(_read(args.tiles))
    if args.max_cells < 4:
        raise UsageError("--max-cells must be at least 4")
    cyc = find_cycle(T, args.max_cells)
    out(f"max_cells: {args.max_cells}")
    if cyc is None:
        out("cycle: none within bound")
        return 1
    out("cycle: found")
    out(f"length: {cyc.length}")
    out("placements: " + " ".join(f"{fmt_vec(p)}:{T.tokens[i]}" for p, i in cyc.placements))
    return 0


def _example_text(name: str) -> str:
    if name == "surf":
        return fixture_text("surf")
    e = example(name)
    parts = []
    if e.substitution is not None:
        parts.append(serialize_substitution(e.substitution))
    for pname, P in e.patterns.items():
        parts.append(serialize_pattern(P, pname))
    if e.tiles is not None:
        parts.append(serialize_tiles(e.tiles))
    return "\n".join(parts)


def cmd_corpus(args, out) -> int:
    try:
        text = _example_text(args.name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        target = d / args.name.replace("(", "").replace(")", "")
        _write(str(target), text)
        out(f"out: {target}")
    else:
        for line in text.splitlines():
            out(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="combsub", description="Combinatorial substitution toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("validate", help="check substitution invariants")
    q.add_argument("subst")
    q.set_defaults(func=cmd_validate)

    q = sub.add_parser("coverage", help="is the pattern covered by starting patterns?")
    q.add_argument("subst")
    q.add_argument("pattern", help="pattern file, optionally FILE::NAME")
    q.set_defaults(func=cmd_coverage)

    q = sub.add_parser("consistency", help="consistency on a pattern or globally")
    q.add_argument("subst")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--pattern")
    g.add_argument("--domino-complete", action="store_true")
    g.add_argument("--restricted", metavar="SQUARES")
    q.set_defaults(func=cmd_consistency)

    q = sub.add_parser("overlap", help="overlap on a pattern or globally")
    q.add_argument("subst")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--pattern")
    g.add_argument("--global", dest="global_", action="store_true")
    q.set_defaults(func=cmd_overlap)

    q = sub.add_parser("structure", help="lattice structure of a domino-complete substitution")
    q.add_argument("subst")
    q.set_defaults(func=cmd_structure)

    q = sub.add_parser("apply", help="image of a pattern")
    q.add_argument("subst")
    q.add_argument("pattern")
    q.add_argument("--origin", help="x,y of the start cell")
    q.add_argument("--iterations", type=int, default=1)
    q.add_argument("--out")
    q.set_defaults(func=cmd_apply)

    q = sub.add_parser("render", help="draw a pattern as SVG")
    q.add_argument("pattern")
    q.add_argument("--svg", required=True)
    q.add_argument("--cell-size", type=int, default=20)
    q.set_defaults(func=cmd_render)

    w = sub.add_parser("wang", help="Wang tile tools").add_subparsers(dest="wang_command", required=True)
    q = w.add_parser("reduce", help="substitution from a tile set")
    q.add_argument("tiles")
    q.add_argument("--overlap", nargs=2, metavar=("A", "B"))
    q.add_argument("--out")
    q.set_defaults(func=cmd_wang_reduce)
    q = w.add_parser("cycle", help="bounded search for a tiled cycle")
    q.add_argument("tiles")
    q.add_argument("--max-cells", type=int, required=True)
    q.set_defaults(func=cmd_wang_cycle)

    q = sub.add_parser("corpus", help="print or write a bundled example")
    q.add_argument("name", help=", ".join(NAMES + ("surf", "overlapfar(N)")))
    q.add_argument("--out-dir")
    q.set_defaults(func=cmd_corpus)
    return p


def main(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2

    def out(line: str) -> None:
        print(line, file=stdout)

    try:
        if args.command == "render" and args.cell_size <= 0:
            raise UsageError("--cell-size must be positive")
        if args.command == "apply" and args.iterations < 0:
            raise UsageError("--iterations must be non-negative")
        return args.func(args, out)
    except (UsageError, ParseError, PreconditionError, StructureError, NotCoveredError,
            InconsistentInputError, DimensionError, ValueError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2


def entry() -> None:
    sys.exit(main())
