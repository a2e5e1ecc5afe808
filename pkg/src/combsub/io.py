"""Line-oriented text formats for substitutions, patterns and tile sets.

A document may mix the three kinds of lines::

    # comment
    alphabet 1 2
    base 1 : (0,0)->1
    base 2 : (0,0)->2 (1,0)->1
    rule 1 2 (1,0) -> (1,0)

    pattern start
    cell (0,0) 1
    cell (1,0) 2

    tile a n=0 e=1 s=0 w=1

Parsing is strict and every error reports a 1-based line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .core import Pattern, Vec, check_symbol, fmt_vec, vneg
from .substitution import Rule, Substitution
from .wang import WangTile, WangTileSet


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


_VEC = r"\(\s*-?\d+(?:\s*,\s*-?\d+)*\s*\)"
_TOKEN = r"[^\s(),:#]+"
_BASE_ENTRY = re.compile(rf"({_VEC})\s*->\s*({_TOKEN})")
_RULE = re.compile(rf"rule\s+({_TOKEN})\s+({_TOKEN})\s+({_VEC})\s*->\s*({_VEC})\s*$")
_CELL = re.compile(rf"cell\s+({_VEC})\s+({_TOKEN})\s*$")
_TILE_SIDE = re.compile(rf"([nesw])=({_TOKEN})")


def _vec(text: str) -> Vec:
    return tuple(int(x) for x in text.strip()[1:-1].split(","))


@dataclass
class Document:
    substitution: Optional[Substitution] = None
    patterns: List[Tuple[str, Pattern]] = field(default_factory=list)
    tiles: Optional[WangTileSet] = None

    def pattern(self, name: Optional[str] = None) -> Pattern:
        if not self.patterns:
            raise KeyError("no pattern in document")
        if name is None:
            return self.patterns[0][1]
        for n, p in self.patterns:
            if n == name:
                return p
        raise KeyError(f"no pattern named {name!r}")


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.alphabet: Optional[List[str]] = None
        self.alphabet_set: set = set()
        self.alphabet_line = 0
        self.dim: Optional[int] = None
        self.base: Dict[str, Tuple[int, Pattern]] = {}
        self.rules: Dict[Tuple[str, str, Vec], Tuple[int, Rule]] = {}
        self.patterns: List[Tuple[str, Dict[Vec, Tuple[int, str]], int]] = []
        self.tiles: List[WangTile] = []
        self.tile_names: Dict[str, int] = {}

    def error(self, msg: str, ln: int, raw: str, needle: Optional[str] = None, start: int = 0):
        col = 1
        if needle is not None:
            pos = raw.find(needle, start)
            if pos >= 0:
                col = pos + 1
        raise ParseError(msg, ln, col)

    def check_dim(self, v: Vec, ln: int, raw: str, text: str):
        if self.dim is None:
            self.dim = len(v)
        elif len(v) != self.dim:
            self.error(f"vector {fmt_vec(v)} has dimension {len(v)}, expected {self.dim}", ln, raw, text)

    def known(self, sym: str, ln: int, raw: str, start: int = 0):
        if self.alphabet is None:
            self.error("symbol used before the alphabet line", ln, raw, sym, start)
        if sym not in self.alphabet_set:
            self.error(f"unknown symbol {sym!r}", ln, raw, sym, start)

    def run(self) -> Document:
        for ln, raw in enumerate(self.lines, start=1):
            body = raw.split("#", 1)[0].rstrip()
            if not body.strip():
                continue
            head = body.split()[0]
            handler = getattr(self, "_" + head, None)
            if handler is None or head.startswith("_"):
                self.error(f"unknown directive {head!r}", ln, raw, head)
            handler(ln, raw, body)
        return self.finish()

    def _alphabet(self, ln, raw, body):
        if self.alphabet is not None:
            self.error("duplicate alphabet line", ln, raw)
        syms = body.split()[1:]
        if not syms:
            self.error("empty alphabet", ln, raw)
        seen = set()
        for s in syms:
            try:
                check_symbol(s)
            except ValueError as exc:
                self.error(str(exc), ln, raw, s)
            if s in seen:
                self.error(f"symbol {s!r} listed twice", ln, raw, s, raw.find(s) + len(s))
            seen.add(s)
        self.alphabet = syms
        self.alphabet_set = seen
        self.alphabet_line = ln

    def _base(self, ln, raw, body):
        m = re.match(rf"\s*base\s+({_TOKEN})\s*:\s*(.*)$", body)
        if not m:
            self.error("expected 'base <symbol> : (x,y)-><symbol> ...'", ln, raw)
        sym, rest = m.group(1), m.group(2)
        self.known(sym, ln, raw, m.start(1))
        if sym in self.base:
            self.error(f"duplicate base line for {sym!r} (first on line {self.base[sym][0]})", ln, raw, "base")
        offset = m.start(2)
        cells = {}
        pos = 0
        while pos < len(rest):
            if rest[pos].isspace():
                pos += 1
                continue
            e = _BASE_ENTRY.match(rest, pos)
            if not e:
                raise ParseError("expected '(x,y)-><symbol>'", ln, offset + pos + 1)
            v = _vec(e.group(1))
            self.check_dim(v, ln, raw, e.group(1))
            self.known(e.group(2), ln, raw, offset + e.start(2))
            if v in cells:
                raise ParseError(f"vector {fmt_vec(v)} repeated in base image", ln, offset + pos + 1)
            cells[v] = e.group(2)
            pos = e.end()
        if not cells:
            self.error("base image must not be empty", ln, raw)
        self.base[sym] = (ln, Pattern.from_mapping(cells))

    def _rule(self, ln, raw, body):
        m = _RULE.match(body.strip())
        if not m:
            self.error("expected 'rule <t> <t'> (ux,uy) -> (vx,vy)'", ln, raw)
        lead = len(body) - len(body.lstrip())
        t, tp, u, v = m.group(1), m.group(2), _vec(m.group(3)), _vec(m.group(4))
        self.known(t, ln, raw, lead + m.start(1))
        self.known(tp, ln, raw, lead + m.start(2))
        self.check_dim(u, ln, raw, m.group(3))
        self.check_dim(v, ln, raw, m.group(4))
        if not any(u):
            raise ParseError("rule offset must be nonzero", ln, lead + m.start(3) + 1)
        for key, what in (((t, tp, u), "same left-hand side"), ((tp, t, vneg(u)), "reverse form")):
            if key in self.rules:
                first = self.rules[key][0]
                raise ParseError(f"rule clashes with line {first} ({what})", ln, lead + 1)
        self.rules[(t, tp, u)] = (ln, Rule(t, tp, u, v))

    def _pattern(self, ln, raw, body):
        parts = body.split()
        if len(parts) > 2:
            self.error("expected 'pattern [<name>]'", ln, raw, parts[2])
        name = parts[1] if len(parts) == 2 else f"pattern{len(self.patterns) + 1}"
        if any(n == name for n, _, _ in self.patterns):
            self.error(f"duplicate pattern name {name!r}", ln, raw, name)
        self.patterns.append((name, {}, ln))

    def _cell(self, ln, raw, body):
        if not self.patterns:
            self.error("cell line outside a pattern block", ln, raw, "cell")
        m = _CELL.match(body.strip())
        if not m:
            self.error("expected 'cell (x,y) <symbol>'", ln, raw)
        lead = len(body) - len(body.lstrip())
        v, sym = _vec(m.group(1)), m.group(2)
        try:
            check_symbol(sym)
        except ValueError as exc:
            raise ParseError(str(exc), ln, lead + m.start(2) + 1) from None
        cells = self.patterns[-1][1]
        if cells:
            d = len(next(iter(cells)))
            if len(v) != d:
                raise ParseError(f"vector {fmt_vec(v)} has dimension {len(v)}, expected {d}", ln, lead + m.start(1) + 1)
        if v in cells:
            raise ParseError(f"two cells at {fmt_vec(v)} (first on line {cells[v][0]})", ln, lead + m.start(1) + 1)
        cells[v] = (ln, sym)

    def _tile(self, ln, raw, body):
        parts = body.split()
        if len(parts) != 6:
            self.error("expected 'tile <name> n=<c> e=<c> s=<c> w=<c>'", ln, raw)
        name = parts[1]
        try:
            check_symbol(name)
        except ValueError as exc:
            self.error(str(exc), ln, raw, name)
        if name in self.tile_names:
            self.error(f"duplicate tile {name!r} (first on line {self.tile_names[name]})", ln, raw, name)
        sides = {}
        for p in parts[2:]:
            m = _TILE_SIDE.fullmatch(p)
            if not m or m.group(1) in sides:
                self.error(f"bad or repeated side {p!r}", ln, raw, p)
            sides[m.group(1)] = m.group(2)
        self.tile_names[name] = ln
        self.tiles.append(WangTile(sides["n"], sides["e"], sides["s"], sides["w"], name))

    def finish(self) -> Document:
        doc = Document()
        if self.alphabet is not None:
            for sym in self.alphabet:
                if sym not in self.base:
                    self.error(f"no base line for symbol {sym!r}", self.alphabet_line,
                               self.lines[self.alphabet_line - 1], sym)
            doc.substitution = Substitution(
                tuple(self.alphabet),
                {s: p for s, (_, p) in self.base.items()},
                tuple(r for _, r in self.rules.values()),
                dim=self.dim or 2,
            )
        elif self.base or self.rules:
            raise ParseError("base or rule lines without an alphabet line", 1, 1)
        for name, cells, ln in self.patterns:
            dim = len(next(iter(cells))) if cells else 2
            if doc.substitution is not None and cells:
                for v, (cln, sym) in cells.items():
                    if sym not in self.alphabet_set:
                        raw = self.lines[cln - 1]
                        self.error(f"unknown symbol {sym!r}", cln, raw, sym, raw.find(")"))
            doc.patterns.append((name, Pattern.from_mapping({v: s for v, (_, s) in cells.items()}, dim=dim)))
        if self.tiles:
            doc.tiles = WangTileSet(self.tiles)
        return doc


def parse_document(text: str) -> Document:
    return _Parser(text).run()


def parse_substitution(text: str) -> Substitution:
    doc = parse_document(text)
    if doc.substitution is None:
        raise ParseError("no alphabet line", 1, 1)
    return doc.substitution


def parse_patterns(text: str) -> List[Tuple[str, Pattern]]:
    return parse_document(text).patterns


def parse_pattern(text: str, name: Optional[str] = None) -> Pattern:
    doc = parse_document(text)
    try:
        return doc.pattern(name)
    except KeyError as exc:
        raise ParseError(str(exc.args[0]), 1, 1) from None


def parse_tiles(text: str) -> WangTileSet:
    doc = parse_document(text)
    if doc.tiles is None:
        raise ParseError("no tile lines", 1, 1)
    return doc.tiles


def parse_squares(text: str) -> List[Pattern]:
    """Pattern blocks that must each be a full 2x2 square."""
    out = []
    for name, p in parse_document(text).patterns:
        if p.dim != 2 or len(p) != 4:
            raise ValueError(f"pattern {name!r} is not a 2x2 square")
        (x0, y0), (x1, y1) = p.bounding_box()
        if (x1 - x0, y1 - y0) != (1, 1):
            raise ValueError(f"pattern {name!r} is not a 2x2 square")
        out.append(p)
    return out


def serialize_substitution(s: Substitution) -> str:
    lines = ["alphabet " + " ".join(s.alphabet)]
    for sym in s.alphabet:
        entries = " ".join(f"{fmt_vec(c.vector)}->{c.type}" for c in s.base[sym])
        lines.append(f"base {sym} : {entries}")
    for r in s.rules:
        lines.append(f"rule {r.t} {r.t_prime} {fmt_vec(r.u)} -> {fmt_vec(r.v)}")
    return "\n".join(lines) + "\n"


def serialize_pattern(P: Pattern, name: Optional[str] = None) -> str:
    head = "pattern" if name is None else f"pattern {name}"
    return "\n".join([head] + [f"cell {fmt_vec(c.vector)} {c.type}" for c in P]) + "\n"


def serialize_tiles(T: WangTileSet) -> str:
    return "".join(
        f"tile {tok} n={t.north} e={t.east} s={t.south} w={t.west}\n" for tok, t in zip(T.tokens, T.tiles)
    )
