"""Wang tiles, a bounded cycle search, and the two tile-set reductions.

The reductions turn a tile set into a substitution: one whose consistency
fails exactly when the tiles can tile a cycle, and one whose images overlap
when a cycle passes through a chosen horizontal pair of tiles.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .core import Cell, Pattern, Vec, check_symbol, vadd, vsub
from .substitution import Rule, Substitution

EAST, NORTH, WEST, SOUTH = (1, 0), (0, 1), (-1, 0), (0, -1)
DIRECTIONS = (EAST, NORTH, WEST, SOUTH)
ARROWS = {EAST: "E", NORTH: "N", WEST: "W", SOUTH: "S"}
ARROW_VECTORS = {name: d for d, name in ARROWS.items()}


@dataclass(frozen=True)
class WangTile:
    north: str
    east: str
    south: str
    west: str
    name: Optional[str] = None

    def side(self, d: Vec) -> str:
        return {NORTH: self.north, EAST: self.east, SOUTH: self.south, WEST: self.west}[d]


def matches(a: WangTile, b: WangTile, d: Vec) -> bool:
    """Do the shared edge colours agree when ``b`` sits at offset ``d`` from ``a``?"""
    d = tuple(d)
    if d not in ARROWS:
        raise ValueError(f"not a unit direction: {d}")
    return a.side(d) == b.side((-d[0], -d[1]))


class WangTileSet:
    """Tiles with stable indices; each tile also gets a symbol token."""

    def __init__(self, tiles: Sequence[WangTile]):
        tiles = tuple(tiles)
        if not tiles:
            raise ValueError("a tile set needs at least one tile")
        tokens = [t.name if t.name is not None else str(i) for i, t in enumerate(tiles)]
        for tok in tokens:
            check_symbol(tok)
        if len(set(tokens)) != len(tokens):
            raise ValueError("tile names must be distinct")
        self.tiles = tiles
        self.tokens = tuple(tokens)

    def __len__(self) -> int:
        return len(self.tiles)

    def __getitem__(self, i: int) -> WangTile:
        return self.tiles[i]

    def index(self, ref) -> int:
        """Index of a tile given as index or token."""
        if isinstance(ref, int):
            if not 0 <= ref < len(self.tiles):
                raise IndexError(f"no tile {ref}")
            return ref
        if ref in self.tokens:
            return self.tokens.index(ref)
        if isinstance(ref, str) and ref.isdigit() and int(ref) < len(self.tiles):
            return int(ref)
        raise KeyError(f"unknown tile {ref!r}")

    def __eq__(self, other):
        if not isinstance(other, WangTileSet):
            return NotImplemented
        colours = lambda ts: [(t.north, t.east, t.south, t.west) for t in ts.tiles]
        return self.tokens == other.tokens and colours(self) == colours(other)

    __hash__ = None


@dataclass(frozen=True)
class TileCycle:
    placements: Tuple[Tuple[Vec, int], ...]  # closing repeat included

    @property
    def length(self) -> int:
        return len(self.placements)

    @property
    def positions(self) -> Tuple[Vec, ...]:
        return tuple(p for p, _ in self.placements)


def is_tile_cycle(T: WangTileSet, cycle: TileCycle) -> bool:
    pl = cycle.placements
    if len(pl) < 5 or pl[0] != pl[-1]:
        return False
    if len({p for p, _ in pl[:-1]}) != len(pl) - 1:
        return False
    for (p, i), (q, j) in zip(pl, pl[1:]):
        d = vsub(q, p)
        if d not in ARROWS or not matches(T[i], T[j], d):
            return False
    return True


class SearchLimitReached(RuntimeError):
    pass


def find_cycle(
    T: WangTileSet,
    max_cells: int,
    first_edge: Optional[Tuple[int, int]] = None,
    node_limit: Optional[int] = None,
) -> Optional[TileCycle]:
    """First tiled cycle with at most ``max_cells`` distinct cells, or None.

    Depth-first from the origin; moves are tried by tile index, then by
    direction E, N, W, S. With ``first_edge=(a, b)`` the origin holds tile
    ``a`` and the first step goes east onto tile ``b``. A ``None`` result
    only means nothing was found within the bound. ``node_limit`` caps the
    number of placements tried and raises ``SearchLimitReached``.
    """
    if max_cells < 4:
        raise ValueError("max_cells must be at least 4")
    origin = (0, 0)
    n = len(T)
    tried = 0

    def dfs(path: List[Tuple[Vec, int]], used: set) -> Optional[List[Tuple[Vec, int]]]:
        nonlocal tried
        pos, cur = path[-1]
        k = len(path)
        for j in range(n):
            for d in DIRECTIONS:
                if not matches(T[cur], T[j], d):
                    continue
                q = vadd(pos, d)
                if q == origin:
                    if j == path[0][1] and k >= 4:
                        return path + [(origin, j)]
                    continue
                if q in used:
                    continue
                # the walk back needs |q| - 1 further new cells
                if abs(q[0]) + abs(q[1]) - 1 > max_cells - k - 1:
                    continue
                tried += 1
                if node_limit is not None and tried > node_limit:
                    raise SearchLimitReached(f"gave up after {node_limit} placements")
                used.add(q)
                found = dfs(path + [(q, j)], used)
                used.discard(q)
                if found:
                    return found
        return None

    if first_edge is not None:
        a, b = first_edge
        if not matches(T[a], T[b], EAST):
            return None
        found = dfs([(origin, a), (EAST, b)], {origin, EAST})
        return TileCycle(tuple(found)) if found else None
    for i in range(n):
        found = dfs([(origin, i)], {origin})
        if found:
            return TileCycle(tuple(found))
    return None


# -- consistency reduction -------------------------------------------------


def arrow_symbol(token: str, d: Vec) -> str:
    return f"{token}.{ARROWS[tuple(d)]}"


def build_consistency_reduction(T: WangTileSet) -> Substitution:
    """Domino-to-domino substitution over tiles decorated with an arrow.

    A matching domino gets a rule when exactly one cell points at the other;
    the image then places the pointed cell one step right of the pointing one.
    """
    alphabet = [arrow_symbol(tok, d) for tok in T.tokens for d in DIRECTIONS]
    base = {s: Pattern([Cell((0, 0), s)]) for s in alphabet}
    rules = []
    for i, ti in enumerate(T.tiles):
        for j, tj in enumerate(T.tiles):
            for d, back in ((EAST, WEST), (NORTH, SOUTH)):
                if not matches(ti, tj, d):
                    continue
                for ai in DIRECTIONS:
                    for aj in DIRECTIONS:
                        p, q = arrow_symbol(T.tokens[i], ai), arrow_symbol(T.tokens[j], aj)
                        if ai == d and aj != back:
                            rules.append(Rule(p, q, d, (1, 0)))
                        elif aj == back and ai != d:
                            rules.append(Rule(p, q, d, (-1, 0)))
    return Substitution(tuple(alphabet), base, tuple(rules))


def decorate_cycle(T: WangTileSet, cycle: TileCycle) -> Tuple[Cell, ...]:
    """The cycle as a loop of arrow cells, each pointing at its successor."""
    pl = cycle.placements
    cells = []
    for (p, i), (q, _) in zip(pl, pl[1:]):
        cells.append(Cell(p, arrow_symbol(T.tokens[i], vsub(q, p))))
    cells.append(cells[0])
    return tuple(cells)


# -- overlap reduction -----------------------------------------------------


@dataclass(frozen=True)
class OverlapReduction:
    substitution: Substitution
    a: int
    b: int
    a0: str
    b0: str


def _fresh(token: str, suffix: int, taken: set) -> str:
    name = f"{token}@{suffix}"
    while name in taken:
        name += "@"
    return name


def build_overlap_reduction(T: WangTileSet, a, b) -> OverlapReduction:
    """Horizontal factor-two copy of the tiles plus marked copies of ``a`` and ``b``.

    Ordinary cells go to ``(2x, y)``. The copy ``a0`` of ``a`` is pushed one
    step right and ``b0`` one step left, so an ``a0`` directly left of a
    ``b0`` lands on the same vector. There is no rule between ``a0`` and
    ``b0`` themselves, none with a cell right of ``a0`` and none with a cell
    left of ``b0``; those two cells can only be linked the long way round.
    """
    a, b = T.index(a), T.index(b)
    if not matches(T[a], T[b], EAST):
        raise ValueError(f"tile {T.tokens[a]} does not match {T.tokens[b]} on its east side")
    taken = set(T.tokens)
    a0 = _fresh(T.tokens[a], 0, taken)
    taken.add(a0)
    b0 = _fresh(T.tokens[b], 0 if a != b else 1, taken)
    alpha, beta = (2, 0), (0, 1)
    shift: Dict[str, Vec] = {tok: (0, 0) for tok in T.tokens}
    shift[a0], shift[b0] = (1, 0), (-1, 0)
    tile_of = {tok: T[i] for i, tok in enumerate(T.tokens)}
    tile_of[a0], tile_of[b0] = T[a], T[b]

    rules = []
    syms = list(T.tokens) + [a0, b0]
    for p in syms:
        for q in syms:
            for d, step in ((EAST, alpha), (NORTH, beta)):
                if not matches(tile_of[p], tile_of[q], d):
                    continue
                if d == EAST and (p == a0 or q == b0):
                    continue
                if p in (a0, b0) and q in (a0, b0):
                    continue
                rules.append(Rule(p, q, d, vadd(vsub(step, shift[p]), shift[q])))
    base = {s: Pattern([Cell((0, 0), s)]) for s in syms}
    return OverlapReduction(Substitution(tuple(syms), base, tuple(rules)), a, b, a0, b0)


def cycle_pattern(T: WangTileSet, cycle: TileCycle, replace: Optional[Dict[Vec, str]] = None) -> Pattern:
    """Cells of the cycle typed by tile token, with optional per-vector overrides."""
    replace = replace or {}
    return Pattern.from_mapping({p: replace.get(p, T.tokens[i]) for p, i in cycle.placements[:-1]})


def overlap_witness(T: WangTileSet, red: OverlapReduction, max_cells: int) -> Optional[Pattern]:
    """Cycle through the ``a``-``b`` pair with that pair replaced by ``a0``-``b0``."""
    cycle = find_cycle(T, max_cells, first_edge=(red.a, red.b))
    if cycle is None:
        return None
    return cycle_pattern(T, cycle, {(0, 0): red.a0, EAST: red.b0})
