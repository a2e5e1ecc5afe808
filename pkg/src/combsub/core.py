"""Integer-lattice cells and patterns.

Vectors are plain tuples of ints. A pattern is an immutable set of typed
cells with pairwise distinct vectors; iteration is always in lexicographic
vector order so that printed output is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Tuple

Vec = Tuple[int, ...]

_BAD_TOKEN = re.compile(r"[\s(),:#]")


class DimensionError(ValueError):
    pass


class CollisionError(ValueError):
    """Two parts of a union put a cell on the same vector.

    ``first`` and ``second`` index the colliding parts (first < second).
    Callers that know what the parts stand for may attach them as ``cells``.
    """

    def __init__(self, first: int, second: int, vector: Vec, cells=None):
        self.first = first
        self.second = second
        self.vector = vector
        self.cells = cells
        super().__init__(self._message())

    def _message(self) -> str:
        if self.cells is not None:
            a, b = self.cells
            return f"images of {a} and {b} collide at {fmt_vec(self.vector)}"
        return f"parts {self.first} and {self.second} collide at {fmt_vec(self.vector)}"

    def with_cells(self, a: "Cell", b: "Cell") -> "CollisionError":
        return CollisionError(self.first, self.second, self.vector, (a, b))


def check_symbol(sym: str) -> str:
    if not isinstance(sym, str) or not sym or _BAD_TOKEN.search(sym):
        raise ValueError(f"invalid symbol token {sym!r}")
    return sym


def symbol_key(sym: str):
    """Canonical token order: integers numerically first, then strings."""
    if sym.lstrip("-").isdigit():
        return (0, int(sym), sym)
    return (1, 0, sym)


def sorted_symbols(symbols: Iterable[str]) -> list:
    return sorted(symbols, key=symbol_key)


def _same_dim(u: Vec, v: Vec) -> None:
    if len(u) != len(v):
        raise DimensionError(f"dimension mismatch: {fmt_vec(u)} vs {fmt_vec(v)}")


def vadd(u: Vec, v: Vec) -> Vec:
    _same_dim(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    _same_dim(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(k: int, u: Vec) -> Vec:
    return tuple(k * a for a in u)


def zero(d: int) -> Vec:
    return (0,) * d


def max_norm(u: Vec) -> int:
    return max((abs(a) for a in u), default=0)


def fmt_vec(v: Vec) -> str:
    return "(" + ",".join(str(a) for a in v) + ")"


UNIT_VECTORS_2D = ((1, 0), (0, 1), (-1, 0), (0, -1))


@dataclass(frozen=True, order=True)
class Cell:
    vector: Vec
    type: str

    def __post_init__(self):
        if not isinstance(self.vector, tuple):
            object.__setattr__(self, "vector", tuple(self.vector))

    @property
    def dim(self) -> int:
        return len(self.vector)

    def __add__(self, v: Vec) -> "Cell":
        return Cell(vadd(self.vector, v), self.type)

    def __str__(self) -> str:
        return f"[{fmt_vec(self.vector)},{self.type}]"


class Pattern:
    """A finite set of cells with pairwise distinct vectors."""

    __slots__ = ("_cells", "_dim", "_hash")

    def __init__(self, cells: Iterable[Cell] = (), dim: Optional[int] = None):
        table = {}
        for c in cells:
            if not isinstance(c, Cell):
                c = Cell(*c)
            if dim is None:
                dim = c.dim
            elif c.dim != dim:
                raise DimensionError(f"cell {c} is not {dim}-dimensional")
            if c.vector in table:
                raise ValueError(f"two cells share vector {fmt_vec(c.vector)}")
            table[c.vector] = c.type
        self._cells = dict(sorted(table.items()))
        self._dim = 2 if dim is None else dim
        self._hash = None

    @classmethod
    def from_mapping(cls, mapping: Mapping[Vec, str], dim: Optional[int] = None) -> "Pattern":
        return cls((Cell(tuple(v), t) for v, t in mapping.items()), dim=dim)

    @property
    def dim(self) -> int:
        return self._dim

    def __len__(self) -> int:
        return len(self._cells)

    def __iter__(self) -> Iterator[Cell]:
        return (Cell(v, t) for v, t in self._cells.items())

    def __contains__(self, cell) -> bool:
        return isinstance(cell, Cell) and self._cells.get(cell.vector) == cell.type

    def __bool__(self) -> bool:
        return bool(self._cells)

    def type_at(self, v: Vec) -> Optional[str]:
        return self._cells.get(v)

    def cell_at(self, v: Vec) -> Optional[Cell]:
        t = self._cells.get(v)
        return None if t is None else Cell(v, t)

    def items(self):
        return self._cells.items()

    @property
    def cells(self) -> Tuple[Cell, ...]:
        return tuple(self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Pattern):
            return NotImplemented
        return self._cells == other._cells and (not self._cells or self._dim == other._dim)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._cells.items()))
        return self._hash

    def __repr__(self) -> str:
        return "Pattern({" + ", ".join(str(c) for c in self) + "})"

    def __add__(self, v: Vec) -> "Pattern":
        return translate(self, v)

    def min_vector(self) -> Vec:
        return next(iter(self._cells))

    def canonical(self) -> "Pattern":
        """Translate so that the lexicographically least cell sits at the origin."""
        if not self._cells:
            return self
        return translate(self, vneg(self.min_vector()))

    def bounding_box(self) -> Tuple[Vec, Vec]:
        vs = list(self._cells)
        lo = tuple(min(c) for c in zip(*vs))
        hi = tuple(max(c) for c in zip(*vs))
        return lo, hi


def translate(P: Pattern, v: Vec) -> Pattern:
    if len(v) != P.dim:
        raise DimensionError(f"cannot translate a {P.dim}-dimensional pattern by {fmt_vec(v)}")
    return Pattern((Cell(vadd(c.vector, v), c.type) for c in P), dim=P.dim)


def support(P: Pattern) -> frozenset:
    return frozenset(v for v, _ in P.items())


@dataclass(frozen=True)
class Domino:
    orientation: str  # "horizontal" or "vertical"
    first: str        # left or bottom type
    second: str       # right or top type

    def pattern(self, at: Vec = (0, 0)) -> Pattern:
        step = (1, 0) if self.orientation == "horizontal" else (0, 1)
        return Pattern([Cell(at, self.first), Cell(vadd(at, step), self.second)])

    def __str__(self) -> str:
        sep = "|" if self.orientation == "horizontal" else "/"
        return f"{self.first}{sep}{self.second}"


def classify_domino(P: Pattern) -> Optional[Domino]:
    if P.dim != 2:
        raise DimensionError("dominoes are two-dimensional")
    if len(P) != 2:
        return None
    a, b = P.cells  # sorted: a is left of / below b when they form a domino
    dx, dy = vsub(b.vector, a.vector)
    if (dx, dy) == (1, 0):
        return Domino("horizontal", a.type, b.type)
    if (dx, dy) == (0, 1):
        return Domino("vertical", a.type, b.type)
    return None


def merge_checked(parts: Sequence[Pattern]) -> Pattern:
    """Union of patterns that must not share any vector.

    Coinciding cells are a collision even when their types agree.
    """
    owner = {}
    merged = []
    dim = None
    for i, part in enumerate(parts):
        if dim is None:
            dim = part.dim if part else None
        elif part and part.dim != dim:
            raise DimensionError("parts have different dimensions")
        for c in part:
            j = owner.get(c.vector)
            if j is not None:
                raise CollisionError(j, i, c.vector)
            owner[c.vector] = i
            merged.append(c)
    return Pattern(merged, dim=dim)


def rectangle(rows: Sequence[Sequence[str]], origin: Vec = (0, 0)) -> Pattern:
    """Pattern from a row-major grid; ``rows[0]`` is the bottom row (y up)."""
    x0, y0 = origin
    return Pattern(
        Cell((x0 + x, y0 + y), t)
        for y, row in enumerate(rows)
        for x, t in enumerate(row)
        if t is not None
    )


def square(bl: str, br: str, tl: str, tr: str) -> Pattern:
    return rectangle([[bl, br], [tl, tr]])
