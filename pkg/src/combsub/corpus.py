"""Bundled examples, the 28 stepped-surface squares and test-data generators.

All example data lives in the text fixtures next to this module and is
loaded through the parser.
"""

from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from importlib import resources
from string import Template
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import Pattern, rectangle, square
from .io import parse_document, parse_squares
from .substitution import Substitution, cover_graph
from .wang import WangTileSet

NAMES = ("intro", "jp", "inconsistent", "overlapping", "tshape", "overlapfar", "mini", "uniform1")

TAGS = {
    "intro": ("consistent",),
    "jp": ("consistent",),
    "inconsistent": ("inconsistent",),
    "overlapping": ("consistent", "overlapping"),
    "tshape": ("domino-complete", "consistent"),
    "overlapfar": ("domino-complete", "consistent", "overlapping"),
    "mini": ("restricted-complete", "consistent"),
    "uniform1": (),
}


@dataclass(frozen=True)
class NamedExample:
    name: str
    substitution: Optional[Substitution]
    patterns: Dict[str, Pattern] = field(default_factory=dict)
    notes: Tuple[str, ...] = ()
    tiles: Optional[WangTileSet] = None


def fixture_text(name: str) -> str:
    return resources.files(__package__).joinpath("fixtures", name).read_text(encoding="utf-8")


def overlapfar_text(n: int) -> str:
    return Template(fixture_text("overlapfar")).substitute(
        n=n, np1=n + 1, one_minus_n=1 - n, minus_n=-n
    )


def overlapfar_pattern(n: int) -> Pattern:
    """A 2 at the origin, a 1 at ``(n,0)`` and a row of ``n+1`` ones above."""
    if n < 1:
        raise ValueError("the pattern needs n >= 1")
    cells = {(i, 1): "1" for i in range(n + 1)}
    cells[(0, 0)] = "2"
    cells[(n, 0)] = "1"
    return Pattern.from_mapping(cells)


_FAMILY = re.compile(r"overlapfar\(?(\d+)\)?$")


def example(name: str, n: Optional[int] = None) -> NamedExample:
    """Load a bundled example; the ``overlapfar`` family also takes ``n``.

    ``example("overlapfar", n=3)``, ``example("overlapfar(3)")`` and
    ``example("overlapfar3")`` are the same.
    """
    m = _FAMILY.match(name)
    if m:
        name, n = "overlapfar", int(m.group(1))
    if name not in NAMES:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(NAMES)}")
    if name == "overlapfar":
        if n is None or n < 0:
            raise ValueError("overlapfar needs a parameter n >= 0")
        doc = parse_document(overlapfar_text(n))
        patterns = {f"P{n}": overlapfar_pattern(n)} if n >= 1 else {}
        # with n = 0 both letters sit on the same lattice and nothing overlaps
        tags = TAGS[name] if n >= 1 else ("domino-complete", "consistent")
        return NamedExample(f"overlapfar({n})", doc.substitution, patterns, tags)
    if n is not None:
        raise ValueError(f"example {name!r} takes no parameter")
    doc = parse_document(fixture_text(name))
    return NamedExample(name, doc.substitution, dict(doc.patterns), TAGS[name], doc.tiles)


def surf_squares() -> List[Pattern]:
    return parse_squares(fixture_text("surf"))


def all_squares(alphabet: Sequence[str] = ("1", "2", "3")) -> List[Pattern]:
    return [square(bl, br, tl, tr) for bl, br, tl, tr in itertools.product(alphabet, repeat=4)]


def _window_key(P: Pattern) -> Tuple[str, str, str, str]:
    (x, y) = P.min_vector()
    return tuple(P.type_at(v) for v in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)))


def generate_surface_rectangles(
    width: int,
    height: int,
    limit: int,
    seed=0,
    squares: Optional[Iterable[Pattern]] = None,
) -> List[Pattern]:
    """Rectangles whose every 2x2 window is one of ``squares``.

    Cells are filled row by row from the bottom; the value order at each
    cell is shuffled by ``seed``. At most ``limit`` results are returned.
    """
    if width < 2 or height < 2:
        raise ValueError("width and height must be at least 2")
    squares = surf_squares() if squares is None else list(squares)
    allowed = {_window_key(sq) for sq in squares}
    letters = sorted({t for key in allowed for t in key}, key=lambda s: (len(s), s))
    rng = random.Random(seed)
    grid: List[List[Optional[str]]] = [[None] * width for _ in range(height)]
    out: List[Pattern] = []

    def fits(x: int, y: int) -> bool:
        if x == 0 or y == 0:
            return True
        key = (grid[y - 1][x - 1], grid[y - 1][x], grid[y][x - 1], grid[y][x])
        return key in allowed

    def fill(i: int) -> bool:
        if i == width * height:
            out.append(rectangle(grid))
            return len(out) >= limit
        y, x = divmod(i, width)
        order = letters[:]
        rng.shuffle(order)
        for t in order:
            grid[y][x] = t
            if fits(x, y) and fill(i + 1):
                return True
        grid[y][x] = None
        return False

    if limit > 0:
        fill(0)
    return out


def sample_covered_subpatterns(config: Pattern, s: Substitution, count: int, seed=0,
                               max_size: Optional[int] = None) -> List[Pattern]:
    """Random connected pieces of ``config`` grown along rule dominoes.

    Each piece is connected in the cover graph, hence covered.
    """
    if count <= 0 or not config:
        return []
    rng = random.Random(seed)
    g = cover_graph(s, config)
    cells = sorted(g)
    cap = len(cells) if max_size is None else min(max_size, len(cells))
    out = []
    for _ in range(count):
        start = rng.choice(cells)
        size = rng.randint(1, cap)
        chosen = {start}
        frontier = set(g[start])
        while len(chosen) < size and frontier:
            nxt = rng.choice(sorted(frontier))
            chosen.add(nxt)
            frontier.discard(nxt)
            frontier.update(d for d in g[nxt] if d not in chosen)
        out.append(Pattern(chosen))
    return out
