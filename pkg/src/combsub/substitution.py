"""Combinatorial substitutions: rule lookup, paths, covers and images."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .core import (
    UNIT_VECTORS_2D,
    Cell,
    CollisionError,
    DimensionError,
    Pattern,
    Vec,
    check_symbol,
    fmt_vec,
    merge_checked,
    sorted_symbols,
    symbol_key,
    translate,
    vadd,
    vneg,
    vsub,
    zero,
)

Path = Tuple[Cell, ...]


class NotCoveredError(ValueError):
    pass


class InconsistentInputError(ValueError):
    pass


class PathError(ValueError):
    pass


class IterationError(ValueError):
    def __init__(self, index: int, cause: Exception):
        self.index = index
        self.cause = cause
        super().__init__(f"iterate {index}: {cause}")


@dataclass(frozen=True)
class Rule:
    """Concatenation rule ``(t, t_prime, u) -> v``."""

    t: str
    t_prime: str
    u: Vec
    v: Vec

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.u) != len(self.v):
            raise DimensionError(f"rule {self}: u and v differ in dimension")

    def sort_key(self):
        return (symbol_key(self.t), symbol_key(self.t_prime), self.u, self.v)

    def __str__(self) -> str:
        return f"({self.t},{self.t_prime},{fmt_vec(self.u)})->{fmt_vec(self.v)}"


@dataclass(frozen=True, eq=True)
class Substitution:
    alphabet: Tuple[str, ...]
    base: Mapping[str, Pattern]
    rules: Tuple[Rule, ...] = ()
    dim: int = 2

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(sorted_symbols(set(self.alphabet))))
        object.__setattr__(self, "base", dict(sorted(self.base.items(), key=lambda kv: symbol_key(kv[0]))))
        object.__setattr__(self, "rules", tuple(sorted(self.rules, key=Rule.sort_key)))

    __hash__ = None

    @cached_property
    def _table(self) -> Dict[Tuple[str, str, Vec], Vec]:
        # both orientations of every rule; on a determinism conflict the first
        # rule wins and validate() reports the clash
        table = {}
        for r in self.rules:
            table.setdefault((r.t, r.t_prime, r.u), r.v)
            table.setdefault((r.t_prime, r.t, vneg(r.u)), vneg(r.v))
        return table

    @cached_property
    def _neighbours(self) -> Dict[str, List[Tuple[Vec, str, Vec]]]:
        out: Dict[str, List[Tuple[Vec, str, Vec]]] = {}
        for (t, tp, u), v in self._table.items():
            out.setdefault(t, []).append((u, tp, v))
        for lst in out.values():
            lst.sort(key=lambda e: (e[0], symbol_key(e[1])))
        return out

    def lookup(self, t: str, t_prime: str, u: Vec) -> Optional[Vec]:
        return self._table.get((t, t_prime, tuple(u)))


def validate(s: Substitution) -> List[str]:
    """Return the list of invariant violations (empty when ``s`` is well formed)."""
    problems = []
    alpha = set(s.alphabet)
    for sym in s.alphabet:
        try:
            check_symbol(sym)
        except ValueError as exc:
            problems.append(str(exc))
        if sym not in s.base:
            problems.append(f"missing base image for symbol {sym}")
    for sym, pat in s.base.items():
        if sym not in alpha:
            problems.append(f"base image given for unknown symbol {sym}")
        if not pat:
            problems.append(f"base image of {sym} is empty")
        elif pat.dim != s.dim:
            problems.append(f"base image of {sym} is not {s.dim}-dimensional")
        for c in pat:
            if c.type not in alpha:
                problems.append(f"base image of {sym} uses unknown symbol {c.type}")
    seen: Dict[Tuple[str, str, Vec], Rule] = {}
    for r in s.rules:
        for sym in (r.t, r.t_prime):
            if sym not in alpha:
                problems.append(f"rule {r} uses unknown symbol {sym}")
        if len(r.u) != s.dim:
            problems.append(f"rule {r} is not {s.dim}-dimensional")
        if not any(r.u):
            problems.append(f"rule {r} has zero offset")
        key = (r.t, r.t_prime, r.u)
        rev = (r.t_prime, r.t, vneg(r.u))
        if key in seen:
            problems.append(f"rules {seen[key]} and {r} share a left-hand side")
        elif rev in seen:
            problems.append(f"rules {seen[rev]} and {r} are reverse forms of one left-hand side")
        else:
            seen[key] = r
    return problems


def is_domino_to_domino(s: Substitution) -> bool:
    if s.dim != 2:
        raise DimensionError("domino substitutions are two-dimensional")
    units = set(UNIT_VECTORS_2D)
    if any(r.u not in units or r.v not in units for r in s.rules):
        return False
    return all(len(img) == 1 and img.min_vector() == (0, 0) for img in s.base.values())


def starting_patterns(s: Substitution) -> List[Pattern]:
    out = []
    seen = set()
    for r in s.rules:
        p = Pattern([Cell(zero(s.dim), r.t), Cell(r.u, r.t_prime)])
        key = p.canonical()
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def sigma_rule(s: Substitution, c: Cell, c_prime: Cell) -> Optional[Vec]:
    return s.lookup(c.type, c_prime.type, vsub(c_prime.vector, c.vector))


def is_valid_path(s: Substitution, gamma: Sequence[Cell], within: Optional[Pattern] = None) -> bool:
    if not gamma:
        return False
    at: Dict[Vec, str] = {}
    for c in gamma:
        if at.setdefault(c.vector, c.type) != c.type:
            return False
        if within is not None and c not in within:
            return False
    return all(sigma_rule(s, a, b) is not None for a, b in zip(gamma, gamma[1:]))


def image_vector(s: Substitution, gamma: Sequence[Cell]) -> Vec:
    if not gamma:
        raise PathError("empty path")
    total = zero(gamma[0].dim)
    for a, b in zip(gamma, gamma[1:]):
        step = sigma_rule(s, a, b)
        if step is None:
            raise PathError(f"no rule for the pair {a} -> {b}")
        total = vadd(total, step)
    return total


CoverGraph = Dict[Cell, Dict[Cell, Vec]]


def cover_graph(s: Substitution, P: Pattern) -> CoverGraph:
    """Adjacency of the cells of ``P``; ``g[c][d] == sigma_rule(s, c, d)``."""
    g: CoverGraph = {c: {} for c in P}
    nb = s._neighbours
    for c in P:
        for u, tp, v in nb.get(c.type, ()):
            w = vadd(c.vector, u)
            if P.type_at(w) == tp:
                g[c][Cell(w, tp)] = v
    return g


def _bfs_tree(g: CoverGraph, root: Cell):
    """BFS with lexicographic tie-breaking; returns (order, parent)."""
    parent: Dict[Cell, Optional[Cell]] = {root: None}
    order = [root]
    queue = deque([root])
    while queue:
        c = queue.popleft()
        for d in sorted(g[c]):
            if d not in parent:
                parent[d] = c
                order.append(d)
                queue.append(d)
    return order, parent


def is_covered(s: Substitution, P: Pattern) -> bool:
    if not P:
        return True
    g = cover_graph(s, P)
    order, _ = _bfs_tree(g, min(g))
    return len(order) == len(P)


@dataclass(frozen=True)
class Consistent:
    root: Optional[Cell]
    potential: Dict[Cell, Vec] = field(default_factory=dict)

    consistent = True

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Inconsistent:
    witness: Path
    image_vector: Vec

    consistent = False

    def __bool__(self):
        return False


ConsistencyVerdict = Union[Consistent, Inconsistent]


def _tree_path(parent, c: Cell) -> List[Cell]:
    out = [c]
    while parent[out[-1]] is not None:
        out.append(parent[out[-1]])
    return out[::-1]


def _potentials(s: Substitution, P: Pattern, root: Optional[Cell]):
    g = cover_graph(s, P)
    if root is None:
        root = min(g)
    elif root not in g:
        raise ValueError(f"{root} is not a cell of the pattern")
    order, parent = _bfs_tree(g, root)
    if len(order) != len(P):
        missing = min(c for c in g if c not in parent)
        raise NotCoveredError(f"pattern is not covered: no path from {root} to {missing}")
    pot = {root: zero(P.dim)}
    for c in order[1:]:
        pot[c] = vadd(pot[parent[c]], g[parent[c]][c])
    return g, parent, pot


def check_consistent_on(s: Substitution, P: Pattern, root: Optional[Cell] = None) -> ConsistencyVerdict:
    """Decide consistency of ``s`` on the covered pattern ``P``.

    Potentials are assigned along a BFS spanning tree of the cover graph;
    ``s`` is consistent on ``P`` iff every non-tree edge agrees with them,
    since closed-walk sums vanish iff all fundamental-cycle sums vanish.
    """
    if not P:
        return Consistent(None, {})
    g, parent, pot = _potentials(s, P, root)
    for c in sorted(g):
        for d in sorted(g[c]):
            if d <= c or parent.get(d) == c or parent.get(c) == d:
                continue
            if vsub(pot[d], pot[c]) != g[c][d]:
                loop = _fundamental_loop(parent, c, d)
                return Inconsistent(loop, image_vector(s, loop))
    return Consistent(root if root is not None else min(g), pot)


def _fundamental_loop(parent, c: Cell, d: Cell) -> Path:
    up_c = _tree_path(parent, c)
    up_d = _tree_path(parent, d)
    k = 0
    while k < min(len(up_c), len(up_d)) and up_c[k] == up_d[k]:
        k += 1
    lca = up_c[k - 1]
    # lca -> ... -> c -> d -> ... -> lca
    return tuple([lca] + up_c[k:] + up_d[k:][::-1] + [lca])


@dataclass(frozen=True)
class NonOverlapping:
    overlapping = False

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Overlapping:
    witness: Tuple[Cell, Cell]
    path: Path
    collision_vector: Vec

    overlapping = True

    def __bool__(self):
        return False


OverlapVerdict = Union[NonOverlapping, Overlapping]


def check_nonoverlapping_on(s: Substitution, P: Pattern) -> OverlapVerdict:
    """Check that distinct cells of ``P`` have disjoint images.

    Requires consistency on ``P``: otherwise the set of placements is not
    determined by a single potential and ``InconsistentInputError`` is raised.
    ``collision_vector`` is expressed in the frame of the first witness cell's
    base image.
    """
    if not P:
        return NonOverlapping()
    verdict = check_consistent_on(s, P)
    if not verdict:
        raise InconsistentInputError(
            f"substitution is inconsistent on the pattern (loop image vector {fmt_vec(verdict.image_vector)})"
        )
    cells = sorted(verdict.potential)
    index = {c: i for i, c in enumerate(cells)}
    owners: Dict[Vec, List[Cell]] = {}
    for c in cells:
        for b in s.base[c.type]:
            owners.setdefault(vadd(verdict.potential[c], b.vector), []).append(c)
    best = None
    for pos, who in owners.items():
        if len(who) < 2:
            continue
        for a, b in itertools.combinations(who, 2):
            if a == b:
                continue
            key = (index[a], index[b], pos)
            if best is None or key < best:
                best = key
    if best is None:
        return NonOverlapping()
    i, j, pos = best
    c, cp = cells[i], cells[j]
    _, parent, _ = _potentials(s, P, c)
    path = tuple(_tree_path(parent, cp))
    return Overlapping((c, cp), path, vsub(pos, verdict.potential[c]))


def apply(s: Substitution, P: Pattern, c0: Optional[Cell] = None) -> Pattern:
    """Image of ``P`` computed from ``c0`` (default: least cell).

    Placements follow a BFS tree rooted at ``c0``; consistency is not
    checked. Overlapping images raise ``CollisionError`` with ``cells`` set.
    """
    if not P:
        return Pattern(dim=P.dim)
    _, _, pot = _potentials(s, P, c0)
    cells = sorted(pot)
    parts = [translate(s.base[c.type], pot[c]) for c in cells]
    try:
        return merge_checked(parts)
    except CollisionError as exc:
        raise exc.with_cells(cells[exc.first], cells[exc.second]) from None


OriginPolicy = Union[None, str, Cell, Callable[[Pattern], Cell]]


def _pick_origin(P: Pattern, policy: OriginPolicy) -> Optional[Cell]:
    if not P:
        return None
    if policy is None or policy == "least":
        return min(P)
    if isinstance(policy, Cell):
        return policy
    if callable(policy):
        return policy(P)
    raise ValueError(f"unknown origin policy {policy!r}")


def iterate(s: Substitution, P: Pattern, k: int, origin: OriginPolicy = None) -> List[Pattern]:
    """``[P, s(P), ..., s^k(P)]``.

    ``origin`` picks the start cell of each step: the least cell by default,
    a fixed cell for the first step, or a callable on the current pattern.
    """
    out = [P]
    for i in range(1, k + 1):
        cur = out[-1]
        c0 = _pick_origin(cur, origin if i == 1 or not isinstance(origin, Cell) else None)
        try:
            out.append(apply(s, cur, c0))
        except (NotCoveredError, CollisionError) as exc:
            raise IterationError(i, exc) from exc
    return out


def enumerate_simple_loops(
    s: Substitution, P: Pattern, max_len: int, guard: int = 16
) -> List[Tuple[Path, Vec]]:
    """Every simple loop of ``P`` with at most ``max_len`` entries (closing cell included).

    Brute force, meant as a test oracle. Each nontrivial loop is reported once,
    starting from its least cell; single-cell loops are included with value 0.
    """
    if len(P) > guard:
        raise ValueError(f"pattern has {len(P)} cells, guard is {guard}")
    g = cover_graph(s, P)
    out: List[Tuple[Path, Vec]] = [((c,), zero(P.dim)) for c in sorted(g)]

    def extend(path: List[Cell], on_path: set):
        last = path[-1]
        start = path[0]
        for d in sorted(g[last]):
            if d == start and len(path) >= 3 and path[1] < path[-1]:
                loop = tuple(path + [start])
                out.append((loop, image_vector(s, loop)))
            elif d not in on_path and d > start and len(path) + 2 <= max_len:
                path.append(d)
                on_path.add(d)
                extend(path, on_path)
                on_path.discard(d)
                path.pop()

    for c in sorted(g):
        extend([c], {c})
    return out
