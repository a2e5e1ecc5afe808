"""Decision procedures for two-dimensional domino-complete substitutions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .core import (
    Cell,
    DimensionError,
    Domino,
    Pattern,
    Vec,
    classify_domino,
    max_norm,
    support,
    symbol_key,
    vadd,
    vneg,
    vscale,
    vsub,
)
from .substitution import Substitution, starting_patterns


class PreconditionError(ValueError):
    pass


class StructureError(ValueError):
    pass


def _require_2d(s: Substitution) -> None:
    if s.dim != 2:
        raise DimensionError("decision procedures need a two-dimensional substitution")


def all_dominoes(alphabet: Sequence[str]) -> List[Domino]:
    return [
        Domino(o, a, b)
        for o in ("horizontal", "vertical")
        for a in alphabet
        for b in alphabet
    ]


def _domino_step(d: Domino) -> Vec:
    return (1, 0) if d.orientation == "horizontal" else (0, 1)


def rule_dominoes(s: Substitution) -> Tuple[set, List[Pattern]]:
    """Dominoes covered by the rules of ``s`` and the non-domino starting patterns."""
    dominoes = set()
    others = []
    for p in starting_patterns(s):
        d = classify_domino(p)
        if d is None:
            others.append(p)
        else:
            dominoes.add(d)
    return dominoes, others


@dataclass(frozen=True)
class Completeness:
    complete: bool
    missing: Tuple[Domino, ...] = ()
    extra: Tuple[Pattern, ...] = ()

    def __bool__(self):
        return self.complete


def _domino_key(d: Domino):
    return (d.orientation, symbol_key(d.first), symbol_key(d.second))


def is_domino_complete(s: Substitution) -> Completeness:
    _require_2d(s)
    have, _ = rule_dominoes(s)
    missing = tuple(d for d in all_dominoes(s.alphabet) if d not in have)
    return Completeness(not missing, missing)


def square_types(sq: Pattern) -> Tuple[str, str, str, str]:
    """``(bottom-left, bottom-right, top-left, top-right)`` of a 2x2 pattern."""
    if len(sq) != 4 or sq.dim != 2:
        raise ValueError(f"not a 2x2 pattern: {sq}")
    x, y = sq.min_vector()
    types = tuple(sq.type_at(v) for v in ((x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)))
    if None in types:
        raise ValueError(f"not a 2x2 pattern: {sq}")
    return types


def square_dominoes(sq: Pattern) -> List[Domino]:
    bl, br, tl, tr = square_types(sq)
    return [
        Domino("horizontal", bl, br),
        Domino("horizontal", tl, tr),
        Domino("vertical", bl, tl),
        Domino("vertical", br, tr),
    ]


def is_restricted_domino_complete(s: Substitution, squares: Iterable[Pattern]) -> Completeness:
    """Are the starting patterns of ``s`` exactly the dominoes inside ``squares``?"""
    _require_2d(s)
    wanted = set()
    for sq in squares:
        wanted.update(square_dominoes(sq))
    have, others = rule_dominoes(s)
    missing = tuple(sorted(wanted - have, key=_domino_key))
    extra = tuple(d.pattern() for d in sorted(have - wanted, key=_domino_key)) + tuple(others)
    return Completeness(not missing and not extra, missing, extra)


def square_loop_vector(s: Substitution, types: Tuple[str, str, str, str]) -> Optional[Vec]:
    """Image vector of the loop bl -> br -> tr -> tl -> bl, or None if a side has no rule."""
    bl, br, tl, tr = types
    steps = [
        s.lookup(bl, br, (1, 0)),
        s.lookup(br, tr, (0, 1)),
        s.lookup(tr, tl, (-1, 0)),
        s.lookup(tl, bl, (0, -1)),
    ]
    if any(v is None for v in steps):
        return None
    total = (0, 0)
    for v in steps:
        total = vadd(total, v)
    return total


@dataclass(frozen=True)
class SquareVerdict:
    consistent: bool
    witness: Optional[Pattern] = None
    loop_vector: Optional[Vec] = None
    checked: int = 0

    def __bool__(self):
        return self.consistent


def _scan_squares(s: Substitution, type_tuples) -> SquareVerdict:
    n = 0
    for types in type_tuples:
        w = square_loop_vector(s, types)
        if w is None:
            continue
        n += 1
        if w != (0, 0):
            bl, br, tl, tr = types
            sq = Pattern([Cell((0, 0), bl), Cell((1, 0), br), Cell((0, 1), tl), Cell((1, 1), tr)])
            return SquareVerdict(False, sq, w, n)
    return SquareVerdict(True, None, None, n)


def check_consistency_domino_complete(s: Substitution, strict: bool = True) -> SquareVerdict:
    """Global consistency of a domino-complete substitution via its 2x2 squares.

    With ``strict=False`` a substitution that is not domino-complete is still
    scanned: every square whose four sides have rules is evaluated, so a
    failing square is a genuine inconsistency witness, but a passing scan
    only certifies consistency on 2x2 patterns.
    """
    _require_2d(s)
    if strict:
        comp = is_domino_complete(s)
        if not comp:
            raise PreconditionError(
                "substitution is not domino-complete; missing " + ", ".join(map(str, comp.missing))
            )
    return _scan_squares(s, itertools.product(s.alphabet, repeat=4))


def check_consistency_restricted(s: Substitution, squares: Sequence[Pattern]) -> SquareVerdict:
    """Consistency on the patterns of the subshift whose 2x2 language is ``squares``.

    Only meaningful when ``squares`` really is the full 2x2 language of some
    subshift; for an arbitrary list the scan just evaluates those squares.
    """
    _require_2d(s)
    comp = is_restricted_domino_complete(s, squares)
    if not comp:
        raise PreconditionError(
            "substitution is not domino-complete within the given squares "
            f"(missing {len(comp.missing)}, extra {len(comp.extra)})"
        )
    return _scan_squares(s, (square_types(sq) for sq in squares))


@dataclass(frozen=True)
class StructureData:
    t0: str
    alpha: Vec
    beta: Vec
    v: Dict[str, Vec]

    def predict(self, t: str, t_prime: str, offset: Vec) -> Vec:
        """Image vector of any path from ``[(0,0), t]`` to ``[offset, t_prime]``."""
        x, y = offset
        return vadd(vsub(vadd(vscale(x, self.alpha), vscale(y, self.beta)), self.v[t]), self.v[t_prime])


def extract_structure(s: Substitution) -> StructureData:
    _require_2d(s)
    comp = is_domino_complete(s)
    if not comp:
        raise PreconditionError("substitution is not domino-complete")
    if not check_consistency_domino_complete(s):
        raise PreconditionError("substitution is not consistent")
    t0 = s.alphabet[0]
    alpha = s.lookup(t0, t0, (1, 0))
    beta = s.lookup(t0, t0, (0, 1))
    v = {t: vsub(s.lookup(t0, t, (1, 0)), alpha) for t in s.alphabet}
    data = StructureData(t0, alpha, beta, v)
    for r in s.rules:
        if data.predict(r.t, r.t_prime, r.u) != r.v:
            raise StructureError(f"rule {r} disagrees with the extracted structure")
    return data


# -- integer solutions of x*alpha + y*beta = w ------------------------------


def ext_gcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, s, t)`` with ``a*s + b*t == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s_ = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s_ = s_, old_s - q * s_
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _order_key(p: Vec):
    return (max_norm(p), p)


@dataclass(frozen=True)
class DiophantineSolutionSet:
    """Integer solutions ``(x, y)``: empty, a single point, a line or the plane."""

    kind: str
    point: Optional[Vec] = None
    direction: Optional[Vec] = None

    def __contains__(self, xy) -> bool:
        x, y = xy
        if self.kind == "empty":
            return False
        if self.kind == "plane":
            return True
        px, py = self.point
        if self.kind == "unique":
            return (x, y) == (px, py)
        dx, dy = self.direction
        # (x - px, y - py) must be an integer multiple of the primitive direction
        ex, ey = x - px, y - py
        if ex * dy - ey * dx != 0:
            return False
        k = ex // dx if dx else ey // dy
        return (px + k * dx, py + k * dy) == (x, y)

    def smallest_nonzero(self) -> Optional[Vec]:
        """Least nonzero member by max-norm, then lexicographically."""
        if self.kind == "empty":
            return None
        if self.kind == "plane":
            return (-1, -1)
        if self.kind == "unique":
            return None if self.point == (0, 0) else self.point
        if self.point != (0, 0):
            return self.point  # already the least member of the line
        d = self.direction
        return min(d, vneg(d))


def _line_candidates(point: Vec, direction: Vec) -> set:
    # max(|px + k dx|, |py + k dy|) is convex in k; its breakpoints are where a
    # coordinate vanishes or the two coordinates agree up to sign
    (px, py), (dx, dy) = point, direction
    ks = {0}
    for num, den in ((-px, dx), (-py, dy), (py - px, dx - dy), (-py - px, dx + dy)):
        if den:
            q = Fraction(num, den)
            ks.update({floor(q) - 1, floor(q), ceil(q), ceil(q) + 1})
    return ks


def _canonical_line(point: Vec, direction: Vec) -> Tuple[Vec, Vec]:
    dx, dy = direction
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    px, py = point
    best = min(
        ((px + k * dx, py + k * dy) for k in _line_candidates(point, (dx, dy))),
        key=_order_key,
    )
    return best, (dx, dy)


def solve_lattice_equation(alpha: Vec, beta: Vec, w: Vec) -> DiophantineSolutionSet:
    if not (len(alpha) == len(beta) == len(w) == 2):
        raise DimensionError("solve_lattice_equation works in dimension 2")
    (a1, a2), (b1, b2), (w1, w2) = alpha, beta, w
    det = a1 * b2 - a2 * b1
    if det != 0:
        xn = w1 * b2 - w2 * b1
        yn = a1 * w2 - a2 * w1
        if xn % det or yn % det:
            return DiophantineSolutionSet("empty")
        return DiophantineSolutionSet("unique", (xn // det, yn // det))
    if alpha == (0, 0) and beta == (0, 0):
        return DiophantineSolutionSet("plane" if w == (0, 0) else "empty")
    # alpha and beta are parallel: write everything as multiples of a primitive direction
    ref = alpha if alpha != (0, 0) else beta
    g = gcd(ref[0], ref[1])
    d = (ref[0] // g, ref[1] // g)
    if w[0] * d[1] - w[1] * d[0] != 0:
        return DiophantineSolutionSet("empty")

    def coeff(u: Vec) -> int:
        return u[0] // d[0] if d[0] else u[1] // d[1]

    a, b, c = coeff(alpha), coeff(beta), coeff(w)
    g, s, t = ext_gcd(a, b)
    if c % g:
        return DiophantineSolutionSet("empty")
    point = (s * (c // g), t * (c // g))
    point, direction = _canonical_line(point, (b // g, -a // g))
    return DiophantineSolutionSet("line", point, direction)


@dataclass(frozen=True)
class OverlapDecision:
    overlapping: bool
    t: Optional[str] = None
    t_prime: Optional[str] = None
    a: Optional[Vec] = None
    b: Optional[Vec] = None
    xy: Optional[Vec] = None

    def __bool__(self):
        return not self.overlapping


def _positive(p: Vec) -> bool:
    return p > (0, 0)


def decide_overlap(s: Substitution, structure: Optional[StructureData] = None) -> OverlapDecision:
    """Decide whether a consistent domino-complete substitution is overlapping.

    Any offset (x, y) between cells of any two types is realised inside some
    covered pattern (domino-completeness makes every polyomino covered), so
    one integer solution of the cell-overlap equation is enough.

    The witness is reported with (x, y) lexicographically positive (the
    equation for (t', t, b, a, -x, -y) is the same overlap) and minimised by
    max-norm, then lexicographically.
    """
    st = structure if structure is not None else extract_structure(s)
    best = None
    for t, tp in itertools.product(s.alphabet, repeat=2):
        shift = vsub(st.v[t], st.v[tp])
        for a in sorted(support(s.base[t])):
            for b in sorted(support(s.base[tp])):
                sol = solve_lattice_equation(st.alpha, st.beta, vadd(vsub(a, b), shift))
                xy = sol.smallest_nonzero()
                if xy is None:
                    continue
                cand = (t, tp, a, b, xy)
                if not _positive(xy):
                    cand = (tp, t, b, a, vneg(xy))
                key = (max_norm(cand[4]), cand[4], symbol_key(cand[0]), symbol_key(cand[1]), cand[2], cand[3])
                if best is None or key < best[0]:
                    best = (key, cand)
    if best is None:
        return OverlapDecision(False)
    t, tp, a, b, xy = best[1]
    return OverlapDecision(True, t, tp, a, b, xy)


def overlap_witness_pattern(s: Substitution, decision: OverlapDecision) -> Pattern:
    """Two cells ``[(0,0), t]`` and ``[(x,y), t']`` joined by an L of ``t0`` cells."""
    if not decision.overlapping:
        raise ValueError("no overlap witness")
    x, y = decision.xy
    t0 = s.alphabet[0]
    cells = {(0, 0): decision.t}
    step = 1 if x > 0 else -1
    for i in range(step, x, step) if x else ():
        cells[(i, 0)] = t0
    if y:
        if x:
            cells[(x, 0)] = t0
        sy = 1 if y > 0 else -1
        for j in range(sy, y, sy):
            cells[(x, j)] = t0
    cells[(x, y)] = decision.t_prime
    return Pattern.from_mapping(cells)
