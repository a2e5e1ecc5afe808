import itertools
import random

import pytest
from hypothesis import given, strategies as st

from _gen import random_domino_complete, structured_domino_complete, typed
from combsub.core import CollisionError, Domino, Pattern, square, vadd, vscale
from combsub.corpus import all_squares, example, surf_squares
from combsub.decide import (
    PreconditionError,
    check_consistency_domino_complete,
    check_consistency_restricted,
    decide_overlap,
    ext_gcd,
    extract_structure,
    is_domino_complete,
    is_restricted_domino_complete,
    overlap_witness_pattern,
    solve_lattice_equation,
)
from combsub.substitution import Rule, Substitution, apply, check_nonoverlapping_on


def identity(alphabet=("1", "2")):
    base = {t: Pattern.from_mapping({(0, 0): t}) for t in alphabet}
    rules = []
    for a, b in itertools.product(alphabet, repeat=2):
        rules += [Rule(a, b, (1, 0), (1, 0)), Rule(a, b, (0, 1), (0, 1))]
    return Substitution(alphabet, base, tuple(rules))


def test_domino_complete_examples(tshape, jp):
    assert is_domino_complete(tshape.substitution)
    res = is_domino_complete(jp.substitution)
    assert not res
    # the five JP rules that are dominoes
    have = {
        Domino("horizontal", "1", "3"),
        Domino("horizontal", "3", "3"),
        Domino("horizontal", "2", "1"),
        Domino("vertical", "3", "2"),
        Domino("vertical", "3", "3"),
    }
    expected_missing = {
        Domino(o, a, b) for o in ("horizontal", "vertical") for a in "123" for b in "123"
    } - have
    assert set(res.missing) == expected_missing and len(res.missing) == 13
    for n in range(0, 6):
        assert is_domino_complete(example("overlapfar", n=n).substitution)


def test_restricted_completeness(mini):
    assert is_restricted_domino_complete(mini.substitution, surf_squares())
    res = is_restricted_domino_complete(mini.substitution, all_squares())
    assert not res
    assert {str(d) for d in res.missing} == {"2|3", "3/1"}
    empty = Substitution(("1",), {"1": Pattern.from_mapping({(0, 0): "1"})})
    assert is_restricted_domino_complete(empty, [])


def test_restricted_rejects_extra_rules(tshape):
    res = is_restricted_domino_complete(tshape.substitution, [square("1", "1", "1", "1")])
    assert res
    jp = example("jp").substitution
    assert not is_restricted_domino_complete(jp, [square("3", "3", "3", "3")])


def test_malformed_square_rejected(tshape):
    with pytest.raises(ValueError):
        is_restricted_domino_complete(tshape.substitution, [Pattern.from_mapping({(0, 0): "1"})])


def test_consistency_examples(tshape, inconsistent):
    v = check_consistency_domino_complete(tshape.substitution)
    assert v and v.checked == 1
    with pytest.raises(PreconditionError):
        check_consistency_domino_complete(inconsistent.substitution)
    w = check_consistency_domino_complete(inconsistent.substitution, strict=False)
    assert not w
    assert w.witness == square("2", "2", "1", "1") and w.loop_vector == (0, -1)
    for n in range(0, 6):
        assert check_consistency_domino_complete(example("overlapfar", n=n).substitution)


def test_restricted_consistency_examples(mini, inconsistent, tshape):
    assert check_consistency_restricted(mini.substitution, surf_squares())
    assert check_consistency_restricted(tshape.substitution, [square("1", "1", "1", "1")])
    empty = Substitution(("1",), {"1": Pattern.from_mapping({(0, 0): "1"})})
    assert check_consistency_restricted(empty, [])
    # the inconsistent example has exactly the dominoes of its failing square
    bad = check_consistency_restricted(inconsistent.substitution, [square("2", "2", "1", "1")])
    assert not bad and bad.loop_vector == (0, -1)


def test_structure_examples(tshape):
    st_ = extract_structure(tshape.substitution)
    assert (st_.alpha, st_.beta, st_.v) == ((3, 0), (0, 2), {"1": (0, 0)})
    for n in range(0, 6):
        st_ = extract_structure(example("overlapfar", n=n).substitution)
        assert st_.v == {"1": (0, 0), "2": (n, 0)}
    st_ = extract_structure(identity())
    assert (st_.alpha, st_.beta, set(st_.v.values())) == ((1, 0), (0, 1), {(0, 0)})


def test_structure_formula_holds_for_every_rule():
    rng = random.Random(2)
    for _ in range(40):
        s = structured_domino_complete(rng, rng.randint(1, 3))
        st_ = extract_structure(s)
        for r in s.rules:
            assert r.v == st_.predict(r.t, r.t_prime, r.u)


def test_structure_rejects_inconsistent():
    rng = random.Random(4)
    s = random_domino_complete(rng, 2)
    assert not check_consistency_domino_complete(s)
    with pytest.raises(PreconditionError):
        extract_structure(s)


# -- solver -----------------------------------------------------------------


def test_solver_examples():
    assert solve_lattice_equation((3, 0), (0, 2), (1, 0)).kind == "empty"
    u = solve_lattice_equation((1, 0), (0, 1), (4, -7))
    assert (u.kind, u.point) == ("unique", (4, -7))
    line = solve_lattice_equation((2, 0), (4, 0), (6, 0))
    assert (line.kind, line.point, line.direction) == ("line", (1, 1), (2, -1))
    assert solve_lattice_equation((0, 0), (0, 0), (0, 0)).kind == "plane"
    assert solve_lattice_equation((0, 0), (0, 0), (1, 0)).kind == "empty"
    assert solve_lattice_equation((1, 1), (2, 2), (1, 0)).kind == "empty"


def test_ext_gcd():
    for a, b in itertools.product(range(-9, 10), repeat=2):
        g, s, t = ext_gcd(a, b)
        assert g >= 0 and a * s + b * t == g
        if a or b:
            assert a % g == 0 and b % g == 0


ent = st.integers(-5, 5)
vec = st.tuples(ent, ent)


@given(vec, vec, vec)
def test_solver_sound_and_complete_in_box(alpha, beta, w):
    sol = solve_lattice_equation(alpha, beta, w)
    for x in range(-10, 11):
        for y in range(-10, 11):
            real = vadd(vscale(x, alpha), vscale(y, beta)) == w
            assert ((x, y) in sol) == real
    nz = sol.smallest_nonzero()
    if nz is not None:
        assert nz != (0, 0)
        assert vadd(vscale(nz[0], alpha), vscale(nz[1], beta)) == w


# -- overlap decision -------------------------------------------------------


def test_overlap_examples(tshape):
    assert not decide_overlap(tshape.substitution).overlapping
    d = decide_overlap(example("overlapfar", n=2).substitution)
    assert d.overlapping and (d.t, d.t_prime, d.xy) == ("2", "1", (2, 0))
    assert not decide_overlap(identity()).overlapping


def test_overlap_witness_equation():
    for n in range(1, 6):
        s = example("overlapfar", n=n).substitution
        st_ = extract_structure(s)
        d = decide_overlap(s)
        assert d.xy != (0, 0)
        lhs = d.a
        rhs = st_.predict(d.t, d.t_prime, d.xy)
        assert lhs == vadd(d.b, rhs)


def test_overlap_decision_agrees_with_bounded_patterns():
    rng = random.Random(9)
    seen = {True: 0, False: 0}
    for _ in range(50):
        s = structured_domino_complete(rng, rng.randint(1, 3), base_bound=3)
        d = decide_overlap(s)
        assert d.xy != (0, 0) if d.overlapping else True
        seen[d.overlapping] += 1
        if d.overlapping:
            W = overlap_witness_pattern(s, d)
            assert not check_nonoverlapping_on(s, W)
            with pytest.raises(CollisionError):
                apply(s, W)
        else:
            for _ in range(4):
                w, h = rng.randint(1, 6), rng.randint(1, 6)
                R = typed(rng, [(x, y) for x in range(w) for y in range(h)], s.alphabet)
                assert check_nonoverlapping_on(s, R)
    assert seen[True] and seen[False]
