import pytest

from combsub.core import Cell, Pattern, support
from combsub.corpus import (
    all_squares,
    example,
    fixture_text,
    generate_surface_rectangles,
    sample_covered_subpatterns,
    surf_squares,
)
from combsub.decide import (
    check_consistency_domino_complete,
    check_consistency_restricted,
    decide_overlap,
    extract_structure,
    is_domino_complete,
    is_restricted_domino_complete,
)
from combsub.io import parse_substitution
from combsub.substitution import (
    apply,
    check_consistent_on,
    check_nonoverlapping_on,
    is_covered,
    validate,
)


def test_example_sizes():
    jp = example("jp")
    assert len(jp.substitution.base) == 3 and len(jp.substitution.rules) == 7
    assert len(example("tshape").substitution.base["1"]) == 4
    assert len(example("overlapfar(3)").patterns["P3"]) == 6
    assert example("overlapfar3").patterns == example("overlapfar", n=3).patterns


def test_example_errors():
    with pytest.raises(KeyError):
        example("nope")
    with pytest.raises(ValueError):
        example("overlapfar")
    with pytest.raises(ValueError):
        example("jp", n=2)


def test_fixture_is_source_of_jp():
    assert parse_substitution(fixture_text("jp")) == example("jp").substitution


@pytest.mark.parametrize("name", ["intro", "jp", "inconsistent", "overlapping", "tshape", "mini", "overlapfar(4)"])
def test_examples_validate(name):
    assert validate(example(name).substitution) == []


@pytest.mark.parametrize("name", ["intro", "jp", "inconsistent", "overlapping", "tshape", "mini", "overlapfar(0)", "overlapfar(2)"])
def test_tags_hold(name):
    e = example(name)
    s = e.substitution
    tags = set(e.notes)
    for P in e.patterns.values():
        if not is_covered(s, P):
            continue
        verdict = check_consistent_on(s, P)
        if "consistent" in tags:
            assert verdict
        if "inconsistent" in tags:
            assert not verdict
    if "inconsistent" in tags:
        assert any(not check_consistent_on(s, P) for P in e.patterns.values())
    if "domino-complete" in tags:
        assert is_domino_complete(s)
        assert check_consistency_domino_complete(s)
    if "restricted-complete" in tags:
        assert is_restricted_domino_complete(s, surf_squares())
        assert check_consistency_restricted(s, surf_squares())
    if "overlapping" in tags:
        if "domino-complete" in tags:
            assert decide_overlap(s).overlapping
        if e.patterns:
            assert any(not check_nonoverlapping_on(s, P) for P in e.patterns.values())


def test_overlapfar_zero_is_not_overlapping():
    assert not decide_overlap(example("overlapfar", n=0).substitution).overlapping


def test_surf_squares():
    sq = surf_squares()
    assert len(sq) == 28 and len(set(sq)) == 28
    full = set(all_squares())
    assert len(full) == 81 and set(sq) <= full
    assert Pattern.from_mapping({(0, 0): "1", (1, 0): "1", (0, 1): "1", (1, 1): "1"}) in sq


def test_generate_rectangles():
    two = generate_surface_rectangles(2, 2, 100)
    assert set(two) == set(surf_squares()) and len(two) == 28
    assert len(generate_surface_rectangles(2, 2, 100, squares=all_squares())) == 81
    allowed = set(surf_squares())
    three = generate_surface_rectangles(3, 3, 10, seed=4)
    assert len(three) == 10 and len(set(three)) == 10
    for r in three:
        for x in range(2):
            for y in range(2):
                win = Pattern(Cell((a - x, b - y), r.type_at((a, b))) for a in (x, x + 1) for b in (y, y + 1))
                assert win in allowed
    assert generate_surface_rectangles(3, 3, 5, seed=1) == generate_surface_rectangles(3, 3, 5, seed=1)
    with pytest.raises(ValueError):
        generate_surface_rectangles(1, 3, 5)


def test_sample_covered_subpatterns(mini):
    s = mini.substitution
    config = generate_surface_rectangles(6, 6, 1, seed=0)[0]
    assert is_covered(s, config)
    pieces = sample_covered_subpatterns(config, s, 20, seed=3)
    assert len(pieces) == 20
    for p in pieces:
        assert is_covered(s, p) and support(p) <= support(config)
    assert sample_covered_subpatterns(config, s, 20, seed=3) == pieces
    single = Pattern([Cell((0, 0), "1")])
    assert sample_covered_subpatterns(single, s, 1) == [single]
    assert sample_covered_subpatterns(config, s, 0) == []


def test_mini_bases_have_width_one(mini):
    for P in mini.substitution.base.values():
        assert len({x for x, _ in support(P)}) == 1


def test_mini_on_samples(mini):
    s = mini.substitution
    for seed in range(10):
        config = generate_surface_rectangles(6, 6, 1, seed=seed)[0]
        for P in sample_covered_subpatterns(config, s, 5, seed=seed):
            assert check_consistent_on(s, P)
            apply(s, P)


def test_structure_of_overlapfar():
    assert extract_structure(example("overlapfar", n=4).substitution).v["2"] == (4, 0)
