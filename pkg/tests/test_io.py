import random
import xml.etree.ElementTree as ET

import pytest

from _gen import random_domino_complete, random_small_substitution, random_tiles
from combsub.core import Cell, Pattern
from combsub.corpus import example, fixture_text
from combsub.io import (
    ParseError,
    parse_document,
    parse_pattern,
    parse_squares,
    parse_substitution,
    parse_tiles,
    serialize_pattern,
    serialize_substitution,
    serialize_tiles,
)
from combsub.render import RenderStyle, render_svg

SVG = "{http://www.w3.org/2000/svg}"


def error_of(text):
    with pytest.raises(ParseError) as info:
        parse_document(text)
    return info.value


def test_duplicate_base_line():
    e = error_of("alphabet 1\nbase 1 : (0,0)->1\nbase 1 : (0,0)->1\n")
    assert (e.line, e.column) == (3, 1)


def test_unknown_symbol_position():
    e = error_of("alphabet 1 2\nbase 1 : (0,0)->1\nbase 2 : (0,0)->7\n")
    assert e.line == 3 and e.column == len("base 2 : (0,0)->") + 1


def test_reverse_rule_rejected():
    text = "alphabet 1 2\nbase 1 : (0,0)->1\nbase 2 : (0,0)->2\nrule 1 2 (0,1) -> (1,2)\nrule 2 1 (0,-1) -> (0,0)\n"
    e = error_of(text)
    assert e.line == 5 and "line 4" in e.message


def test_same_lhs_rejected():
    text = "alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (1,0) -> (1,0)\nrule 1 1 (1,0) -> (2,0)\n"
    assert error_of(text).line == 4


def test_missing_base_rejected():
    e = error_of("alphabet 1 2\nbase 1 : (0,0)->1\n")
    assert e.line == 1 and e.column == len("alphabet 1 ") + 1


@pytest.mark.parametrize(
    "text,line",
    [
        ("alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (0,0) -> (1,0)\n", 3),
        ("alphabet 1\nbase 1 : (0,0)->1\nrule 1 1 (1,0)\n", 3),
        ("alphabet 1\nbase 1 :\n", 2),
        ("alphabet 1\nbase 1 : (0,0)->1 (0,0)->1\n", 2),
        ("alphabet 1\nbase 1 : (0,0)->1 (1,0,0)->1\n", 2),
        ("frobnicate 1\n", 1),
        ("cell (0,0) 1\n", 1),
        ("pattern a\ncell (0,0) 1\ncell (0,0) 2\n", 3),
        ("tile a n=0 e=0 s=0\n", 1),
        ("tile a n=0 e=0 s=0 w=0\ntile a n=0 e=0 s=0 w=0\n", 2),
        ("alphabet 1\nbase 1 : (0,0)->1\npattern p\ncell (0,0) 2\n", 4),
        ("base 1 : (0,0)->1\n", 1),
        ("alphabet 1 1\n", 1),
    ],
)
def test_syntax_errors(text, line):
    assert error_of(text).line == line


def test_comments_and_blank_lines():
    doc = parse_document("# header\n\nalphabet 1   # trailing\nbase 1 : (0,0)->1\n\npattern p\ncell (2,-3) 1\n")
    assert doc.pattern("p") == Pattern([Cell((2, -3), "1")])


def test_roundtrip_fixtures():
    for name in ["intro", "jp", "inconsistent", "overlapping", "tshape", "mini"]:
        s = example(name).substitution
        assert parse_substitution(serialize_substitution(s)) == s


def test_roundtrip_random():
    rng = random.Random(6)
    for _ in range(60):
        s = random_domino_complete(rng, rng.randint(1, 3)) if rng.random() < 0.5 else random_small_substitution(rng)
        text = serialize_substitution(s)
        assert parse_substitution(text) == s
        assert serialize_substitution(parse_substitution(text)) == text


def test_three_dimensional_substitution():
    s = parse_substitution("alphabet a\nbase a : (0,0,0)->a (0,0,1)->a\nrule a a (1,0,0) -> (2,0,0)\n")
    assert s.dim == 3 and parse_substitution(serialize_substitution(s)) == s


def test_pattern_roundtrip():
    P = example("jp").patterns["image"]
    assert parse_pattern(serialize_pattern(P, "x")) == P
    assert parse_pattern(serialize_pattern(P)) == P


def test_tiles_roundtrip():
    rng = random.Random(2)
    for _ in range(10):
        T = random_tiles(rng)
        assert parse_tiles(serialize_tiles(T)) == T


def test_squares_file():
    assert len(parse_squares(fixture_text("surf"))) == 28
    with pytest.raises(ValueError):
        parse_squares("pattern a\ncell (0,0) 1\ncell (2,0) 1\ncell (0,1) 1\ncell (2,1) 1\n")


# -- render ------------------------------------------------------------------


def rects(svg):
    root = ET.fromstring(svg.split("\n", 1)[1])
    return root.findall(f"{SVG}rect"), root.findall(f"{SVG}text")


def test_render_singleton():
    r, t = rects(render_svg(Pattern([Cell((0, 0), "1")])))
    assert len(r) == 1 and len(t) == 1
    assert (r[0].get("x"), r[0].get("y"), r[0].get("width")) == ("0", "-20", "20")


def test_render_jp_image():
    P = example("jp").patterns["image"]
    r, t = rects(render_svg(P))
    assert len(r) == 9 and len(t) == 9
    # y axis flipped: higher cells have smaller SVG y
    ys = {(int(e.get("x")) // 20, -int(e.get("y")) // 20 - 1) for e in r}
    assert ys == {c.vector for c in P}


def test_render_empty_and_options():
    r, t = rects(render_svg(Pattern()))
    assert r == [] and t == []
    svg = render_svg(Pattern([Cell((1, 1), "a")]), RenderStyle(cell_size=7, label=False, fill_map={"a": "red"}))
    r, t = rects(svg)
    assert t == [] and r[0].get("fill") == "red" and r[0].get("width") == "7"
    with pytest.raises(ValueError):
        RenderStyle(cell_size=0)


def test_render_deterministic():
    P = example("intro").patterns["image"]
    assert render_svg(P) == render_svg(Pattern(reversed(list(P))))
