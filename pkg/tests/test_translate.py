from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from gen import programs
from pasp.classical import enumerate_answer_sets
from pasp.errors import PaspError, ScaleError
from pasp.preduct import Valuation, enumerate_poss_answer_sets, is_poss_answer_set
from pasp.syntax import Program, parse_program, render_program
from pasp.translate import (certainty_scale, is_downward_closed, lift_back,
                            parse_mapping, project, render_mapping,
                            solve_via_translation, translate)

P1 = parse_program("1: cb. 1: ld :- cb, not can. 0.2: can.")
V1 = Valuation(cb=1, ld=F(4, 5), can=F(1, 5))
SELF = parse_program("1: a :- not a.")
SIX = tuple(F(k, 5) for k in range(6))
HALF = (F(0), F(1, 2), F(1))

# image of the concert program over fifths, written with the level value in the name
FIFTHS_IMAGE = {
    ("cB", "1", ()), ("cB", "0.8", ()), ("cB", "0.6", ()), ("cB", "0.4", ()),
    ("cB", "0.2", ()), ("can", "0.2", ()),
    ("LD", "1", (("cB", "1"), ("can", "0.2"))),
    ("LD", "0.8", (("cB", "0.8"), ("can", "0.4"))),
    ("LD", "0.6", (("cB", "0.6"), ("can", "0.6"))),
    ("LD", "0.4", (("cB", "0.4"), ("can", "0.8"))),
    ("LD", "0.2", (("cB", "0.2"), ("can", "1"))),
}
DISPLAY_NAMES = {"cb": "cB", "ld": "LD", "can": "can"}


def test_certainty_scale():
    assert certainty_scale(P1) == (F(0), F(1, 5), F(4, 5), F(1))
    assert certainty_scale(P1, {F(2, 5), F(3, 5)}) == SIX
    assert certainty_scale(parse_program("a. b :- not a.")) == (F(0), F(1))


def test_fifths_image_matches_listing():
    image, smap = translate(P1, SIX)
    assert len(image) == 11
    assert image.is_classical

    def level(name):
        s = smap.lookup(name)
        return DISPLAY_NAMES[s.base], str(float(s.level)).rstrip("0").rstrip(".")

    got = set()
    for r in image:
        head, lvl = level(r.head)
        if r.is_fact:
            got.add((head, lvl, ()))
        else:
            (pos,), (neg,) = r.pos, r.naf
            got.add((head, lvl, (level(pos), level(neg))))
    assert got == FIFTHS_IMAGE


def test_scaled_names():
    image, smap = translate(P1, SIX)
    assert smap.name("can", F(1, 5)) == "can__1"
    assert render_program(image, weights=False).splitlines()[5] == (
        "ld__5 :- cb__5, not can__1.")


def test_translate_small():
    image, _ = translate(parse_program("1: a."), (F(0), F(1)))
    assert render_program(image, weights=False) == "a__1."
    image, _ = translate(SELF, HALF)
    assert render_program(image, weights=False) == (
        "a__2 :- not a__1.\na__1 :- not a__2.")


def test_translate_rejects_bad_scales_and_names():
    with pytest.raises(ScaleError):
        translate(P1, HALF)
    with pytest.raises(ScaleError):
        translate(P1, (F(0), F(1, 5), F(1)))
    with pytest.raises(PaspError):
        translate(parse_program("x__1."), (F(0), F(1)))


def test_lift_back_and_project():
    _, smap = translate(P1, SIX)
    m = {smap.name("cb", c) for c in SIX[1:]} | {
        smap.name("ld", c) for c in SIX[1:5]} | {smap.name("can", F(1, 5))}
    assert len(m) == 10
    assert lift_back(m, smap) == V1
    assert project(V1, smap) == m
    assert lift_back(set(), smap) == Valuation()
    assert project(Valuation(), smap) == set()
    with pytest.raises(PaspError):
        lift_back({"nope"}, smap)
    with pytest.raises(ScaleError):
        project(Valuation(cb=F(1, 3)), smap)

    _, half = translate(SELF, (F(0), F(1, 5), F(1, 2), F(4, 5), F(1)))
    assert lift_back({half.name("a", F(1, 2)), half.name("a", F(1, 5))}, half) == (
        Valuation(a=F(1, 2)))
    _, half = translate(SELF, HALF)
    assert project(Valuation(a=F(1, 2)), half) == {half.name("a", F(1, 2))}


def test_fifths_image_answer_set():
    image, smap = translate(P1, SIX)
    (m,) = enumerate_answer_sets(image)
    assert m == project(V1, smap)
    assert solve_via_translation(P1, SIX) == [V1]


def test_solve_via_translation_small():
    assert solve_via_translation(SELF, HALF) == [Valuation(a=F(1, 2))]
    assert solve_via_translation(Program(), HALF) == [Valuation()]


def test_plain_schema_admits_a_non_closed_answer_set():
    # {a@1} is a classical answer set of the image but its lift {a^1} is
    # not an answer set; it is not downward closed, so the solver drops it
    image, smap = translate(SELF, HALF)
    found = enumerate_answer_sets(image)
    top = frozenset({smap.name("a", 1)})
    assert top in found
    assert not is_downward_closed(top, smap)
    assert not is_poss_answer_set(SELF, lift_back(top, smap))


@settings(max_examples=150, deadline=None)
@given(programs(n_atoms=4, max_rules=5))
def test_closed_answer_sets_lift_to_answer_sets(prog_scale):
    p, scale = prog_scale
    image, smap = translate(p, scale)
    direct = set(enumerate_poss_answer_sets(p, scale))
    closed = [m for m in enumerate_answer_sets(image) if is_downward_closed(m, smap)]
    for m in closed:
        assert project(lift_back(m, smap), smap) == m
        assert is_poss_answer_set(p, lift_back(m, smap))
    # every grid-valued answer set has its closed counterpart
    assert {lift_back(m, smap) for m in closed} == direct
    for v in direct:
        assert project(v, smap) in closed


@settings(max_examples=150, deadline=None)
@given(programs(n_atoms=4, max_rules=5))
def test_closure_rules_make_every_answer_set_closed(prog_scale):
    p, scale = prog_scale
    image, smap = translate(p, scale, closure=True)
    found = enumerate_answer_sets(image)
    assert all(is_downward_closed(m, smap) for m in found)
    assert sorted((lift_back(m, smap) for m in found), key=Valuation.key) == (
        solve_via_translation(p, scale))


@given(programs(n_atoms=4, max_rules=5))
def test_translation_size(prog_scale):
    p, scale = prog_scale
    image, _ = translate(p, scale)
    assert len(image) == sum(sum(1 for c in scale if 0 < c <= r.weight) for r in p)


def test_mapping_round_trip():
    _, smap = translate(P1, SIX)
    text = render_mapping(smap)
    assert text.splitlines()[0] == "can__1\tcan\t0.2"
    back = parse_mapping(text)
    assert back.forward == smap.forward
    assert parse_mapping("").forward == {}
    with pytest.raises(PaspError):
        parse_mapping("a__1 a 1")
