from itertools import combinations

import pytest
from hypothesis import given, settings

from gen import programs
from pasp.classical import (enumerate_answer_sets, gl_reduct, is_answer_set,
                            is_model, least_model, strip_weights)
from pasp.errors import GuardError, NotDefiniteError
from pasp.syntax import Program, Rule, parse_program

UNDEF_B = parse_program("a. b :- b. c :- a, not b.")


def subsets(atoms):
    atoms = sorted(atoms)
    for k in range(len(atoms) + 1):
        for c in combinations(atoms, k):
            yield frozenset(c)


def naive_least_model(p):
    """Iterate T_P(I) = I | {head | body in I} from the empty set."""
    i = set()
    while True:
        nxt = i | {r.head for r in p if set(r.pos) <= i}
        if nxt == i:
            return frozenset(i)
        i = nxt


def brute_force_answer_sets(p):
    """Stable-model check written out independently of the solver."""
    out = []
    for i in subsets(p.herbrand_base):
        reduct = [(r.head, r.pos) for r in p if not set(r.naf) & i]
        m = set()
        while True:
            nxt = m | {h for h, pos in reduct if set(pos) <= m}
            if nxt == m:
                break
            m = nxt
        if m == i:
            out.append(i)
    return sorted(out, key=lambda s: tuple(sorted(s)))


def test_strip_weights():
    p1 = parse_program("1: cb. 1: ld :- cb, not can. 0.2: can.")
    assert strip_weights(p1) == parse_program("cb. ld :- cb, not can. can.")
    assert strip_weights(UNDEF_B) == UNDEF_B
    assert strip_weights(parse_program("0.2: can.")) == parse_program("1: can.")


def test_gl_reduct_undefined_b():
    assert gl_reduct(UNDEF_B, {"a", "c"}) == parse_program("a. b :- b. c :- a.")
    assert gl_reduct(UNDEF_B, {"a", "b"}) == parse_program("a. b :- b.")


@given(programs(classical=True))
def test_gl_reduct_of_definite_program_is_identity(prog_scale):
    p, _ = prog_scale
    p = Program(tuple(Rule(r.head, r.pos) for r in p))
    assert gl_reduct(p, {"a", "b"}) == p
    assert gl_reduct(p, set()).is_definite


def test_gl_reduct_rejects_weighted_program():
    with pytest.raises(ValueError):
        gl_reduct(parse_program("0.5: a."), set())


def test_least_model():
    assert least_model(parse_program("a. b :- b. c :- a.")) == {"a", "c"}
    assert least_model(Program()) == set()
    assert least_model(parse_program("a :- b. b :- a.")) == set()
    with pytest.raises(NotDefiniteError):
        least_model(UNDEF_B)


@given(programs(classical=True, max_rules=8))
def test_least_model_matches_naive_iteration(prog_scale):
    p, _ = prog_scale
    p = Program(tuple(Rule(r.head, r.pos) for r in p))
    assert least_model(p) == naive_least_model(p)


def test_is_answer_set():
    assert is_answer_set(UNDEF_B, {"a", "c"})
    assert not is_answer_set(UNDEF_B, {"a", "b", "c"})
    self_block = parse_program("a :- not a.")
    assert not is_answer_set(self_block, set())
    assert not is_answer_set(self_block, {"a"})


def test_enumerate_answer_sets():
    assert enumerate_answer_sets(parse_program("a :- not b. b :- not a.")) == [
        {"a"}, {"b"}]
    assert enumerate_answer_sets(parse_program("a :- not a.")) == []
    assert enumerate_answer_sets(UNDEF_B) == [{"a", "c"}]
    assert enumerate_answer_sets(Program()) == [frozenset()]


def test_enumerate_guard():
    p = Program(tuple(Rule(f"x{i}", naf=(f"y{i}",)) for i in range(5)))
    assert len(enumerate_answer_sets(p, naf_limit=5)) == 1
    with pytest.raises(GuardError):
        enumerate_answer_sets(p, naf_limit=4)


@settings(max_examples=300)
@given(programs(n_atoms=4, max_rules=7, classical=True))
def test_enumeration_matches_brute_force(prog_scale):
    p, _ = prog_scale
    found = enumerate_answer_sets(p)
    assert found == brute_force_answer_sets(p)
    for m in found:
        assert is_model(p, m)
        # minimal among models of its own reduct
        reduct = gl_reduct(p, m)
        assert not any(is_model(reduct, s) for s in subsets(m) if s != m)


def test_enumeration_on_wider_programs():
    # 12 atoms, chains of even loops
    text = " ".join(f"x{i} :- not y{i}. y{i} :- not x{i}." for i in range(6))
    p = parse_program(text)
    found = enumerate_answer_sets(p)
    assert len(found) == 64
    assert found == brute_force_answer_sets(p)
