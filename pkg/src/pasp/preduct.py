"""Valuations, the possibilistic fixpoint and the possibilistic reduct.

A valuation maps atoms to certainty degrees. The reduct of a program
w.r.t. a valuation weakens each rule by how certain its naf atoms are,
instead of deleting it outright; answer sets are the valuations that are
reproduced by the least fixpoint of their own reduct.

The older semantics (reduct w.r.t. the classical support only, weights
untouched) is kept as :func:`baseline_answer_sets` for comparison.
"""

from __future__ import annotations

import itertools
from collections.abc import Mapping
from fractions import Fraction
from typing import Iterable

from .classical import enumerate_answer_sets, strip_weights
from .errors import GuardError, NotDefiniteError, ScaleError
from .syntax import ONE, ZERO, Program, Rule, format_weight, naf_atoms

DEFAULT_GUESS_BUDGET = 10 ** 6
HALF = Fraction(1, 2)


class Valuation(Mapping):
    """Immutable atom -> degree mapping; atoms not listed have degree 0.

    Zero entries are dropped on construction, so two valuations are equal
    exactly when they agree on every atom.
    """

    __slots__ = ("_values", "_hash")

    def __init__(self, values=(), **kw):
        items = dict(values, **kw)
        clean = {}
        for atom, v in items.items():
            v = Fraction(v)
            if not 0 <= v <= 1:
                raise ValueError(f"degree of {atom} outside [0, 1]: {v}")
            if v:
                clean[atom] = v
        self._values = dict(sorted(clean.items()))
        self._hash = None

    def __getitem__(self, atom):
        return self._values[atom]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def degree(self, atom: str) -> Fraction:
        return self._values.get(atom, ZERO)

    @property
    def support(self) -> frozenset[str]:
        return frozenset(self._values)

    def key(self) -> tuple:
        return tuple(self._values.items())

    def __eq__(self, other):
        if isinstance(other, Valuation):
            return self._values == other._values
        if isinstance(other, Mapping):
            return self == Valuation(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._values.items()))
        return self._hash

    def __str__(self):
        inner = ", ".join(f"{a}^{format_weight(v)}" for a, v in self._values.items())
        return "{" + inner + "}"

    def __repr__(self):
        return f"Valuation({str(self)})"


def sort_valuations(vs: Iterable[Valuation]) -> list[Valuation]:
    return sorted(set(vs), key=Valuation.key)


# -- certainty scales ---------------------------------------------------------

def close_scale(values: Iterable) -> tuple[Fraction, ...]:
    """Smallest set containing ``values``, 0 and 1, closed under x -> 1-x."""
    vals = {ZERO, ONE}
    for v in values:
        v = Fraction(v)
        if not 0 <= v <= 1:
            raise ScaleError(f"scale value {v} outside [0, 1]")
        vals.add(v)
        vals.add(1 - v)
    return tuple(sorted(vals))


def is_closed_scale(scale: Iterable) -> bool:
    s = set(scale)
    return ZERO in s and ONE in s and all(1 - v in s for v in s)


def default_grid(p: Program) -> tuple[Fraction, ...]:
    """Program weights plus 0, 1/2 and 1, closed under x -> 1-x."""
    return close_scale([*p.weights, HALF])


def check_grid(p: Program, grid: Iterable) -> tuple[Fraction, ...]:
    grid = tuple(sorted(set(Fraction(g) for g in grid)))
    if not is_closed_scale(grid):
        raise ScaleError("grid must contain 0 and 1 and be closed under x -> 1-x")
    missing = p.weights.difference(grid)
    if missing:
        listed = ", ".join(format_weight(w) for w in sorted(missing))
        raise ScaleError(f"grid is missing rule weight(s) {listed}")
    return grid


# -- operators ----------------------------------------------------------------

def cut(v: Mapping, c, strict: bool = False, base: Iterable[str] = ()
        ) -> frozenset[str]:
    """``{a | v(a) >= c}``, or ``> c`` when strict. Atoms of ``base`` that
    ``v`` does not list count as degree 0."""
    c = Fraction(c)
    atoms = set(base) | set(v)
    if strict:
        return frozenset(a for a in atoms if v.get(a, ZERO) > c)
    return frozenset(a for a in atoms if v.get(a, ZERO) >= c)


def c_cut(p: Program, c) -> Program:
    c = Fraction(c)
    return Program(tuple(r for r in p if r.weight >= c))


def _require_definite(p: Program):
    if not p.is_definite:
        raise NotDefiniteError("expected a possibilistic definite program")


def poss_step(p: Program, v: Mapping) -> Valuation:
    """One application of the possibilistic immediate-consequence operator,
    kept inflationary by taking the max with the previous degree."""
    _require_definite(p)
    out = {a: Fraction(x) for a, x in v.items()}
    for r in p:
        support = min([r.weight, *(v.get(a, ZERO) for a in r.pos)])
        if support > out.get(r.head, ZERO):
            out[r.head] = support
    return Valuation(out)


def poss_least_fixpoint(p: Program) -> Valuation:
    _require_definite(p)
    # single pass worklist; equivalent to iterating poss_step from the empty valuation
    val: dict[str, Fraction] = {}
    changed = True
    while changed:
        changed = False
        for r in p:
            support = r.weight
            for a in r.pos:
                d = val.get(a, ZERO)
                if d < support:
                    support = d
            if support > val.get(r.head, ZERO):
                val[r.head] = support
                changed = True
    return Valuation(val)


def naf_allowance(r: Rule, v: Mapping) -> Fraction:
    """Largest c such that no naf atom of ``r`` has degree above 1 - c."""
    return ONE - max((Fraction(v.get(a, ZERO)) for a in r.naf), default=ZERO)


def poss_reduct(p: Program, v: Mapping) -> Program:
    """Reduct w.r.t. a valuation: each rule loses its naf part and is
    weakened to ``min(weight, 1 - max naf degree)``; rules weakened to 0
    are dropped."""
    out = []
    for r in p:
        w = min(r.weight, naf_allowance(r, v))
        if w > 0:
            out.append(Rule(r.head, r.pos, (), w))
    return Program(tuple(out))


def is_poss_answer_set(p: Program, v: Mapping) -> bool:
    return poss_least_fixpoint(poss_reduct(p, v)) == Valuation(v)


def enumerate_poss_answer_sets(p: Program, grid: Iterable | None = None,
                               budget: int = DEFAULT_GUESS_BUDGET,
                               workers: int = 1) -> list[Valuation]:
    """All grid-valued possibilistic answer sets.

    Guesses a grid degree for each naf atom, solves the reduct that guess
    induces, and keeps fixpoints that reproduce the guess.
    """
    grid = default_grid(p) if grid is None else check_grid(p, grid)
    nafs = sorted(naf_atoms(p))
    n_guesses = len(grid) ** len(nafs)
    if n_guesses > budget:
        raise GuardError(f"{n_guesses} guesses exceed the budget of {budget}")
    guesses = itertools.product(grid, repeat=len(nafs))
    if workers > 1 and n_guesses > 1:
        from .parallel import map_chunks
        found = map_chunks(_direct_chunk, p, nafs, list(guesses), workers)
    else:
        found = _direct_chunk(p, nafs, guesses)
    return sort_valuations(found)


def _direct_chunk(p, nafs, guesses):
    found = []
    for values in guesses:
        guess = dict(zip(nafs, values))
        w = poss_least_fixpoint(poss_reduct(p, guess))
        if all(w.degree(a) == guess[a] for a in nafs):
            found.append(w)
    return found


# -- baseline (reduct w.r.t. the classical support, weights untouched) --------

def baseline_reduct(p: Program, a: Iterable[str]) -> Program:
    a = frozenset(a)
    return Program(tuple(Rule(r.head, r.pos, (), r.weight)
                         for r in p if a.isdisjoint(r.naf)))


def baseline_answer_sets(p: Program, naf_limit: int | None = None
                         ) -> list[Valuation]:
    """Classical answer sets of the unweighted program, decorated with
    certainties from the fixpoint of the support-based reduct."""
    kw = {} if naf_limit is None else {"naf_limit": naf_limit}
    found = []
    for m in enumerate_answer_sets(strip_weights(p), **kw):
        w = poss_least_fixpoint(baseline_reduct(p, m))
        if w.support == m:
            found.append(w)
    return sort_valuations(found)
