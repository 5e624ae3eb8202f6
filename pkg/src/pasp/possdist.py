"""Possibility distributions over interpretations and the semantic solver.

Each rule, together with a guess ``g`` for how possible it is that each
naf atom is false, induces a lower bound on the necessity of its head::

    N(head) >= min(N(body atoms), g(naf atoms), weight)

The least specific distribution satisfying all bounds is computed
explicitly over every interpretation of the Herbrand base, so this module
is exponential by design. It serves as the ground-truth oracle for the
syntactic solvers in :mod:`pasp.preduct` and :mod:`pasp.translate`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import GuardError, PaspError
from .preduct import (Valuation, check_grid, close_scale, default_grid,
                      sort_valuations)
from .syntax import ONE, ZERO, Program, naf_atoms

DEFAULT_MAX_ATOMS = 10
DEFAULT_BUDGET = 10 ** 7


class PossibilityDistribution:
    """A degree in [0, 1] for every subset of ``base``."""

    def __init__(self, base: Iterable[str], values: Mapping | None = None):
        self.base = tuple(sorted(set(base)))
        self._index = {a: i for i, a in enumerate(self.base)}
        n = len(self.base)
        if values is None:
            self._pi = [ONE] * (1 << n)
        else:
            self._pi = [ZERO] * (1 << n)
            seen = 0
            for interp, v in values.items():
                self._pi[self._mask(interp)] = Fraction(v)
                seen += 1
            if seen != 1 << n:
                raise ValueError("a distribution needs a value for every interpretation")
        if any(not 0 <= v <= 1 for v in self._pi):
            raise ValueError("possibility degrees must lie in [0, 1]")

    @classmethod
    def _from_list(cls, base, pi):
        d = cls(base)
        d._pi = list(pi)
        return d

    def _mask(self, interp: Iterable[str]) -> int:
        m = 0
        for a in interp:
            if a not in self._index:
                raise PaspError(f"atom {a!r} is not in the base")
            m |= 1 << self._index[a]
        return m

    def _interp(self, mask: int) -> frozenset[str]:
        return frozenset(a for i, a in enumerate(self.base) if mask >> i & 1)

    def __getitem__(self, interp) -> Fraction:
        return self._pi[self._mask(interp)]

    def items(self):
        for mask, v in enumerate(self._pi):
            yield self._interp(mask), v

    def possibility(self, holds) -> Fraction:
        """Max degree over interpretations (frozensets) where ``holds`` is true."""
        return max((v for i, v in self.items() if holds(i)), default=ZERO)

    def possibility_not(self, atom: str) -> Fraction:
        if atom not in self._index:
            raise PaspError(f"unknown atom {atom!r}")
        bit = 1 << self._index[atom]
        return max(v for m, v in enumerate(self._pi) if not m & bit)

    def necessity(self, atom: str) -> Fraction:
        return ONE - self.possibility_not(atom)

    def __eq__(self, other):
        if not isinstance(other, PossibilityDistribution):
            return NotImplemented
        return self.base == other.base and self._pi == other._pi

    def __le__(self, other):
        return self.base == other.base and all(
            x <= y for x, y in zip(self._pi, other._pi))

    def __repr__(self):
        rows = ", ".join("{" + ",".join(sorted(i)) + f"}}:{v}" for i, v in self.items())
        return f"PossibilityDistribution({rows})"


def necessity(pi: PossibilityDistribution, a: str | None) -> Fraction:
    """N(a) = 1 - max{pi(I) | a not in I}; ``None`` stands for truth."""
    if a is None:
        return ONE
    return pi.necessity(a)


@dataclass(frozen=True)
class NecessityConstraint:
    """``N(head) >= min(N(body...), naf_bounds..., weight)``"""

    head: str
    body: tuple[str, ...] = ()
    naf_bounds: tuple[Fraction, ...] = ()
    weight: Fraction = ONE

    def constant(self) -> Fraction:
        return min([Fraction(self.weight), *map(Fraction, self.naf_bounds)])

    def bound(self, pi: PossibilityDistribution) -> Fraction:
        return min([self.constant(), *(pi.necessity(a) for a in self.body)])

    def satisfied_by(self, pi: PossibilityDistribution) -> bool:
        return pi.necessity(self.head) >= self.bound(pi)

    @property
    def atoms(self):
        return frozenset((self.head, *self.body))


def constraints_of(p: Program, g: Mapping[str, Fraction]
                   ) -> list[NecessityConstraint]:
    """One constraint per rule, in rule order."""
    out = []
    for r in p:
        try:
            bounds = tuple(Fraction(g[a]) for a in r.naf)
        except KeyError as exc:
            raise PaspError(f"guess has no value for naf atom {exc.args[0]!r}") from None
        out.append(NecessityConstraint(r.head, r.pos, bounds, r.weight))
    return out


def least_specific(base: Iterable[str], cs: Iterable[NecessityConstraint]
                   ) -> PossibilityDistribution:
    """Greatest distribution satisfying every constraint.

    Starts from total ignorance and clamps ``pi(I) <= 1 - bound`` on every
    interpretation missing a constraint's head, recomputing all
    necessities before each sweep, until nothing changes.
    """
    cs = list(cs)
    base = sorted(set(base))
    for c in cs:
        if not c.atoms <= set(base):
            raise PaspError(f"constraint on {c.head} mentions atoms outside the base")
    # every degree the contraction can produce lies in this 1-x closed set,
    # so the loop runs on integer ranks; 1 - levels[k] == levels[top - k]
    levels = close_scale(c.constant() for c in cs)
    rank = {v: k for k, v in enumerate(levels)}
    top = len(levels) - 1
    index = {a: i for i, a in enumerate(base)}
    n = len(base)
    lacking = [[m for m in range(1 << n) if not m >> i & 1] for i in range(n)]
    compiled = [(index[c.head], [index[a] for a in c.body], rank[c.constant()])
                for c in cs]

    pi = [top] * (1 << n)
    changed = True
    while changed:
        changed = False
        nec = [top - max(pi[m] for m in lacking[i]) for i in range(n)]
        for head, body, k in compiled:
            cap = top - min([k, *(nec[j] for j in body)])
            for m in lacking[head]:
                if pi[m] > cap:
                    pi[m] = cap
                    changed = True
    return PossibilityDistribution._from_list(base, [levels[k] for k in pi])


def guess_consistent(pi: PossibilityDistribution, g: Mapping[str, Fraction],
                     atoms: Iterable[str]) -> bool:
    """``g(a) == Pi(not a)`` exactly, for every atom in ``atoms``."""
    return all(Fraction(g[a]) == pi.possibility_not(a) for a in atoms)


def _check_budget(p, grid, max_atoms, budget):
    n_base = len(p.herbrand_base)
    n_naf = len(naf_atoms(p))
    if n_base > max_atoms:
        raise GuardError(
            f"semantic solver limited to {max_atoms} atoms, program has {n_base}")
    work = (1 << n_base) * len(grid) ** n_naf
    if work > budget:
        raise GuardError(f"semantic search size {work} exceeds budget {budget}")


def semantic_answer_sets(p: Program, grid: Iterable | None = None,
                         max_atoms: int = DEFAULT_MAX_ATOMS,
                         budget: int = DEFAULT_BUDGET,
                         workers: int = 1) -> list[Valuation]:
    """Possibilistic answer sets found by guessing ``g`` on the naf atoms."""
    grid = default_grid(p) if grid is None else check_grid(p, grid)
    _check_budget(p, grid, max_atoms, budget)
    nafs = sorted(naf_atoms(p))
    guesses = itertools.product(grid, repeat=len(nafs))
    if workers > 1 and nafs:
        from .parallel import map_chunks
        found = map_chunks(_semantic_chunk, p, nafs, list(guesses), workers)
    else:
        found = _semantic_chunk(p, nafs, guesses)
    return sort_valuations(found)


def _semantic_chunk(p, nafs, guesses):
    base = p.herbrand_base
    found = []
    for values in guesses:
        g = dict(zip(nafs, values))
        pi = least_specific(base, constraints_of(p, g))
        # atoms never under naf do not influence pi; their guess is read off it
        full = {a: g[a] if a in g else pi.possibility_not(a) for a in base}
        if guess_consistent(pi, full, base):
            found.append(Valuation({a: pi.necessity(a) for a in base}))
    return found


def semantic_classical_answer_sets(p: Program, grid: Iterable = (ZERO, ONE),
                                   **kw) -> list[frozenset[str]]:
    """Classical answer sets as the 0/1-valued semantic solutions."""
    if not p.is_classical:
        raise ValueError("expected a classical program (all weights 1)")
    out = {v.support for v in semantic_answer_sets(p, grid, **kw)
           if all(d == 1 for d in v.values())}
    return sorted(out, key=lambda i: tuple(sorted(i)))
