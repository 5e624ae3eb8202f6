"""Classical answer sets of propositional normal programs.

Weights are ignored here except as a precondition: the reduct and the
answer-set checks only make sense for weight-1 (classical) programs.
"""

from __future__ import annotations

from typing import Iterable

from .errors import GuardError, NotDefiniteError
from .syntax import ONE, Program, Rule, naf_atoms

DEFAULT_NAF_LIMIT = 20


def _require_classical(p: Program):
    if not p.is_classical:
        raise ValueError("expected a classical program (all weights 1)")


def strip_weights(p: Program) -> Program:
    return Program(tuple(r.with_weight(ONE) for r in p))


def gl_reduct(p: Program, i: Iterable[str]) -> Program:
    """Gelfond-Lifschitz reduct: drop rules blocked by ``i``, strip ``not``."""
    _require_classical(p)
    i = frozenset(i)
    return Program(tuple(Rule(r.head, r.pos) for r in p if i.isdisjoint(r.naf)))


def _fixpoint(rules) -> set[str]:
    # counter-based propagation: each rule fires once its positive body is in
    remaining = []
    watch: dict[str, list[int]] = {}
    model: set[str] = set()
    queue = []
    for k, (head, pos) in enumerate(rules):
        body = set(pos)
        remaining.append(len(body))
        for a in body:
            watch.setdefault(a, []).append(k)
        if not body:
            queue.append(head)
    while queue:
        a = queue.pop()
        if a in model:
            continue
        model.add(a)
        for k in watch.get(a, ()):
            remaining[k] -= 1
            if remaining[k] == 0:
                queue.append(rules[k][0])
    return model


def least_model(p: Program) -> frozenset[str]:
    """Least fixpoint of the immediate-consequence operator from the empty set."""
    if not p.is_definite:
        raise NotDefiniteError("least_model needs a definite program")
    return frozenset(_fixpoint([(r.head, r.pos) for r in p]))


def is_answer_set(p: Program, i: Iterable[str]) -> bool:
    i = frozenset(i)
    return least_model(gl_reduct(p, i)) == i


def is_model(p: Program, i: Iterable[str]) -> bool:
    """``i`` satisfies every rule of ``p`` read classically."""
    i = frozenset(i)
    return all(r.head in i or not i.issuperset(r.pos) or not i.isdisjoint(r.naf)
               for r in p)


def interpretation_key(i: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(i))


def enumerate_answer_sets(p: Program, naf_limit: int = DEFAULT_NAF_LIMIT
                          ) -> list[frozenset[str]]:
    """All answer sets, sorted by their sorted atom tuples.

    The search guesses which naf atoms are true. A partial guess is pruned
    when the least model under "every undecided naf atom true" (a lower
    bound) already contains an atom guessed false, or the least model under
    "every undecided naf atom false" (an upper bound) misses an atom guessed
    true. Leaves are checked exactly, so pruning never changes the result.
    """
    _require_classical(p)
    nafs = sorted(naf_atoms(p))
    if len(nafs) > naf_limit:
        raise GuardError(
            f"{len(nafs)} naf atoms exceed the enumeration limit of {naf_limit}")
    rules = [(r.head, r.pos, frozenset(r.naf)) for r in p]

    def model_under(true_naf):
        return _fixpoint([(h, pos) for h, pos, naf in rules
                          if true_naf.isdisjoint(naf)])

    found = set()

    def search(k, yes, no):
        undecided = frozenset(nafs[k:])
        upper = model_under(yes)
        lower = model_under(yes | undecided)
        if not yes <= upper or not no.isdisjoint(lower):
            return
        if k == len(nafs):
            m = frozenset(upper)
            if m.intersection(nafs) == yes:
                found.add(m)
            return
        a = nafs[k]
        # propagate: a is forced in by the lower bound, out by the upper
        if a in lower:
            search(k + 1, yes | {a}, no)
        elif a not in upper:
            search(k + 1, yes, no | {a})
        else:
            search(k + 1, yes | {a}, no)
            search(k + 1, yes, no | {a})

    search(0, frozenset(), frozenset())
    return sorted(found, key=interpretation_key)
