"""Compile a possibilistic program into a classical one over graded atoms.

Every atom ``a`` gets one fresh atom per non-zero level ``c`` of a
certainty scale, read as "a holds with certainty at least c". A rule of
weight ``w`` becomes, for each level ``0 < c <= w``::

    head@c :- body@c, not naf@c''      with c'' = min{d in scale | d > 1 - c}

Classical answer sets of the image lift back to valuations by taking, for
each atom, the highest level present. Only downward-closed answer sets
(``a@c`` present implies ``a@c'`` present for every lower level) stand for
valuations; the plain schema also admits non-closed ones, e.g. ``{a@1}``
for ``1: a :- not a.``, which :func:`solve_via_translation` discards.
Passing ``closure=True`` to :func:`translate` adds ``a@c' :- a@c`` rules
so that every classical answer set is closed, which is what an external
ASP solver needs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .classical import DEFAULT_NAF_LIMIT, enumerate_answer_sets
from .errors import PaspError, ScaleError
from .preduct import Valuation, close_scale, is_closed_scale, sort_valuations
from .syntax import ZERO, Program, Rule, check_atom, format_weight, parse_value

SCALED_NAME_RE = re.compile(r".*__\d+\Z")


@dataclass(frozen=True)
class ScaledAtom:
    base: str
    level: Fraction
    name: str


@dataclass
class SimulationMap:
    """Bookkeeping between ``(atom, level)`` pairs and emitted atom names."""

    scale: tuple[Fraction, ...]
    forward: dict[tuple[str, Fraction], ScaledAtom] = field(default_factory=dict)
    source: Program | None = None

    def __post_init__(self):
        self.backward = {s.name: s for s in self.forward.values()}

    @classmethod
    def build(cls, base: Iterable[str], scale, source=None) -> SimulationMap:
        scale = tuple(scale)
        forward = {}
        for a in sorted(base):
            for k, c in enumerate(scale):
                if c > 0:
                    forward[a, c] = ScaledAtom(a, c, scaled_name(a, k))
        return cls(scale, forward, source)

    def name(self, atom: str, level) -> str:
        return self.forward[atom, Fraction(level)].name

    def lookup(self, name: str) -> ScaledAtom:
        try:
            return self.backward[name]
        except KeyError:
            raise PaspError(f"atom {name!r} is not part of the translation") from None

    def levels(self) -> list[Fraction]:
        return [c for c in self.scale if c > 0]


def scaled_name(atom: str, index: int) -> str:
    return f"{atom}__{index}"


def certainty_scale(p: Program, extra: Iterable = ()) -> tuple[Fraction, ...]:
    """Rule weights, ``extra``, 0 and 1, closed under x -> 1-x, ascending."""
    return close_scale([*p.weights, *extra])


def _naf_level(scale, c: Fraction) -> Fraction:
    return min(d for d in scale if d > 1 - c)


def translate(p: Program, scale: Iterable, closure: bool = False
              ) -> tuple[Program, SimulationMap]:
    scale = tuple(sorted(set(Fraction(c) for c in scale)))
    if not is_closed_scale(scale):
        raise ScaleError("scale must contain 0 and 1 and be closed under x -> 1-x")
    missing = p.weights.difference(scale)
    if missing:
        raise ScaleError("scale is missing rule weight(s) "
                         + ", ".join(format_weight(w) for w in sorted(missing)))
    clashes = sorted(a for a in p.herbrand_base if SCALED_NAME_RE.match(a))
    if clashes:
        raise PaspError("atom names collide with generated names (NAME__K): "
                        + ", ".join(clashes))
    smap = SimulationMap.build(p.herbrand_base, scale, p)
    rules = []
    for r in p:
        for c in reversed(scale):
            if not 0 < c <= r.weight:
                continue
            c2 = _naf_level(scale, c)
            rules.append(Rule(smap.name(r.head, c),
                              tuple(smap.name(a, c) for a in r.pos),
                              tuple(smap.name(a, c2) for a in r.naf)))
    if closure:
        levels = smap.levels()
        for a in sorted(p.herbrand_base):
            for lower, upper in zip(levels, levels[1:]):
                rules.append(Rule(smap.name(a, lower), (smap.name(a, upper),)))
    return Program(tuple(rules)), smap


def is_downward_closed(m: Iterable[str], smap: SimulationMap) -> bool:
    m = frozenset(m)
    return project(lift_back(m, smap), smap) == m


def lift_back(m: Iterable[str], smap: SimulationMap) -> Valuation:
    best: dict[str, Fraction] = {}
    for name in m:
        s = smap.lookup(name)
        if s.level > best.get(s.base, ZERO):
            best[s.base] = s.level
    return Valuation(best)


def project(v: Mapping, smap: SimulationMap) -> frozenset[str]:
    """Downward closure of ``v`` on graded atoms."""
    out = set()
    for a, d in v.items():
        d = Fraction(d)
        if d and d not in smap.scale:
            raise ScaleError(
                f"degree {format_weight(d)} of {a} is not on the scale; only "
                "answer sets valued on the scale have a classical counterpart")
        for c in smap.levels():
            if c <= d:
                out.add(smap.name(a, c))
    return frozenset(out)


def solve_via_translation(p: Program, scale: Iterable,
                          naf_limit: int = DEFAULT_NAF_LIMIT) -> list[Valuation]:
    image, smap = translate(p, scale)
    return sort_valuations(lift_back(m, smap)
                           for m in enumerate_answer_sets(image, naf_limit)
                           if is_downward_closed(m, smap))


# -- sidecar mapping file ------------------------------------------------------

def render_mapping(smap: SimulationMap) -> str:
    """One ``scaled-name TAB base-name TAB level`` line per graded atom."""
    lines = [f"{s.name}\t{s.base}\t{format_weight(s.level)}"
             for s in smap.forward.values()]
    return "\n".join(lines)


def parse_mapping(text: str) -> SimulationMap:
    forward = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise PaspError(f"mapping line {lineno}: expected 3 tab-separated fields")
        name, base, level = parts
        check_atom(base)
        c = parse_value(level)
        forward[base, c] = ScaledAtom(base, c, name)
    scale = close_scale(c for _, c in forward)
    return SimulationMap(scale, forward)
