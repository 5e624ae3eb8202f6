"""Weighted normal logic programs: AST, parser and renderer.

Surface syntax, one statement per rule::

    % comment
    1: cb.
    1: ld :- cb, not can.
    0.2: can.

The weight prefix is optional and defaults to 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ParseError

ONE = Fraction(1)
ZERO = Fraction(0)

ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
KEYWORDS = frozenset({"not"})
MAX_FRACTION_DIGITS = 6

_DECIMAL_RE = re.compile(r"(\d+)(?:\.(\d+))?\Z")
_RATIO_RE = re.compile(r"(\d+)/(\d+)\Z")


def check_atom(name: str) -> str:
    if not ATOM_RE.match(name) or name in KEYWORDS:
        raise ValueError(f"invalid atom name {name!r}")
    return name


def parse_weight(text: str, max_digits: int = MAX_FRACTION_DIGITS) -> Fraction:
    """Parse a decimal literal such as ``0.2`` into an exact weight in [0, 1]."""
    m = _DECIMAL_RE.match(text.strip())
    if not m:
        raise ValueError(f"malformed weight {text!r}")
    whole, frac = m.group(1), m.group(2) or ""
    if len(frac) > max_digits:
        raise ValueError(
            f"weight {text!r} has more than {max_digits} fractional digits")
    w = Fraction(int(whole + frac), 10 ** len(frac))
    if w > 1:
        raise ValueError(f"weight {text!r} outside [0, 1]")
    return w


def parse_value(text: str) -> Fraction:
    """Like :func:`parse_weight`, but also accepts ratios (``1/3``) and any
    number of fractional digits. Used for grids and valuation literals."""
    text = text.strip()
    m = _RATIO_RE.match(text)
    if m:
        if int(m.group(2)) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        w = Fraction(int(m.group(1)), int(m.group(2)))
        if w > 1:
            raise ValueError(f"value {text!r} outside [0, 1]")
        return w
    return parse_weight(text, max_digits=10 ** 6)


def format_weight(w: Fraction) -> str:
    """Exact rendering: a terminating decimal when one exists, else ``n/d``."""
    w = Fraction(w)
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(w.numerator)
    scaled = w.numerator * 10 ** digits // w.denominator
    sign = "-" if scaled < 0 else ""
    s = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


@dataclass(frozen=True)
class Rule:
    """``weight: head :- pos..., not naf...``

    A rule with weight 1 is a classical rule; ``pos`` and ``naf`` are ordered
    and duplicate-free, but may share atoms.
    """

    head: str
    pos: tuple[str, ...] = ()
    naf: tuple[str, ...] = ()
    weight: Fraction = ONE

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(self.pos))
        object.__setattr__(self, "naf", tuple(self.naf))
        object.__setattr__(self, "weight", Fraction(self.weight))
        for atom in (self.head, *self.pos, *self.naf):
            check_atom(atom)
        if len(set(self.pos)) != len(self.pos):
            raise ValueError(f"duplicate atom in positive body of {self.head}")
        if len(set(self.naf)) != len(self.naf):
            raise ValueError(f"duplicate atom in naf body of {self.head}")
        if not 0 < self.weight <= 1:
            raise ValueError(
                f"rule weight {format_weight(self.weight)} outside (0, 1]")

    @property
    def atoms(self) -> frozenset[str]:
        return frozenset((self.head, *self.pos, *self.naf))

    @property
    def is_fact(self) -> bool:
        return not self.pos and not self.naf

    @property
    def is_definite(self) -> bool:
        return not self.naf

    def with_weight(self, weight) -> Rule:
        return Rule(self.head, self.pos, self.naf, weight)

    def render(self, weight: bool = True) -> str:
        body = [*self.pos, *(f"not {a}" for a in self.naf)]
        text = self.head
        if body:
            text += " :- " + ", ".join(body)
        if weight:
            text = f"{format_weight(self.weight)}: {text}"
        return text + "."

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class Program:
    """An ordered collection of weighted rules."""

    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    @property
    def herbrand_base(self) -> frozenset[str]:
        return frozenset().union(*(r.atoms for r in self.rules))

    @property
    def is_definite(self) -> bool:
        return all(r.is_definite for r in self.rules)

    @property
    def kind(self) -> str:
        return "definite" if self.is_definite else "normal"

    @property
    def is_classical(self) -> bool:
        return all(r.weight == 1 for r in self.rules)

    @property
    def weights(self) -> frozenset[Fraction]:
        return frozenset(r.weight for r in self.rules)

    def __str__(self):
        return render_program(self)


def naf_atoms(p: Program) -> frozenset[str]:
    """Atoms occurring under ``not`` somewhere in ``p``."""
    return frozenset(a for r in p for a in r.naf)


def render_program(p: Program, weights: bool = True) -> str:
    return "\n".join(r.render(weight=weights) for r in p)


# -- parser -------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<if>:-)
  | (?P<colon>:)
  | (?P<comma>,)
  | (?P<dot>\.)
""", re.VERBOSE)


@dataclass
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             line, pos - line_start + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        chunk = m.group()
        if "\n" in chunk:
            line += chunk.count("\n")
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def next(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {what}, found {found!r}",
                             tok.line, tok.column)
        return tok

    def atom(self) -> str:
        tok = self.expect("ident", "atom")
        if not ATOM_RE.match(tok.text) or tok.text in KEYWORDS:
            raise ParseError(
                f"invalid atom {tok.text!r} (atoms start with a lowercase "
                "letter and 'not' is reserved)", tok.line, tok.column)
        return tok.text

    def program(self) -> Program:
        rules = []
        while self.peek().kind != "eof":
            rules.append(self.statement())
        return Program(tuple(rules))

    def statement(self) -> Rule:
        start = self.peek()
        weight = ONE
        if start.kind == "number":
            self.next()
            try:
                weight = parse_weight(start.text)
            except ValueError as exc:
                raise ParseError(str(exc), start.line, start.column) from None
            if weight == 0:
                raise ParseError(
                    "weight-0 rule can never contribute to an answer set; "
                    "remove it", start.line, start.column)
            self.expect("colon", "':' after weight")
        head = self.atom()
        pos: list[str] = []
        naf: list[str] = []
        if self.peek().kind == "if":
            self.next()
            while True:
                tok = self.peek()
                nxt = self.tokens[self.i + 1]
                if tok.kind == "ident" and tok.text == "not" and nxt.kind == "ident":
                    self.next()
                    part, tok = naf, self.peek()
                else:
                    part = pos
                a = self.atom()
                if a in part:
                    kind = "naf" if part is naf else "positive"
                    raise ParseError(f"duplicate atom {a!r} in {kind} body",
                                     tok.line, tok.column)
                part.append(a)
                if self.peek().kind != "comma":
                    break
                self.next()
        self.expect("dot", "'.' ending the rule")
        return Rule(head, tuple(pos), tuple(naf), weight)


def parse_program(text: str) -> Program:
    """Parse program text. Raises :class:`ParseError` with a position."""
    return _Parser(text).program()


def program_of(rules: Iterable) -> Program:
    """Build a program from ``Rule`` objects or ``(weight, head, pos, naf)``
    tuples; handy in tests and for programmatic construction."""
    out = []
    for r in rules:
        if not isinstance(r, Rule):
            w, head, pos, naf = r
            r = Rule(head, tuple(pos), tuple(naf), Fraction(w))
        out.append(r)
    return Program(tuple(out))
