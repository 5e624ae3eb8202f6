"""Command-line front end: ``pasp solve|compile|check|compare``.

Exit codes: 0 answer set(s) found / check passed / methods agree,
1 none found / check failed / methods disagree, 2 usage or input error,
3 a resource guard tripped.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .classical import DEFAULT_NAF_LIMIT
from .errors import GuardError, PaspError
from .possdist import DEFAULT_BUDGET, semantic_answer_sets
from .preduct import (DEFAULT_GUESS_BUDGET, Valuation, baseline_answer_sets,
                      check_grid, close_scale, default_grid,
                      enumerate_poss_answer_sets, is_poss_answer_set,
                      poss_least_fixpoint, poss_reduct)
from .syntax import Program, format_weight, parse_program, parse_value, render_program
from .translate import (certainty_scale, render_mapping, solve_via_translation,
                        translate)

METHODS = ("direct", "translate", "semantic", "baseline")

EXIT_OK, EXIT_NONE, EXIT_ERROR, EXIT_GUARD = 0, 1, 2, 3


class UsageError(PaspError):
    pass


@dataclass
class SolveReport:
    method: str
    answer_sets: list[Valuation]
    grid: tuple[Fraction, ...] = ()
    seconds: float = 0.0
    notices: list[str] = field(default_factory=list)
    truncated: bool = False

    def to_json(self) -> dict:
        # no timing here: machine output must be byte-stable across runs
        return {
            "method": self.method,
            "grid": [format_weight(g) for g in self.grid],
            "answer_sets": [valuation_pairs(v) for v in self.answer_sets],
            "count": len(self.answer_sets),
            "truncated": self.truncated,
            "notices": list(self.notices),
        }

    def to_text(self) -> str:
        lines = [f"method: {self.method}"]
        if self.grid:
            lines.append("grid: " + " ".join(format_weight(g) for g in self.grid))
        n = len(self.answer_sets)
        lines.append(f"answer sets: {n}" + (" (truncated)" if self.truncated else ""))
        lines += [f"  {v}" for v in self.answer_sets]
        lines += [f"note: {msg}" for msg in self.notices]
        lines.append(f"time: {self.seconds:.3f}s")
        return "\n".join(lines)


def valuation_pairs(v: Valuation) -> list[list[str]]:
    return [[a, format_weight(d)] for a, d in v.items()]


def parse_valuation(text: str, base=None) -> Valuation:
    """``"cb=1,ld=0.8,can=0.2"`` -> Valuation; empty text is the zero valuation."""
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        atom, sep, degree = item.partition("=")
        atom = atom.strip()
        if not sep or not atom:
            raise UsageError(f"malformed valuation entry {item!r}, expected atom=degree")
        if base is not None and atom not in base:
            raise UsageError(f"unknown atom {atom!r} in valuation")
        try:
            values[atom] = parse_value(degree)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return Valuation(values)


def resolve_grid(spec: str, p: Program, auto=None) -> tuple[Fraction, ...]:
    """``auto``, ``uniform:K`` or ``list:v1,v2,...``"""
    auto = default_grid(p) if auto is None else auto
    kind, _, arg = spec.partition(":")
    try:
        if kind == "auto" and not arg:
            return auto
        if kind == "uniform":
            k = int(arg)
            if k < 1:
                raise ValueError
            return close_scale([*auto, *(Fraction(i, k) for i in range(k + 1))])
        if kind == "list":
            grid = close_scale(parse_value(v) for v in arg.split(",") if v.strip())
            return check_grid(p, grid)
    except PaspError as exc:
        raise UsageError(f"{exc}; add the missing weights to the list or "
                         "use --grid auto") from None
    except ValueError:
        raise UsageError(f"bad grid {spec!r}") from None
    raise UsageError(f"bad grid {spec!r}; use auto, uniform:K or list:v1,v2,...")


def read_program(path: str) -> Program:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_program(text)
    except PaspError as exc:
        raise UsageError(f"{path}: {exc}") from None


def run_method(method: str, p: Program, grid, limit: int | None = None,
               jobs: int = 1) -> list[Valuation]:
    if method == "direct":
        return enumerate_poss_answer_sets(
            p, grid, budget=limit or DEFAULT_GUESS_BUDGET, workers=jobs)
    if method == "translate":
        return solve_via_translation(p, grid, naf_limit=limit or DEFAULT_NAF_LIMIT)
    if method == "semantic":
        return semantic_answer_sets(p, grid, budget=limit or DEFAULT_BUDGET,
                                    workers=jobs)
    if method == "baseline":
        return baseline_answer_sets(p, naf_limit=limit or DEFAULT_NAF_LIMIT)
    raise UsageError(f"unknown method {method!r}")


def emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


# -- commands ------------------------------------------------------------------

def cmd_solve(args) -> int:
    p = read_program(args.file)
    grid = resolve_grid(args.grid, p)
    start = time.perf_counter()
    found = run_method(args.method, p, grid, args.guard_limit, args.jobs)
    report = SolveReport(args.method, found,
                         grid if args.method != "baseline" else (),
                         time.perf_counter() - start)
    if args.max_models is not None and len(found) > args.max_models:
        report.answer_sets = found[:args.max_models]
        report.truncated = True
        report.notices.append(
            f"showing {args.max_models} of {len(found)} answer sets")
    if args.format == "json":
        emit(json.dumps(report.to_json(), indent=2, sort_keys=True), args.output)
    else:
        emit(report.to_text(), args.output)
    return EXIT_OK if found else EXIT_NONE


def cmd_compile(args) -> int:
    p = read_program(args.file)
    if args.grid is not None:
        scale = resolve_grid(args.grid, p, auto=certainty_scale(p))
    else:
        try:
            extra = [parse_value(v) for v in (args.scale or "").split(",") if v.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --scale: {exc}") from None
        scale = certainty_scale(p, extra)
    image, smap = translate(p, scale, closure=args.closure)
    out = Path(args.output) if args.output else Path(args.file).with_suffix(".classical.pasp")
    text = render_program(image, weights=False)
    mapping = render_mapping(smap)
    try:
        out.write_text(text + "\n" if text else "", encoding="utf-8")
        Path(str(out) + ".map").write_text(mapping + "\n" if mapping else "",
                                           encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc.strerror}") from None
    summary = {
        "output": str(out),
        "mapping": str(out) + ".map",
        "rules": len(image),
        "scale": [format_weight(c) for c in scale],
    }
    if args.format == "json":
        sys.stdout.write(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"wrote {len(image)} rules to {out} "
                         f"(scale {' '.join(summary['scale'])}); "
                         f"mapping in {out}.map\n")
    return EXIT_OK


def cmd_check(args) -> int:
    p = read_program(args.file)
    v = parse_valuation(args.valuation, p.herbrand_base)
    reduct = poss_reduct(p, v)
    fix = poss_least_fixpoint(reduct)
    ok = fix == v
    if args.format == "json":
        doc = {
            "valuation": valuation_pairs(v),
            "reduct": render_program(reduct).splitlines(),
            "fixpoint": valuation_pairs(fix),
            "answer_set": ok,
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        lines = [f"valuation: {v}", "reduct:"]
        lines += [f"  {line}" for line in render_program(reduct).splitlines()]
        lines.append(f"fixpoint: {fix}")
        lines.append(f"answer set: {'yes' if ok else 'no'}")
        sys.stdout.write("\n".join(lines) + "\n")
    assert ok == is_poss_answer_set(p, v)
    return EXIT_OK if ok else EXIT_NONE


def cmd_compare(args) -> int:
    p = read_program(args.file)
    grid = resolve_grid(args.grid, p)
    results: dict[str, list[Valuation]] = {}
    skipped = []
    for method in METHODS:
        try:
            results[method] = run_method(method, p, grid, args.guard_limit)
        except GuardError as exc:
            if method != "semantic":
                raise
            skipped.append(f"semantic: {exc}")
    reference = set(results["direct"])
    agree = all(set(results[m]) == reference
                for m in ("translate", "semantic") if m in results)
    base = set(results["baseline"])
    diff = {
        "only_new_semantics": [valuation_pairs(v) for v in results["direct"]
                               if v not in base],
        "only_baseline": [valuation_pairs(v) for v in results["baseline"]
                          if v not in reference],
    }
    if args.format == "json":
        doc = {
            "grid": [format_weight(g) for g in grid],
            "methods": {m: [valuation_pairs(v) for v in vs]
                        for m, vs in results.items()},
            "agree": agree,
            "baseline_agrees": base == reference,
            "baseline_diff": diff,
            "skipped": skipped,
        }
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        lines = ["grid: " + " ".join(format_weight(g) for g in grid)]
        for m, vs in results.items():
            shown = ", ".join(map(str, vs)) if vs else "(none)"
            lines.append(f"{m:<10} {shown}")
        lines += [f"skipped {msg}" for msg in skipped]
        ran = [m for m in ("direct", "translate", "semantic") if m in results]
        lines.append(("agree: " if agree else "DISAGREE: ") + " = ".join(ran))
        if base == reference:
            lines.append("baseline: same answer sets")
        else:
            lines.append("baseline: differs")
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK if agree else EXIT_NONE


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pasp", description="Possibilistic answer set solver.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, grid_default="auto"):
        sp.add_argument("file", help="program in .pasp syntax")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--grid", default=grid_default,
                        help="auto | uniform:K | list:v1,v2,... (default: %(default)s)")
        sp.add_argument("--guard-limit", type=int, default=None, metavar="N",
                        help="override the search guard: guesses (direct), "
                             "naf atoms (translate, baseline), work units (semantic)")

    sp = sub.add_parser("solve", help="compute possibilistic answer sets")
    common(sp)
    sp.add_argument("--method", choices=METHODS, default="direct")
    sp.add_argument("--max-models", type=int, default=None, metavar="N")
    sp.add_argument("--jobs", type=int, default=1, metavar="N",
                    help="worker processes for the guess search (direct, semantic)")
    sp.add_argument("-o", "--output", default=None, metavar="PATH")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("compile", help="translate to a classical program")
    common(sp, grid_default=None)
    sp.add_argument("--scale", default=None, metavar="V1,V2,...",
                    help="extra scale levels, unioned with the program weights")
    sp.add_argument("--closure", action="store_true",
                    help="add NAME__i :- NAME__j rules (j above i) so every "
                         "classical answer set is downward closed; use this "
                         "when solving the output with an external ASP system")
    sp.add_argument("-o", "--output", default=None, metavar="PATH",
                    help="classical program path; the mapping goes to PATH.map")
    sp.set_defaults(func=cmd_compile)

    sp = sub.add_parser("check", help="test one valuation against the reduct")
    sp.add_argument("file")
    sp.add_argument("valuation", help='e.g. "cb=1,ld=0.8,can=0.2"')
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("compare", help="run every method and diff the results")
    common(sp)
    sp.set_defaults(func=cmd_compare)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"pasp: resource guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PaspError, ValueError) as exc:
        print(f"pasp: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
