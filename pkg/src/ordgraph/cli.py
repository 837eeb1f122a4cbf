"""Command-line front end.

Exit status: 0 success, 1 analysis error, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import __version__
from .ordinal import (OrdinalSyntaxError, UndefinedOperation, add, compare, left_sub, mul,
                      parse_ordinal, power)
from .path import NonComposable
from .presentation import (InvalidPresentation, PresentationError, builtin, is_builtin_name,
                           parse_presentation, validate)
from .quotient import NotConstructible, build_nonreturning, check_nonreturning_bounded, falpha
from .regularity import (DEFAULT_BOUND, FiniteSet, PreconditionError, fibre,
                         relation_four_line)
from .report import build_report, dumps
from .starword import multiply, parse_star_word
from .verdict import verdict

GRAMMAR = """\
sources: a builtin name (interval_omega2, two_loop, two_plus_two,
long_path_trunc(N), cantor_trunc(L,K)) or a presentation file:

  vertex v w
  edge e : v -> w              # level-0 generator, source v, range w
  gen f level 1 : v -> v = e e f
                               # rule: f unfolds to the word, then the tail f

paths are words written range side first, e.g. "f e e".
star words: "e1 e2 * f1 f2" stands for T_(e1 e2) T_(f1 f2)*; "0" is zero.
ordinals:  ord := term ("+" term)*   term := "w" ("^" atom)? ("*" NAT)? | NAT
           atom := NAT | "w" | "(" ord ")"
ord operators: + (sum), x (product), ^ (power), cmp, sub (A sub B = -A+B)
"""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _source(text: str):
    if is_builtin_name(text):
        return builtin(text)
    if not os.path.exists(text):
        raise UsageError(f"{text!r} is neither a builtin nor an existing file")
    with open(text, encoding="utf-8") as fh:
        return parse_presentation(fh.read(), name=os.path.basename(text))


def _valid(text: str):
    p = _source(text)
    report = validate(p)
    if not report.ok:
        raise InvalidPresentation(report)
    return p


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ordgraph", description="Analyze finitely presented ordinal graphs.",
                 epilog=GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="validate a presentation")
    c.add_argument("source")

    a = sub.add_parser("analyze", help="per-vertex regularity, quotients and verdict")
    a.add_argument("source")
    a.add_argument("--level", type=int)
    a.add_argument("--bound", type=int, default=DEFAULT_BOUND)
    a.add_argument("--json", action="store_true")

    f = sub.add_parser("falpha", help="quotient digraph at one level")
    f.add_argument("source")
    f.add_argument("--level", type=int, required=True)
    f.add_argument("--dot", action="store_true")

    v = sub.add_parser("verdict", help="conditions (V), (S), uniqueness and simplicity")
    v.add_argument("source")
    v.add_argument("--json", action="store_true")
    v.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    n = sub.add_parser("nonreturning", help="build and check a non-returning path")
    n.add_argument("source")
    n.add_argument("--vertex", required=True)
    n.add_argument("--level", type=int, required=True)
    n.add_argument("--min-blocks", type=int, required=True)
    n.add_argument("--depth", type=int, default=3, help="search depth of the bounded check")

    e = sub.add_parser("eval", help="multiply star words")
    e.add_argument("source")
    e.add_argument("operands", nargs="+")

    o = sub.add_parser("ord", help="ordinal calculator")
    o.add_argument("left")
    o.add_argument("op", nargs="?", choices=["+", "x", "^", "cmp", "sub"])
    o.add_argument("right", nargs="?")
    return ap


def _cmd_check(args, out) -> int:
    p = _source(args.source)
    report = validate(p)
    if report.ok:
        print(f"{p.name}: ok ({len(p.vertices)} vertices, {len(p.generators)} generators, "
              f"levels {' '.join(map(str, p.levels))})", file=out)
        return 0
    for viol in report:
        print(f"{p.name}: {viol.kind}: {viol.message}", file=out)
    return 1


def _render_text(report: dict, p, result, bound: int) -> str:
    lines = [f"graph {report['graph']}  levels {' '.join(map(str, report['levels']))}"]
    for vert in report["vertices"]:
        for row in vert["perLevel"]:
            fib = row["fibre"]
            if fib["kind"] == "FiniteSet":
                desc = "{" + ", ".join(fib["members"]) + "}"
            elif fib["kind"] == "InfiniteWitness":
                w = fib["witness"]
                desc = f"infinite: ({w['cycle']})^n {w['seed']} via {w['connector'] or vert['name']}"
            else:
                desc = f"unknown within bound {fib['bound']}"
            lines.append(f"  {vert['name']} level {row['level']}: source={row['isSource']} "
                         f"source-regular={row['isSourceRegular']} regular={row['isRegular']} "
                         f"fibre {desc}")
            if row["isRegular"] is True and fib["kind"] == "FiniteSet":
                f = fibre(p, vert["name"], row["level"], bound)
                if isinstance(f, FiniteSet):
                    lines.append(f"    asserted: {relation_four_line(vert['name'], f)}")
    for q in report["falpha"]:
        cyc = ", ".join(" ".join(c) for c in q["cyclesWithoutEntry"]) or "none"
        lines.append(f"  F{q['level']}: {q['vertexCount']} vertices, {q['edgeCount']} edges, "
                     f"cycles without entry: {cyc}")
    lines.append(_verdict_text(report))
    lines.extend(f"warning: {w}" for w in result.warnings)
    return "\n".join(lines) + "\n"


def _verdict_text(report: dict) -> str:
    cs = report["conditionS"]
    lines = [f"condition (V): {'holds' if report['conditionV']['holds'] else 'fails'}",
             f"condition (S): {cs['status']}" + (f" ({json.dumps(cs['detail'], sort_keys=True)})"
                                                 if "detail" in cs else "")]
    for e in report["ckUniqueness"]:
        lines.append(f"uniqueness level {e['level']}: {e['status']}"
                     + (f" ({e['reason']})" if "reason" in e else ""))
    lines.append(f"simplicity: {report['simplicity']['status']}")
    return "\n".join(lines)


def _cmd_analyze(args, out) -> int:
    if args.bound < 1:
        raise UsageError("--bound must be at least 1")
    p = _valid(args.source)
    if args.level is not None and not 0 <= args.level <= p.max_level + 1:
        raise UsageError(f"--level must lie in 0..{p.max_level + 1}")
    result = verdict(p, args.bound)
    report = build_report(p, args.bound, args.level, result)
    if args.json:
        out.write(dumps(report))
        for w in result.warnings:
            print(f"warning: {w}", file=sys.stderr)
    else:
        out.write(_render_text(report, p, result, args.bound))
    return 0


def _cmd_falpha(args, out) -> int:
    p = _valid(args.source)
    if not 0 <= args.level <= p.max_level:
        raise UsageError(f"--level must lie in 0..{p.max_level}")
    d = falpha(p, args.level)
    if args.dot:
        out.write(d.to_dot())
        return 0
    for cid, members in d.vertices.items():
        print(f"vertex {cid}: {' '.join(members)}", file=out)
    for e in d.edges:
        print(f"edge {e.id}: {e.source} -> {e.range}  members {' '.join(e.members)}", file=out)
    if not d.well_defined:
        print("warning: some tail class has inconsistent endpoints", file=out)
    return 0


def _cmd_verdict(args, out) -> int:
    p = _valid(args.source)
    result = verdict(p, args.bound)
    report = build_report(p, args.bound, None, result)
    keys = ("graph", "conditionV", "conditionS", "ckUniqueness", "simplicity")
    if args.json:
        body = {k: report[k] for k in keys}
        body["ckOverall"] = report["ckUniqueness"][-1]["status"]
        out.write(dumps(body))
    else:
        print(_verdict_text(report), file=out)
    for w in result.warnings:
        print(f"warning: {w}", file=sys.stderr)
    return 0


def _cmd_nonreturning(args, out) -> int:
    p = _valid(args.source)
    if args.vertex not in p.vertices:
        raise UsageError(f"unknown vertex {args.vertex!r}")
    if args.min_blocks < 1 or args.level < 0:
        raise UsageError("--min-blocks must be positive and --level non-negative")
    u = build_nonreturning(p, args.vertex, args.min_blocks, args.level)
    ok, bad = check_nonreturning_bounded(u, args.level, args.depth)
    print(f"path: {u}", file=out)
    print(f"length: {u.length}", file=out)
    if ok:
        print(f"non-returning up to depth {args.depth}: yes", file=out)
        return 0
    f, beta = bad
    print(f"non-returning up to depth {args.depth}: no (f={f}, beta={beta})", file=out)
    return 1


def _cmd_eval(args, out) -> int:
    p = _valid(args.source)
    tokens = args.operands
    operands = [" ".join(tokens)] if "*" in tokens else tokens
    try:
        words = [parse_star_word(p, text) for text in operands]
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad star word: {exc}") from None
    acc = words[0]
    for w in words[1:]:
        acc = multiply(acc, w)
    print(acc, file=out)
    return 0


def _cmd_ord(args, out) -> int:
    a = parse_ordinal(args.left)
    if args.op is None:
        if args.right is not None:
            raise UsageError("missing operator")
        print(a, file=out)
        return 0
    if args.right is None:
        raise UsageError(f"operator {args.op} needs a right operand")
    b = parse_ordinal(args.right)
    if args.op == "cmp":
        print(compare(a, b).value, file=out)
        return 0
    fn = {"+": add, "x": mul, "^": power, "sub": left_sub}[args.op]
    print(fn(a, b), file=out)
    return 0


_COMMANDS = {
    "check": _cmd_check, "analyze": _cmd_analyze, "falpha": _cmd_falpha,
    "verdict": _cmd_verdict, "nonreturning": _cmd_nonreturning, "eval": _cmd_eval,
    "ord": _cmd_ord,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}\n", file=sys.stderr)
        print(parser.format_usage() + "\n" + GRAMMAR, file=sys.stderr)
        return 2
    except InvalidPresentation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (PresentationError, OrdinalSyntaxError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (UndefinedOperation, PreconditionError, NotConstructible, NonComposable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
