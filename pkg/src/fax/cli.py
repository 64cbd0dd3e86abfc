"""Command-line front end.

Exit codes: 0 success, 1 bad input or a refuted ``check``, 2 the query ran
out of budget and the printed result is partial.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .automata import Alphabet, Word, dump, load, regex_to_nfa
from .automata.core import union
from .automata.inclusion import InclusionSession
from .bench import CorpusSpec, dumps_corpus, dumps_maze, gen_corpus_automaton, gen_maze, maze_sizes
from .errors import BudgetExceeded, FaxError, FormatError
from .explain import (
    EnumOptions,
    ExplanationReport,
    decision_automaton,
    explain,
    extract_axp,
    extract_cxp,
)
from .explang import CLI_BOUNDS, build_axp_pattern, build_cxp_pattern, index_set

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2
_META = set("()|*+?[]{}\\.<>^-,")
TIMING_HEADER = "instance\tmode\ttime_ms\tn_axps\tn_cxps\tcomplete"


class _InputError(Exception):
    pass


# -- input loading --

def _regex_literals(text: str) -> set[str]:
    """Plain characters a regex mentions outside escapes and counted repeats."""
    out = set()
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 4 if text[i + 1:i + 2] == "x" else 2
            continue
        if ch == "{":
            close = text.find("}", i)
            i = len(text) if close < 0 else close + 1
            continue
        if ch == "<":
            close = text.find(">", i)
            i = len(text) if close < 0 else close + 1
            continue
        if ch not in _META and not ch.isspace():
            out.add(ch)
        i += 1
    return out


def _regex_sources(args) -> list[str]:
    if args.regex is not None:
        return [args.regex]
    lines = Path(args.regex_file).read_text(encoding="utf-8").splitlines()
    return [ln for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def _default_alphabet(args, regexes: list[str]) -> Alphabet:
    symbols = [chr(c) for c in range(ord("a"), ord("z") + 1)]
    extra = set(args.word or "")
    for r in regexes:
        extra |= _regex_literals(r)
    symbols += sorted(extra - set(symbols))
    return Alphabet(symbols)


def load_automaton(args):
    if args.automaton_file:
        a = load(args.automaton_file)
        if args.alphabet and Alphabet.from_spec(args.alphabet) != a.alphabet:
            raise _InputError("--alphabet disagrees with the automaton file")
        return a
    regexes = _regex_sources(args)
    if not regexes:
        raise _InputError("no regular expressions given")
    alphabet = Alphabet.from_spec(args.alphabet) if args.alphabet else _default_alphabet(args, regexes)
    parts = []
    for lineno, r in enumerate(regexes, 1):
        try:
            parts.append(regex_to_nfa(r, alphabet))
        except FaxError as exc:
            if args.regex_file:
                raise FormatError(str(exc), lineno) from None
            raise
    return parts[0] if len(parts) == 1 else union(parts)


def _options(args) -> EnumOptions:
    return EnumOptions(
        target_axp=args.target == "axp",
        warm_start=args.warm_start,
        minimum_hs=args.minimum_hs,
        node_budget=args.node_budget,
        time_budget=args.timeout,
    )


def _positions(text: str) -> list[int]:
    try:
        return [int(p) for p in text.replace(",", " ").split()]
    except ValueError:
        raise _InputError(f"positions must be integers, got {text!r}") from None


# -- output --

def _fmt_set(s) -> str:
    return "[" + ", ".join(map(str, sorted(s))) + "]"


def format_report(rep: ExplanationReport) -> str:
    d = rep.to_dict()
    width = max([len(_fmt_set(s)) for s in rep.axps + rep.cxps] + [2])
    lines = [
        f"word: {d['word']}",
        f"decision: {d['decision']}",
        f"bounds: {d['bounds']}",
        f"AXps ({len(d['axps'])}):",
    ]
    lines += [f"  {_fmt_set(s):<{width}}  {p}" for s, p in zip(d["axps"], d["patterns"]["axps"])]
    lines.append(f"CXps ({len(d['cxps'])}):")
    lines += [f"  {_fmt_set(s):<{width}}  {p}" for s, p in zip(d["cxps"], d["patterns"]["cxps"])]
    lines.append("FFA:")
    lines += [f"  {i}: {v}" for i, v in sorted(rep.ffa.items())]
    s = d["stats"]
    lines.append(
        f"stats: iterations={s['iterations']} inclusion_checks={s['inclusion_checks']} "
        f"time_ms={s['time_ms']} complete={'yes' if s['complete'] else 'no'}"
    )
    return "\n".join(lines)


def timing_row(instance: str, mode: str, rep: ExplanationReport) -> str:
    return f"{instance}\t{mode}\t{rep.time_ms:.3f}\t{len(rep.axps)}\t{len(rep.cxps)}\t{int(rep.complete)}"


def _mode_name(opts: EnumOptions) -> str:
    name = "axp" if opts.target_axp else "cxp"
    if opts.warm_start:
        name += "+warm"
    if opts.minimum_hs:
        name += "+min"
    return name


# -- subcommands --

def cmd_explain(args, out) -> int:
    a = load_automaton(args)
    bounds = CLI_BOUNDS[args.bounds]
    opts = _options(args)
    if args.words_file:
        words = [ln.strip() for ln in Path(args.words_file).read_text(encoding="utf-8").splitlines() if ln.strip()]
        parsed = [Word.parse(a.alphabet, w) for w in words]

        def run(w):
            return explain(a, w, bounds, opts, state_cap=args.state_cap)

        with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
            reports = list(pool.map(run, parsed))
        print(TIMING_HEADER, file=out)
        for text, rep in zip(words, reports):
            print(timing_row(text, _mode_name(opts), rep), file=out)
        return EXIT_OK if all(r.complete for r in reports) else EXIT_PARTIAL

    w = _word(args, a)
    rep = explain(a, w, bounds, opts, state_cap=args.state_cap)
    if args.timing:
        print(TIMING_HEADER, file=out)
        print(timing_row(str(w), _mode_name(opts), rep), file=out)
    elif args.format == "json":
        print(json.dumps(rep.to_dict(), indent=2), file=out)
    else:
        print(format_report(rep), file=out)
    if args.verbose:
        print(rep.clauses, file=sys.stderr)
    return EXIT_OK if rep.complete else EXIT_PARTIAL


def _word(args, a) -> Word:
    if args.word is None:
        raise _InputError("--word is required")
    return Word.parse(a.alphabet, args.word)


def _deadline(args):
    return None if args.timeout is None else time.monotonic() + args.timeout


def cmd_single(args, out) -> int:
    a = load_automaton(args)
    w = _word(args, a)
    bounds = CLI_BOUNDS[args.bounds]
    decision, target = decision_automaton(a, w, args.state_cap)
    session = InclusionSession(target, w, bounds, node_budget=args.node_budget)
    everything = range(1, len(w) + 1)
    try:
        if args.command == "axp":
            result = extract_axp(everything, target, w, bounds, session, _deadline(args))
            pattern = build_axp_pattern(result, w, bounds)
        else:
            result = extract_cxp(everything, target, w, bounds, session, _deadline(args))
            pattern = None if result is None else build_cxp_pattern(result, w, bounds)
    except BudgetExceeded as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_PARTIAL
    doc = {
        "word": str(w),
        "decision": "accept" if decision else "reject",
        "bounds": args.bounds,
        args.command: None if result is None else sorted(result),
        "pattern": None if pattern is None else pattern.render(),
        "inclusion_checks": session.checks,
    }
    if args.format == "json":
        print(json.dumps(doc, indent=2), file=out)
    elif result is None:
        print("no CXp: no replacement of any positions changes the decision", file=out)
    else:
        print(f"{args.command}: {_fmt_set(result)}  {pattern.render()}", file=out)
    return EXIT_OK


def cmd_ffa(args, out) -> int:
    a = load_automaton(args)
    w = _word(args, a)
    rep = explain(a, w, CLI_BOUNDS[args.bounds], _options(args), state_cap=args.state_cap)
    if args.format == "json":
        doc = {"word": str(w), "ffa": rep.to_dict()["ffa"], "complete": rep.complete}
        print(json.dumps(doc, indent=2), file=out)
    else:
        for i, v in sorted(rep.ffa.items()):
            print(f"{i}: {v}  ({float(v):.4f})", file=out)
    return EXIT_OK if rep.complete else EXIT_PARTIAL


def cmd_check(args, out) -> int:
    if (args.axp is None) == (args.cxp is None):
        raise _InputError("check needs exactly one of --axp or --cxp")
    a = load_automaton(args)
    w = _word(args, a)
    bounds = CLI_BOUNDS[args.bounds]
    _, target = decision_automaton(a, w, args.state_cap)
    session = InclusionSession(target, w, bounds, node_budget=args.node_budget)
    n = len(w)
    everything = frozenset(range(1, n + 1))
    kind = "axp" if args.axp is not None else "cxp"
    claim = index_set(_positions(args.axp if kind == "axp" else args.cxp), n)

    def holds(s):
        # weak AXp: fixing s keeps the decision; weak CXp: freeing s can flip it
        return session.included(everything - s) if kind == "axp" else not session.included(s)

    problems = []
    if not holds(claim):
        problems.append("the decision " + ("is not guaranteed" if kind == "axp" else "cannot change"))
    else:
        for i in sorted(claim):
            if holds(claim - {i}):
                problems.append(f"not minimal: position {i} can be dropped")
                break
    if problems:
        print(f"FAIL {kind} {_fmt_set(claim)}: {problems[0]}", file=out)
        return EXIT_INPUT
    print(f"OK {kind} {_fmt_set(claim)}", file=out)
    return EXIT_OK


def _seed(args) -> int:
    env = os.environ.get("FAX_SEED")
    return int(env) if env not in (None, "") else args.seed


def cmd_gen_maze(args, out) -> int:
    if args.list_sizes:
        for h, w in maze_sizes():
            print(f"{h}\t{w}", file=out)
        return EXIT_OK
    m = gen_maze(args.height, args.width, args.wall_prob, _seed(args))
    text = dumps_maze(m)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="", file=out)
    if args.automaton_out:
        dump(m.dfa, args.automaton_out)
    return EXIT_OK


def cmd_gen_corpus(args, out) -> int:
    spec = CorpusSpec(args.length, args.count, args.alphabet_size, _seed(args))
    inst = gen_corpus_automaton(spec, args.scale)
    text = dumps_corpus(inst)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        print(text, end="", file=out)
    if args.automaton_out:
        dump(inst.automaton, args.automaton_out)
    return EXIT_OK


# -- parser --

def _query_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--automaton-file", help="automaton in fax-automaton v1 format")
    src.add_argument("--regex", help="a single regular expression")
    src.add_argument("--regex-file", help="one regular expression per line; their union is used")
    p.add_argument("--alphabet", help="alphabet spec such as a-z, ACGT or a-h,A-H (regex input defaults "
                                      "to a-z plus literal characters of the regex and word)")
    p.add_argument("--word", help="the input word")
    p.add_argument("--bounds", choices=sorted(CLI_BOUNDS), default="1:1",
                   help="replacement length range for freed positions (default 1:1)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--timeout", type=float, default=600.0, help="time budget in seconds (default 600)")
    p.add_argument("--node-budget", type=int, help="cap on product nodes per inclusion check")
    p.add_argument("--state-cap", type=int, help="cap on states when determinizing for a rejected word")
    p.add_argument("-v", "--verbose", action="store_true", help="dump hitting-set clauses to stderr")
    return p


def _enum_flags(p):
    p.add_argument("--target", choices=["axp", "cxp"], default="axp", help="explanation kind to enumerate")
    p.add_argument("--warm-start", action="store_true", help="seed the search with all singleton CXps")
    p.add_argument("--minimum-hs", action="store_true", help="propose minimum-size candidates")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fax", description="Formal explanations for automaton decisions.")
    sub = parser.add_subparsers(dest="command", required=True)
    query = _query_parser()

    p = sub.add_parser("explain", parents=[query], help="enumerate all AXps and CXps")
    _enum_flags(p)
    p.add_argument("--timing", action="store_true", help="print one timing row instead of the report")
    p.add_argument("--words-file", help="batch mode: one word per line, prints timing rows")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --words-file")
    p.set_defaults(func=cmd_explain)

    for name, text in (("axp", "extract one AXp"), ("cxp", "extract one CXp")):
        p = sub.add_parser(name, parents=[query], help=text)
        p.set_defaults(func=cmd_single)

    p = sub.add_parser("ffa", parents=[query], help="feature attribution from all AXps")
    _enum_flags(p)
    p.set_defaults(func=cmd_ffa)

    p = sub.add_parser("check", parents=[query], help="verify a claimed explanation")
    p.add_argument("--axp", help="claimed AXp positions, e.g. '1,4'")
    p.add_argument("--cxp", help="claimed CXp positions")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("gen-maze", help="generate a maze benchmark instance")
    p.add_argument("--height", type=int, default=10)
    p.add_argument("--width", type=int, default=10)
    p.add_argument("--wall-prob", type=float, default=1 / 3)
    p.add_argument("--seed", type=int, default=0, help="overridden by FAX_SEED")
    p.add_argument("--out", help="write the maze here instead of stdout")
    p.add_argument("--automaton-out", help="also write the maze DFA")
    p.add_argument("--list-sizes", action="store_true", help="print the benchmark size sweep and exit")
    p.set_defaults(func=cmd_gen_maze)

    p = sub.add_parser("gen-corpus", help="generate a substring-corpus benchmark instance")
    p.add_argument("--length", type=int, default=5, help="member word length")
    p.add_argument("--count", type=int, default=1, help="number of member words")
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--scale", type=float, default=1.0, help="factor applied to the 100..1000 test lengths")
    p.add_argument("--seed", type=int, default=0, help="overridden by FAX_SEED")
    p.add_argument("--out")
    p.add_argument("--automaton-out")
    p.set_defaults(func=cmd_gen_corpus)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (FaxError, _InputError, ValueError, IndexError, OSError) as exc:
        print(f"fax: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
