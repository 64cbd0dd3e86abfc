"""Reading and writing the ``fax-automaton v1`` text format.

::

    fax-automaton v1
    alphabet: a,b
    states: 3
    initial: 0
    accepting: 2
    0 a 1
    1 a-b 2
    0 @eps 2

Symbol names containing whitespace, ``,``, ``-``, ``\\``, ``@`` or ``#`` are
written with ``\\xHH`` / ``\\uHHHH`` escapes.  Transitions are emitted in the
canonical order of ``Automaton.transitions``, so dump/load round-trips
exactly.
"""

from __future__ import annotations

import re
from pathlib import Path

from ..errors import FormatError
from .core import Alphabet, Automaton

HEADER = "fax-automaton v1"
_UNSAFE = set(" \t\r\n\f\v,-\\@#")
_ESCAPE_RE = re.compile(r"\\x([0-9a-fA-F]{2})|\\u([0-9a-fA-F]{4})")


def _escape(name: str) -> str:
    out = []
    for ch in name:
        if ch in _UNSAFE or not ch.isprintable():
            code = ord(ch)
            out.append(f"\\x{code:02x}" if code < 256 else f"\\u{code:04x}")
        else:
            out.append(ch)
    return "".join(out)


def _unescape(text: str) -> str:
    return _ESCAPE_RE.sub(lambda m: chr(int(m.group(1) or m.group(2), 16)), text)


def dumps(a: Automaton) -> str:
    names = a.alphabet.symbols
    lines = [
        HEADER,
        "alphabet: " + ",".join(_escape(s) for s in names),
        f"states: {a.state_count}",
        "initial: " + " ".join(map(str, sorted(a.initial))),
        "accepting: " + " ".join(map(str, sorted(a.accepting))),
    ]
    for src, ranges, dst in a.transitions:
        for lo, hi in ranges:
            label = _escape(names[lo]) if lo == hi else f"{_escape(names[lo])}-{_escape(names[hi])}"
            lines.append(f"{src} {label} {dst}")
    for src, dst in a.epsilon_transitions:
        lines.append(f"{src} @eps {dst}")
    return "\n".join(lines) + "\n"


def _ints(value: str, lineno: int) -> list[int]:
    try:
        return [int(v) for v in value.split()]
    except ValueError:
        raise FormatError(f"expected state ids, got {value!r}", lineno) from None


def loads(text: str) -> Automaton:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), 1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines or lines[0][1] != HEADER:
        raise FormatError(f"missing header {HEADER!r}", lines[0][0] if lines else 1)
    fields: dict[str, tuple[int, str]] = {}
    body = []
    for lineno, ln in lines[1:]:
        key, sep, value = ln.partition(":")
        if sep and key in ("alphabet", "states", "initial", "accepting"):
            fields[key] = (lineno, value.strip())
        else:
            body.append((lineno, ln))
    for key in ("alphabet", "states", "initial", "accepting"):
        if key not in fields:
            raise FormatError(f"missing '{key}:' line")
    alphabet = Alphabet(_unescape(s) for s in fields["alphabet"][1].split(","))
    try:
        state_count = int(fields["states"][1])
    except ValueError:
        raise FormatError("bad state count", fields["states"][0]) from None
    initial = _ints(fields["initial"][1], fields["initial"][0])
    accepting = _ints(fields["accepting"][1], fields["accepting"][0])
    transitions, epsilon = [], []
    for lineno, ln in body:
        parts = ln.split()
        if len(parts) != 3:
            raise FormatError(f"expected 'src label dst', got {ln!r}", lineno)
        try:
            src, dst = int(parts[0]), int(parts[2])
        except ValueError:
            raise FormatError(f"bad state id in {ln!r}", lineno) from None
        label = parts[1]
        if label == "@eps":
            epsilon.append((src, dst))
            continue
        lo_name, dash, hi_name = label.partition("-")
        try:
            lo = alphabet.id(_unescape(lo_name))
            hi = alphabet.id(_unescape(hi_name)) if dash else lo
        except KeyError as exc:
            raise FormatError(str(exc), lineno) from None
        except ValueError as exc:
            raise FormatError(str(exc), lineno) from None
        if hi < lo:
            raise FormatError(f"empty range {label!r}", lineno)
        transitions.append((src, [(lo, hi)], dst))
    try:
        return Automaton(alphabet, state_count, frozenset(initial), frozenset(accepting), transitions, epsilon)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load(path) -> Automaton:
    return loads(Path(path).read_text(encoding="utf-8"))


def dump(a: Automaton, path) -> None:
    Path(path).write_text(dumps(a), encoding="utf-8")
