"""Regex parsing and Thompson construction.

Supported syntax, loosest binding first: alternation ``|``, concatenation,
postfix ``* + ?`` and counted repetition ``{m}``, ``{m,}``, ``{m,n}``.
Atoms are literals, ``\\``-escapes (``\\xHH``, ``\\n``, ``\\t``, ``\\d``,
``\\s``, ``\\w`` and their negations), classes ``[a-cx]`` / ``[^...]``,
groups ``(...)`` and ``<name>`` for multi-character symbol names.  ``.`` is
rejected on purpose: write the class you mean.
"""

from __future__ import annotations

from ..errors import RegexError, UnknownSymbol
from .core import Alphabet, Automaton, to_ranges

_SPECIAL = set("()|*+?[]{}\\.<>")
_MAX_REPEAT = 1000

_CLASS_ESCAPES = {
    "d": lambda c: c.isdigit() and c.isascii(),
    "s": lambda c: c in " \t\n\r\f\v",
    "w": lambda c: (c.isalnum() and c.isascii()) or c == "_",
}
_CHAR_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "f": "\f", "v": "\v", "0": "\0"}


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet

    def error(self, msg, pos=None):
        return RegexError(msg, self.pos if pos is None else pos)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self):
        ch = self.peek()
        if ch is None:
            raise self.error("unexpected end of pattern")
        self.pos += 1
        return ch

    def parse(self):
        node = self.alternation()
        if self.pos != len(self.text):
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def alternation(self):
        branches = [self.concatenation()]
        while self.peek() == "|":
            self.pos += 1
            branches.append(self.concatenation())
        return branches[0] if len(branches) == 1 else ("alt", branches)

    def concatenation(self):
        parts = []
        while self.peek() is not None and self.peek() not in "|)":
            parts.append(self.repetition())
        if not parts:
            return ("eps",)
        return parts[0] if len(parts) == 1 else ("cat", parts)

    def repetition(self):
        node = self.atom()
        while True:
            ch = self.peek()
            if ch == "*":
                node = ("star", node)
            elif ch == "+":
                node = ("plus", node)
            elif ch == "?":
                node = ("opt", node)
            elif ch == "{":
                node = ("rep", node, *self.counts())
                continue
            else:
                return node
            self.pos += 1

    def counts(self):
        start = self.pos
        self.pos += 1
        close = self.text.find("}", self.pos)
        if close < 0:
            raise self.error("unterminated repetition count", start)
        body = self.text[self.pos:close]
        lo_s, sep, hi_s = body.partition(",")
        try:
            lo = int(lo_s)
            hi = lo if not sep else (None if hi_s.strip() == "" else int(hi_s))
        except ValueError:
            raise self.error(f"bad repetition count {{{body}}}", start) from None
        if lo < 0 or (hi is not None and hi < lo) or max(lo, hi or 0) > _MAX_REPEAT:
            raise self.error(f"bad repetition count {{{body}}}", start)
        self.pos = close + 1
        return lo, hi

    def atom(self):
        start = self.pos
        ch = self.take()
        if ch == "(":
            node = self.alternation()
            if self.peek() != ")":
                raise self.error("missing ')'", start)
            self.pos += 1
            return node
        if ch == "[":
            return ("lit", self.char_class(start))
        if ch == "\\":
            return ("lit", self.escape(start))
        if ch == "<":
            close = self.text.find(">", self.pos)
            if close < 0:
                raise self.error("unterminated symbol name", start)
            name = self.text[self.pos:close]
            self.pos = close + 1
            return ("lit", {self.symbol(name, start)})
        if ch == ".":
            raise self.error("'.' is not supported; use an explicit class", start)
        if ch in _SPECIAL:
            raise self.error(f"unexpected {ch!r}", start)
        return ("lit", {self.symbol(ch, start)})

    def symbol(self, name, pos):
        sid = self.alphabet.index.get(name)
        if sid is None:
            raise UnknownSymbol(name, pos)
        return sid

    def ids_where(self, pred):
        return {i for i, s in enumerate(self.alphabet.symbols) if len(s) == 1 and pred(s)}

    def escape(self, start):
        ch = self.take()
        if ch == "x":
            hexits = self.text[self.pos:self.pos + 2]
            if len(hexits) != 2:
                raise self.error("truncated \\x escape", start)
            try:
                lit = chr(int(hexits, 16))
            except ValueError:
                raise self.error("bad \\x escape", start) from None
            self.pos += 2
        elif ch.lower() in _CLASS_ESCAPES:
            pred = _CLASS_ESCAPES[ch.lower()]
            ids = self.ids_where(pred)
            if ch.isupper():
                ids = set(range(len(self.alphabet))) - ids
            return ids
        else:
            lit = _CHAR_ESCAPES.get(ch, ch)
        return {self.symbol(lit, start)}

    def char_class(self, start):
        negate = self.peek() == "^"
        if negate:
            self.pos += 1
        ids: set[int] = set()
        first = True
        while True:
            ch = self.peek()
            if ch is None:
                raise self.error("missing ']'", start)
            if ch == "]" and not first:
                self.pos += 1
                break
            first = False
            item_pos = self.pos
            self.pos += 1
            if ch == "\\":
                got = self.escape(item_pos)
                if len(got) != 1 or self.peek() != "-":
                    ids |= got
                    continue
                lo_char = self.alphabet.name(next(iter(got)))
            else:
                lo_char = ch
            if self.peek() == "-" and self.pos + 1 < len(self.text) and self.text[self.pos + 1] != "]":
                self.pos += 1
                hi_char = self.take()
                if hi_char == "\\":
                    hi_char = self.alphabet.name(next(iter(self.escape(self.pos - 1))))
                if ord(hi_char) < ord(lo_char):
                    raise self.error(f"empty range {lo_char}-{hi_char}", item_pos)
                ids |= self.ids_where(lambda c, lo=lo_char, hi=hi_char: lo <= c <= hi)
            else:
                ids.add(self.symbol(lo_char, item_pos))
        if negate:
            ids = set(range(len(self.alphabet))) - ids
        if not ids:
            raise self.error("character class matches no symbol of the alphabet", start)
        return ids


def parse_regex(text: str, alphabet: Alphabet):
    """Parse into a small tuple AST (mostly useful for tests and tooling)."""
    return _Parser(text, alphabet).parse()


class _Builder:
    def __init__(self):
        self.count = 0
        self.transitions: list = []
        self.epsilon: list = []

    def state(self):
        self.count += 1
        return self.count - 1

    def build(self, node):
        kind = node[0]
        if kind == "lit":
            s, e = self.state(), self.state()
            self.transitions.append((s, to_ranges(node[1]), e))
            return s, e
        if kind == "eps":
            s, e = self.state(), self.state()
            self.epsilon.append((s, e))
            return s, e
        if kind == "cat":
            first_s, prev_e = self.build(node[1][0])
            for part in node[1][1:]:
                s, e = self.build(part)
                self.epsilon.append((prev_e, s))
                prev_e = e
            return first_s, prev_e
        if kind == "alt":
            s, e = self.state(), self.state()
            for branch in node[1]:
                bs, be = self.build(branch)
                self.epsilon += [(s, bs), (be, e)]
            return s, e
        if kind in ("star", "plus", "opt"):
            s, e = self.state(), self.state()
            fs, fe = self.build(node[1])
            self.epsilon += [(s, fs), (fe, e)]
            if kind != "plus":
                self.epsilon.append((s, e))
            if kind != "opt":
                self.epsilon.append((fe, fs))
            return s, e
        if kind == "rep":
            _, sub, lo, hi = node
            parts = [sub] * lo
            if hi is None:
                parts.append(("star", sub))
            else:
                parts.extend([("opt", sub)] * (hi - lo))
            return self.build(("cat", parts) if parts else ("eps",))
        raise AssertionError(kind)


def regex_to_nfa(text: str, alphabet: Alphabet) -> Automaton:
    """Thompson NFA for ``text``; state count is linear in the pattern size."""
    ast = parse_regex(text, alphabet)
    b = _Builder()
    s, e = b.build(ast)
    return Automaton(alphabet, b.count, frozenset([s]), frozenset([e]), b.transitions, b.epsilon)
