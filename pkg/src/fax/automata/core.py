"""Alphabets, words and finite automata over interned symbol ids.

Symbols are interned to dense integer ids.  Transition labels are stored as
sorted, disjoint, non-adjacent inclusive ranges of ids, so ``[c-z]`` costs
one range regardless of how many symbols it spans.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import (
    AlphabetError,
    AlphabetMismatch,
    NotDeterministic,
    StateExplosion,
    UnknownSymbol,
)

Ranges = tuple[tuple[int, int], ...]


class Alphabet:
    """Ordered, duplicate-free list of symbol names."""

    __slots__ = ("symbols", "index", "_single")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        if not symbols:
            raise AlphabetError("alphabet must not be empty")
        index = {}
        for i, s in enumerate(symbols):
            if not isinstance(s, str) or not s:
                raise AlphabetError(f"invalid symbol name {s!r}")
            if s in index:
                raise AlphabetError(f"duplicate symbol {s!r}")
            index[s] = i
        self.symbols = symbols
        self.index = index
        self._single = all(len(s) == 1 for s in symbols)

    @classmethod
    def from_spec(cls, spec: str) -> "Alphabet":
        """Parse ``a-z``, ``ACGT``, ``a-h,A-H`` or ``up,down,left``."""
        spec = spec.strip()
        if not spec:
            raise AlphabetError("empty alphabet spec")
        items = spec.split(",") if "," in spec else [spec]
        out: list[str] = []
        for item in items:
            item = item.strip()
            if len(item) == 3 and item[1] == "-":
                lo, hi = ord(item[0]), ord(item[2])
                if lo > hi:
                    raise AlphabetError(f"empty range {item!r}")
                out.extend(chr(c) for c in range(lo, hi + 1))
            elif "," not in spec and len(items) == 1:
                out.extend(item)
            else:
                out.append(item)
        return cls(dict.fromkeys(out))

    @property
    def single_char(self) -> bool:
        return self._single

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({','.join(self.symbols)!r})"

    def id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownSymbol(name) from None

    def name(self, sid: int) -> str:
        return self.symbols[sid]

    def encode(self, text: str | Sequence[str]) -> tuple[int, ...]:
        """Map a string (single-char alphabets) or token list to ids."""
        if isinstance(text, str) and not self._single:
            tokens = text.replace(",", " ").split()
        else:
            tokens = text
        ids = []
        for pos, tok in enumerate(tokens):
            sid = self.index.get(tok)
            if sid is None:
                raise UnknownSymbol(tok, pos + 1)
            ids.append(sid)
        return tuple(ids)

    def decode(self, ids: Iterable[int]) -> str:
        sep = "" if self._single else " "
        return sep.join(self.symbols[i] for i in ids)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    symbols: tuple[int, ...]

    def __post_init__(self):
        k = len(self.alphabet)
        for pos, s in enumerate(self.symbols):
            if not (0 <= s < k):
                raise UnknownSymbol(s, pos + 1)

    @classmethod
    def parse(cls, alphabet: Alphabet, text: str | Sequence[str]) -> "Word":
        return cls(alphabet, alphabet.encode(text))

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __str__(self):
        return self.alphabet.decode(self.symbols)

    def __repr__(self):
        return f"Word({str(self)!r})"


def to_ranges(ids: Iterable[int]) -> Ranges:
    """Canonical sorted, merged ranges for a set of ids."""
    out: list[list[int]] = []
    for i in sorted(set(ids)):
        if out and out[-1][1] + 1 == i:
            out[-1][1] = i
        else:
            out.append([i, i])
    return tuple((lo, hi) for lo, hi in out)


def range_ids(ranges: Ranges):
    for lo, hi in ranges:
        yield from range(lo, hi + 1)


def _normalize_label(label) -> Ranges:
    if isinstance(label, int):
        return ((label, label),)
    ids = []
    for item in label:
        if isinstance(item, tuple):
            lo, hi = item
            ids.extend(range(lo, hi + 1))
        else:
            ids.append(item)
    return to_ranges(ids)


@dataclass(frozen=True)
class Automaton:
    """Immutable finite automaton; transitions are ``(src, ranges, dst)``.

    The constructor canonicalizes labels (all labels between the same pair of
    states are merged) and derives the ``deterministic`` flag from structure.
    """

    alphabet: Alphabet
    state_count: int
    initial: frozenset
    accepting: frozenset
    transitions: tuple = ()
    epsilon_transitions: tuple = ()
    deterministic: bool = field(init=False)
    _cache: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = self.state_count
        if n < 1:
            raise ValueError("an automaton needs at least one state")
        initial = frozenset(self.initial)
        accepting = frozenset(self.accepting)
        for q in initial | accepting:
            if not (0 <= q < n):
                raise ValueError(f"state {q} out of range")
        merged: dict[tuple[int, int], set[int]] = {}
        k = len(self.alphabet)
        for src, label, dst in self.transitions:
            if not (0 <= src < n and 0 <= dst < n):
                raise ValueError(f"transition {src}->{dst} out of range")
            ranges = _normalize_label(label)
            if not ranges:
                raise ValueError(f"empty label on {src}->{dst}")
            if ranges[0][0] < 0 or ranges[-1][1] >= k:
                raise UnknownSymbol(ranges[-1][1])
            merged.setdefault((src, dst), set()).update(range_ids(ranges))
        trans = sorted(
            ((s, to_ranges(ids), d) for (s, d), ids in merged.items()),
            key=lambda t: (t[0], t[1][0][0], t[2]),
        )
        eps = sorted(set((s, d) for s, d in self.epsilon_transitions if s != d))
        for s, d in eps:
            if not (0 <= s < n and 0 <= d < n):
                raise ValueError(f"epsilon {s}->{d} out of range")
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "accepting", accepting)
        object.__setattr__(self, "transitions", tuple(trans))
        object.__setattr__(self, "epsilon_transitions", tuple(eps))
        object.__setattr__(self, "_cache", {})
        object.__setattr__(self, "deterministic", self._check_deterministic())

    def _check_deterministic(self) -> bool:
        if len(self.initial) != 1 or self.epsilon_transitions:
            return False
        seen: dict[int, set[int]] = {}
        for src, ranges, _ in self.transitions:
            used = seen.setdefault(src, set())
            for sid in range_ids(ranges):
                if sid in used:
                    return False
                used.add(sid)
        return True

    # -- derived tables (lazily built, never mutate the language) --

    def _table(self):
        """Per state: dense list symbol -> tuple of targets."""
        table = self._cache.get("table")
        if table is None:
            k = len(self.alphabet)
            rows = [[() for _ in range(k)] for _ in range(self.state_count)]
            for src, ranges, dst in self.transitions:
                row = rows[src]
                for sid in range_ids(ranges):
                    row[sid] = row[sid] + (dst,)
            table = [tuple(r) for r in rows]
            self._cache["table"] = table
        return table

    def _eps_adjacency(self):
        adj = self._cache.get("eps")
        if adj is None:
            adj = [[] for _ in range(self.state_count)]
            for s, d in self.epsilon_transitions:
                adj[s].append(d)
            self._cache["eps"] = adj
        return adj

    def closure(self, states: Iterable[int]) -> frozenset:
        if not self.epsilon_transitions:
            return frozenset(states)
        adj = self._eps_adjacency()
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for r in adj[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)

    def step(self, states: Iterable[int], sid: int) -> frozenset:
        table = self._table()
        out = set()
        for q in states:
            out.update(table[q][sid])
        return self.closure(out)

    def start(self) -> frozenset:
        return self.closure(self.initial)

    def is_complete(self) -> bool:
        if not self.deterministic:
            return False
        table = self._table()
        return all(all(cell for cell in row) for row in table)

    def delta(self, q: int, sid: int) -> int | None:
        """Successor in a deterministic automaton (None when undefined)."""
        targets = self._table()[q][sid]
        return targets[0] if targets else None


def accepts(a: Automaton, w: Word) -> bool:
    if w.alphabet != a.alphabet:
        raise AlphabetMismatch("word and automaton use different alphabets")
    current = a.start()
    for sid in w.symbols:
        if not current:
            return False
        current = a.step(current, sid)
    return not current.isdisjoint(a.accepting)


def accepts_ids(a: Automaton, ids: Iterable[int]) -> bool:
    current = a.start()
    for sid in ids:
        current = a.step(current, sid)
    return not current.isdisjoint(a.accepting)


def determinize(a: Automaton, state_cap: int | None = None) -> Automaton:
    """Reachable-subset construction; the result is complete.

    Already-deterministic input is returned completed, keeping its state
    numbering.
    """
    if a.deterministic:
        return complete(a)
    k = len(a.alphabet)
    start = a.start()
    ids = {start: 0}
    order = [start]
    transitions = []
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        src = ids[subset]
        by_target: dict[frozenset, list[int]] = {}
        for sid in range(k):
            by_target.setdefault(a.step(subset, sid), []).append(sid)
        for target, syms in by_target.items():
            if target not in ids:
                if state_cap is not None and len(ids) >= state_cap:
                    raise StateExplosion(state_cap)
                ids[target] = len(order)
                order.append(target)
                queue.append(target)
            transitions.append((src, syms, ids[target]))
    accepting = [i for i, s in enumerate(order) if not s.isdisjoint(a.accepting)]
    return Automaton(a.alphabet, len(order), frozenset([0]), frozenset(accepting), transitions)


def complete(a: Automaton) -> Automaton:
    """Total transition function; adds one non-accepting sink if needed."""
    if not a.deterministic:
        raise NotDeterministic("complete() needs a deterministic automaton")
    k = len(a.alphabet)
    table = a._table()
    missing = []
    for q in range(a.state_count):
        gaps = [sid for sid in range(k) if not table[q][sid]]
        if gaps:
            missing.append((q, gaps))
    if not missing:
        return a
    sink = a.state_count
    transitions = list(a.transitions)
    transitions.extend((q, gaps, sink) for q, gaps in missing)
    transitions.append((sink, [(0, k - 1)], sink))
    return Automaton(a.alphabet, a.state_count + 1, a.initial, a.accepting, transitions)


def complement(a: Automaton) -> Automaton:
    if not a.deterministic:
        raise NotDeterministic("complement() needs a deterministic automaton; determinize first")
    c = complete(a)
    flipped = frozenset(range(c.state_count)) - c.accepting
    return Automaton(c.alphabet, c.state_count, c.initial, flipped, c.transitions)


def union(automata: Sequence[Automaton]) -> Automaton:
    """Disjoint union under a fresh initial state with one epsilon per part."""
    if not automata:
        raise ValueError("union of no automata")
    alphabet = automata[0].alphabet
    transitions = []
    epsilon = []
    accepting = []
    offset = 1
    for part in automata:
        if part.alphabet != alphabet:
            raise AlphabetMismatch("union operands use different alphabets")
        for q in part.initial:
            epsilon.append((0, q + offset))
        accepting.extend(q + offset for q in part.accepting)
        transitions.extend((s + offset, r, d + offset) for s, r, d in part.transitions)
        epsilon.extend((s + offset, d + offset) for s, d in part.epsilon_transitions)
        offset += part.state_count
    return Automaton(alphabet, offset, frozenset([0]), frozenset(accepting), transitions, epsilon)


def universal(alphabet: Alphabet) -> Automaton:
    """One accepting state looping on every symbol (the language Σ*)."""
    return Automaton(alphabet, 1, frozenset([0]), frozenset([0]), [(0, [(0, len(alphabet) - 1)], 0)])
