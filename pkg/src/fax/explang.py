"""Candidate explanation patterns over a word.

A pattern keeps some positions of ``w`` fixed and frees the others; a free
position matches any string whose length lies in the global bounds
``lower..upper``.  AXp-style patterns are built from the set of fixed
positions, CXp-style patterns from the set of freed ones.  Positions are
1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .automata.core import Automaton, Word

IndexSet = frozenset  # of 1-based positions


def index_set(positions: Iterable[int], n: int) -> frozenset:
    """Validated position set within ``1..n``."""
    s = frozenset(positions)
    for i in s:
        if not isinstance(i, int) or not (1 <= i <= n):
            raise IndexError(f"position {i!r} outside 1..{n}")
    return s


@dataclass(frozen=True)
class Bounds:
    """Replacement length range; ``upper=None`` means unbounded."""

    lower: int = 1
    upper: int | None = 1

    def __post_init__(self):
        if not (0 <= self.lower <= 1):
            raise ValueError("lower bound must be 0 or 1")
        if self.upper is not None and self.upper < 1:
            raise ValueError("upper bound must be at least 1")

    @classmethod
    def parse(cls, text: str) -> "Bounds":
        lo, sep, hi = text.partition(":")
        if not sep:
            raise ValueError(f"bounds must look like 'l:u', got {text!r}")
        upper = None if hi.strip().lower() in ("inf", "∞", "") else int(hi)
        return cls(int(lo), upper)

    def contains(self, other: "Bounds") -> bool:
        """True when ``other``'s interval lies inside this one."""
        if other.lower < self.lower:
            return False
        if self.upper is None:
            return True
        return other.upper is not None and other.upper <= self.upper

    @property
    def mark(self) -> str:
        if (self.lower, self.upper) == (1, 1):
            return "."
        if (self.lower, self.upper) == (1, None):
            return "+"
        if (self.lower, self.upper) == (0, None):
            return "*"
        return f".{{{self.lower},{self.upper}}}"

    def __str__(self):
        return f"{self.lower}:{'inf' if self.upper is None else self.upper}"


SINGLE = Bounds(1, 1)
NONEMPTY = Bounds(1, None)
ANY = Bounds(0, None)
CLI_BOUNDS = {"1:1": SINGLE, "1:inf": NONEMPTY, "0:inf": ANY}


@dataclass(frozen=True)
class ChainPattern:
    word: Word
    free: frozenset
    bounds: Bounds = SINGLE

    def __post_init__(self):
        object.__setattr__(self, "free", index_set(self.free, len(self.word)))

    @property
    def fixed(self) -> frozenset:
        return frozenset(range(1, len(self.word) + 1)) - self.free

    def render(self) -> str:
        """Fixed symbols verbatim, free positions as ``.``, ``+`` or ``*``."""
        names = self.word.alphabet.symbols
        mark = self.bounds.mark
        parts = [mark if i in self.free else names[s] for i, s in enumerate(self.word.symbols, 1)]
        sep = "" if self.word.alphabet.single_char else " "
        return sep.join(parts)

    def __str__(self):
        return self.render()


def build_axp_pattern(S: Iterable[int], w: Word, b: Bounds = SINGLE) -> ChainPattern:
    """Pattern fixing exactly the positions in ``S``."""
    S = index_set(S, len(w))
    return ChainPattern(w, frozenset(range(1, len(w) + 1)) - S, b)


def build_cxp_pattern(S: Iterable[int], w: Word, b: Bounds = SINGLE) -> ChainPattern:
    """Pattern freeing exactly the positions in ``S``."""
    return ChainPattern(w, index_set(S, len(w)), b)


def toggle_position(p: ChainPattern, i: int, make_free: bool) -> ChainPattern:
    if not (1 <= i <= len(p.word)):
        raise IndexError(f"position {i} outside 1..{len(p.word)}")
    free = p.free | {i} if make_free else p.free - {i}
    return ChainPattern(p.word, free, p.bounds)


def chain_to_automaton(p: ChainPattern) -> Automaton:
    """Chain NFA ``q0 .. qn``; finite ``upper > 1`` adds intermediate states.

    Fixed position i: ``q(i-1) -w[i]-> q(i)``.  Free position: ``lower``
    mandatory full-alphabet steps, then either a full-alphabet self-loop on
    ``q(i)`` (unbounded) or ``upper - lower`` optional steps.  With bounds
    0..∞ the mandatory part is an epsilon edge.
    """
    w = p.word
    full = [(0, len(w.alphabet) - 1)]
    n = len(w)
    count = n + 1
    transitions = []
    epsilon = []
    lower, upper = p.bounds.lower, p.bounds.upper
    for i in range(1, n + 1):
        src, dst = i - 1, i
        if i not in p.free:
            transitions.append((src, [w.symbols[i - 1]], dst))
            continue
        if upper is None:
            if lower == 0:
                epsilon.append((src, dst))
            else:
                transitions.append((src, full, dst))
            transitions.append((dst, full, dst))
            continue
        # walk `upper` steps; every stop at depth >= lower may exit to dst
        cur = src
        for depth in range(1, upper + 1):
            if depth == upper:
                nxt = dst
            else:
                nxt = count
                count += 1
            transitions.append((cur, full, nxt))
            if depth >= lower and nxt != dst:
                epsilon.append((nxt, dst))
            cur = nxt
        if lower == 0:
            epsilon.append((src, dst))
    return Automaton(w.alphabet, count, frozenset([0]), frozenset([n]), transitions, epsilon)
