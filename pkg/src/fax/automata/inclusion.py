"""Language inclusion ``L(chain) ⊆ L(A)`` with counterexample extraction.

The right-hand automaton is never determinized up front.  ``LazySubsets``
interns the epsilon-closed state subsets of ``A`` on demand, so the check is
an emptiness test on the product of the chain with the (implicit) complement
of ``A``: a violation is a chain-accepting pair whose subset holds no
accepting state.

A chain pattern is linear, so its product is layered by word position.
``InclusionSession`` keeps the subset layers of the last pattern it checked
and, for the next pattern, recomputes only from the first changed position
until the layers re-converge.  Extraction loops toggle one position at a
time, which makes most checks touch a short window of the word.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from ..errors import AlphabetMismatch, BudgetExceeded
from .core import Automaton, Word


class LazySubsets:
    """On-demand subset construction over an automaton."""

    def __init__(self, automaton: Automaton, max_subsets: int | None = None):
        self.automaton = automaton
        self.k = len(automaton.alphabet)
        self.max_subsets = max_subsets
        self._ids: dict[frozenset, int] = {}
        self.subsets: list[frozenset] = []
        self.accepting: list[bool] = []
        self._rows: list[tuple[int, ...] | None] = []
        self._succ: list[frozenset | None] = []
        self.start = self.intern(automaton.start())

    def __len__(self):
        return len(self.subsets)

    def intern(self, subset: frozenset) -> int:
        sid = self._ids.get(subset)
        if sid is None:
            if self.max_subsets is not None and len(self.subsets) >= self.max_subsets:
                raise BudgetExceeded(f"lazy subset construction exceeded {self.max_subsets} subsets")
            sid = len(self.subsets)
            self._ids[subset] = sid
            self.subsets.append(subset)
            self.accepting.append(not subset.isdisjoint(self.automaton.accepting))
            self._rows.append(None)
            self._succ.append(None)
        return sid

    def row(self, x: int) -> tuple[int, ...]:
        """Successor subset id for every symbol id."""
        r = self._rows[x]
        if r is None:
            a = self.automaton
            table = a._table()
            subset = self.subsets[x]
            if len(subset) == 1 and not a.epsilon_transitions:
                (q,) = subset
                r = tuple(self.intern(frozenset(t)) for t in table[q])
            else:
                targets = [set() for _ in range(self.k)]
                for q in subset:
                    for sym, t in enumerate(table[q]):
                        if t:
                            targets[sym].update(t)
                r = tuple(self.intern(a.closure(t)) for t in targets)
            self._rows[x] = r
        return r

    def successors(self, x: int) -> frozenset:
        """Distinct successors over all symbols (one full-alphabet step)."""
        s = self._succ[x]
        if s is None:
            s = frozenset(self.row(x))
            self._succ[x] = s
        return s


@dataclass(frozen=True)
class InclusionResult:
    """``counterexample`` is None exactly when the inclusion holds."""

    counterexample: Word | None = None

    @property
    def included(self) -> bool:
        return self.counterexample is None

    def __bool__(self):
        return self.included


INCLUDED = InclusionResult()


class InclusionSession:
    """Incremental inclusion checks of chain patterns over one word.

    All patterns checked through one session share the automaton, the word
    and the bounds; they differ only in which positions are free.
    """

    def __init__(self, automaton: Automaton, word: Word, bounds, node_budget: int | None = None,
                 lazy: LazySubsets | None = None):
        if word.alphabet != automaton.alphabet:
            raise AlphabetMismatch("word and automaton use different alphabets")
        self.automaton = automaton
        self.word = word
        self.bounds = bounds
        self.node_budget = node_budget
        self.lazy = lazy if lazy is not None and lazy.automaton is automaton else LazySubsets(automaton)
        self.checks = 0
        self._free: frozenset | None = None
        self._layers: list[frozenset] = []
        self._verdict = True

    def _advance(self, layer: frozenset, j: int, free_here: bool) -> frozenset:
        lazy = self.lazy
        if not free_here:
            c = self.word.symbols[j - 1]
            return frozenset(lazy.row(x)[c] for x in layer)
        lower, upper = self.bounds.lower, self.bounds.upper
        cur = layer
        for _ in range(lower):
            cur = frozenset().union(*(lazy.successors(x) for x in cur))
        if upper is None:
            seen = set(cur)
            stack = list(cur)
            while stack:
                for y in lazy.successors(stack.pop()):
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            return frozenset(seen)
        acc = set(cur)
        for _ in range(upper - lower):
            cur = frozenset().union(*(lazy.successors(x) for x in cur))
            acc |= cur
        return frozenset(acc)

    def included(self, free) -> bool:
        """True iff every word of the pattern freeing ``free`` is accepted."""
        free = frozenset(free)
        n = len(self.word)
        self.checks += 1
        accepting = self.lazy.accepting
        budget = self.node_budget
        spent = 0
        if self._free is None:
            layers = [frozenset([self.lazy.start])]
            for j in range(1, n + 1):
                layers.append(self._advance(layers[-1], j, j in free))
                spent += len(layers[-1])
                if budget is not None and spent > budget:
                    raise BudgetExceeded(f"inclusion check exceeded {budget} product nodes")
            self._layers = layers
            self._verdict = all(accepting[x] for x in layers[n])
            self._free = free
            return self._verdict
        diff = free ^ self._free
        if not diff:
            return self._verdict
        first, last = min(diff), max(diff)
        layers = self._layers
        layer = layers[first - 1]
        verdict = None
        for j in range(first, n + 1):
            layer = self._advance(layer, j, j in free)
            spent += len(layer)
            if budget is not None and spent > budget:
                # the cache is half-updated; drop it so the next call starts clean
                self._free = None
                raise BudgetExceeded(f"inclusion check exceeded {budget} product nodes")
            if j >= last and layer == layers[j]:
                verdict = self._verdict
                break
            layers[j] = layer
        if verdict is None:
            verdict = all(accepting[x] for x in layers[n])
        self._free = free
        self._verdict = verdict
        return verdict


def find_counterexample(automaton: Automaton, word: Word, free, bounds,
                        node_budget: int | None = None, lazy: LazySubsets | None = None) -> InclusionResult:
    """Witness-producing variant of the layered check.

    Keeps parent pointers through the product and returns a shortest
    counterexample; among equally short ones the search order (smaller
    distance first, then ascending symbol id) decides.
    """
    if word.alphabet != automaton.alphabet:
        raise AlphabetMismatch("word and automaton use different alphabets")
    if lazy is None or lazy.automaton is not automaton:
        lazy = LazySubsets(automaton)
    free = frozenset(free)
    k = lazy.k
    sub: list[int] = []
    parent: list[int] = []
    symbol: list[int] = []
    dist: list[int] = []

    def node(x, par, sym, d):
        if node_budget is not None and len(sub) >= node_budget:
            raise BudgetExceeded(f"inclusion check exceeded {node_budget} product nodes")
        sub.append(x)
        parent.append(par)
        symbol.append(sym)
        dist.append(d)
        return len(sub) - 1

    def ordered(layer):
        return sorted(layer.values(), key=lambda v: (dist[v], v))

    def step(layer, symbols_of):
        out: dict[int, int] = {}
        for v in ordered(layer):
            row = lazy.row(sub[v])
            for c in symbols_of:
                y = row[c]
                if y not in out or dist[out[y]] > dist[v] + 1:
                    out[y] = node(y, v, c, dist[v] + 1)
        return out

    def star(layer):
        out = dict(layer)
        heap = [(dist[v], v) for v in layer.values()]
        heapq.heapify(heap)
        while heap:
            d, v = heapq.heappop(heap)
            if out.get(sub[v]) != v:
                continue
            row = lazy.row(sub[v])
            for c in range(k):
                y = row[c]
                if y not in out or dist[out[y]] > d + 1:
                    out[y] = node(y, v, c, d + 1)
                    heapq.heappush(heap, (d + 1, out[y]))
        return out

    everything = range(k)
    layer = {lazy.start: node(lazy.start, -1, -1, 0)}
    for j, c in enumerate(word.symbols, start=1):
        if j not in free:
            layer = step(layer, (c,))
            continue
        for _ in range(bounds.lower):
            layer = step(layer, everything)
        if bounds.upper is None:
            layer = star(layer)
        else:
            acc = dict(layer)
            cur = layer
            for _ in range(bounds.upper - bounds.lower):
                cur = step(cur, everything)
                for y, v in cur.items():
                    if y not in acc or dist[acc[y]] > dist[v]:
                        acc[y] = v
            layer = acc
    bad = [v for v in ordered(layer) if not lazy.accepting[sub[v]]]
    if not bad:
        return INCLUDED
    v = bad[0]
    ids = []
    while v >= 0:
        if symbol[v] >= 0:
            ids.append(symbol[v])
        v = parent[v]
    return InclusionResult(Word(automaton.alphabet, tuple(reversed(ids))))


def is_included(chain, automaton: Automaton, node_budget: int | None = None) -> InclusionResult:
    """Check ``L(chain) ⊆ L(automaton)`` for a chain pattern."""
    return find_counterexample(automaton, chain.word, chain.free, chain.bounds, node_budget)


def language_included(left: Automaton, right: Automaton, node_budget: int | None = None) -> InclusionResult:
    """General ``L(left) ⊆ L(right)`` by BFS over (left state, right subset).

    Independent of the chain machinery, which makes it a cross-check for
    the layered search as well as a general-purpose utility.
    """
    if left.alphabet != right.alphabet:
        raise AlphabetMismatch("automata use different alphabets")
    lazy = LazySubsets(right)
    table = left._table()
    eps = left._eps_adjacency()
    k = lazy.k
    parents: dict[tuple[int, int], tuple | None] = {}
    queue: deque = deque()
    for q in sorted(left.initial):
        key = (q, lazy.start)
        if key not in parents:
            parents[key] = None
            queue.append(key)
    while queue:
        q, x = key = queue.popleft()
        if q in left.accepting and not lazy.accepting[x]:
            ids = []
            while parents[key] is not None:
                key, sym = parents[key]
                if sym >= 0:
                    ids.append(sym)
            return InclusionResult(Word(left.alphabet, tuple(reversed(ids))))
        for r in eps[q]:
            nxt = (r, x)
            if nxt not in parents:
                parents[nxt] = (key, -1)
                queue.appendleft(nxt)
        row = None
        for c in range(k):
            targets = table[q][c]
            if not targets:
                continue
            if row is None:
                row = lazy.row(x)
            for r in targets:
                nxt = (r, row[c])
                if nxt not in parents:
                    if node_budget is not None and len(parents) >= node_budget:
                        raise BudgetExceeded(f"inclusion check exceeded {node_budget} product nodes")
                    parents[nxt] = (key, c)
                    queue.append(nxt)
    return INCLUDED
