"""Exact hitting-set candidate generation with up-set blocking.

``HittingSetProblem`` holds two clause families over positions ``1..n``:

* sets to hit: every candidate must intersect each of them;
* blocked sets: no candidate may contain any of them.

Candidates are ordered by cardinality, then lexicographically by their
sorted position sequence.  ``next_minimal`` finds that candidate with a
DPLL-style search (ascending decisions, include-first, propagation on both
clause families) under an iteratively deepened cardinality limit, then
shrinks it by element drop.  ``next_minimum`` reaches the same answer by an
independent branch-and-bound that branches on unhit clauses, so the two
engines can cross-check each other.
"""

from __future__ import annotations

import sys
import time
from typing import Iterable

from .errors import BudgetExceeded, InvalidDual

_CLOCK_EVERY = 512  # search nodes between deadline checks


class _Clock:
    def __init__(self, deadline: float | None):
        self.deadline = deadline
        self.nodes = 0

    def tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded("time budget exhausted during candidate search")


class HittingSetProblem:
    def __init__(self, universe_size: int):
        if universe_size < 0:
            raise ValueError("universe size must be non-negative")
        self.universe_size = universe_size
        self.to_hit: list[frozenset] = []
        self.blocked: list[frozenset] = []
        # constraints are only ever added, so the smallest admissible size never drops
        self._floor = 0

    def _check(self, s: Iterable[int]) -> frozenset:
        s = frozenset(s)
        for i in s:
            if not (1 <= i <= self.universe_size):
                raise IndexError(f"position {i} outside 1..{self.universe_size}")
        return s

    def add_set_to_hit(self, d: Iterable[int]) -> "HittingSetProblem":
        d = self._check(d)
        if not d:
            raise InvalidDual("cannot add an empty set to hit")
        self.to_hit.append(d)
        return self

    def block_upset(self, t: Iterable[int]) -> "HittingSetProblem":
        self.blocked.append(self._check(t))
        return self

    # -- shared helpers --

    def _admissible(self, cand: frozenset) -> bool:
        return all(cand & d for d in self.to_hit) and not any(t <= cand for t in self.blocked)

    def _shrink(self, cand: frozenset) -> frozenset:
        for i in sorted(cand):
            smaller = cand - {i}
            if all(smaller & d for d in self.to_hit):
                cand = smaller
        return cand

    def _relevant_blocked(self, universe: frozenset) -> list[frozenset] | None:
        """Blocked sets that a candidate drawn from ``universe`` could contain.

        Returns None when the empty set is blocked (nothing is admissible).
        """
        out = []
        for t in self.blocked:
            if not t:
                return None
            if t <= universe:
                out.append(t)
        return out

    def dump(self) -> str:
        """Clause listing used by the CLI's verbose mode."""
        lines = [f"c universe 1..{self.universe_size}"]
        lines += ["hit " + " ".join(map(str, sorted(d))) for d in self.to_hit]
        lines += ["block " + " ".join(map(str, sorted(t))) for t in self.blocked]
        return "\n".join(lines)

    # -- MinimalHS --

    def next_minimal(self, deadline: float | None = None) -> frozenset | None:
        universe = frozenset().union(*self.to_hit)
        blocked = self._relevant_blocked(universe)
        if blocked is None:
            return None
        if not self.to_hit:
            return frozenset() if not blocked else None
        order = sorted(universe)
        clauses = [sorted(d) for d in self.to_hit]
        clock = _Clock(deadline)
        # the search recurses once per universe element
        sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * len(order) + 200))
        for limit in range(max(1, self._floor), len(order) + 1):
            found = _DpllSearch(order, clauses, blocked, limit, clock).run()
            if found is not None:
                found = self._shrink(found)
                self._floor = len(found)
                return found
        return None

    # -- MinimumHS --

    def next_minimum(self, deadline: float | None = None) -> frozenset | None:
        universe = frozenset().union(*self.to_hit)
        blocked = self._relevant_blocked(universe)
        if blocked is None:
            return None
        if not self.to_hit:
            return frozenset() if not blocked else None
        found = _BranchAndBound(self.to_hit, blocked, _Clock(deadline)).run()
        if found is not None:
            self._floor = len(found)
        return found


class _DpllSearch:
    """Lexicographically first admissible hitting set of size <= limit.

    Decisions run over ``order`` ascending, trying "include" before
    "exclude", which enumerates equal-size sets in lexicographic order of
    their sorted positions.
    """

    def __init__(self, order, clauses, blocked, limit, clock):
        self.clock = clock
        self.order = order
        self.limit = limit
        self.clauses = clauses
        self.blocked = blocked
        self.occurs: dict[int, list[int]] = {i: [] for i in order}
        for ci, c in enumerate(clauses):
            for i in c:
                self.occurs[i].append(ci)
        self.in_blocked: dict[int, list[int]] = {i: [] for i in order}
        for bi, t in enumerate(blocked):
            for i in t:
                self.in_blocked[i].append(bi)
        # per clause: number of still-possible elements; hit count
        self.possible = [len(c) for c in clauses]
        self.hits = [0] * len(clauses)
        # per blocked set: number of members not yet chosen
        self.missing = [len(t) for t in blocked]

    def run(self) -> frozenset | None:
        chosen: list[int] = []
        if self._search(0, chosen):
            return frozenset(chosen)
        return None

    def _lower_bound(self, idx: int) -> int:
        """Greedy count of pairwise-disjoint unhit clauses (over undecided positions)."""
        used: set[int] = set()
        count = 0
        pos_floor = self.order[idx] if idx < len(self.order) else None
        for ci, c in enumerate(self.clauses):
            if self.hits[ci]:
                continue
            if pos_floor is None:
                return len(self.order) + 1
            rest = [i for i in c if i >= pos_floor]
            if not used.intersection(rest):
                used.update(rest)
                count += 1
        return count

    def _search(self, idx: int, chosen: list[int]) -> bool:
        self.clock.tick()
        if all(self.hits):
            return True
        if len(chosen) + self._lower_bound(idx) > self.limit:
            return False
        x = self.order[idx]
        useful = any(not self.hits[ci] for ci in self.occurs[x])
        # include x (only if it hits something new; otherwise it is redundant)
        if useful and len(chosen) < self.limit and all(self.missing[bi] > 1 for bi in self.in_blocked[x]):
            for ci in self.occurs[x]:
                self.hits[ci] += 1
            for bi in self.in_blocked[x]:
                self.missing[bi] -= 1
            chosen.append(x)
            if self._search(idx + 1, chosen):
                return True
            chosen.pop()
            for bi in self.in_blocked[x]:
                self.missing[bi] += 1
            for ci in self.occurs[x]:
                self.hits[ci] -= 1
        # exclude x
        ok = True
        for ci in self.occurs[x]:
            self.possible[ci] -= 1
            if self.possible[ci] == 0 and not self.hits[ci]:
                ok = False
        if ok and self._search(idx + 1, chosen):
            return True
        for ci in self.occurs[x]:
            self.possible[ci] += 1
        return False


class _BranchAndBound:
    """Minimum-cardinality admissible hitting set, lexicographic tie-break."""

    def __init__(self, to_hit, blocked, clock):
        self.clock = clock
        self.to_hit = [frozenset(d) for d in to_hit]
        self.blocked = blocked
        self.best: tuple[int, tuple[int, ...]] | None = None

    def _bound(self, chosen: frozenset, banned: frozenset) -> int:
        used: set[int] = set()
        count = 0
        for d in sorted(self.to_hit, key=len):
            if d & chosen:
                continue
            rest = d - banned
            if not rest:
                return 1 << 30
            if used.isdisjoint(rest):
                used |= rest
                count += 1
        return count

    def run(self) -> frozenset | None:
        self._branch(frozenset(), frozenset())
        return None if self.best is None else frozenset(self.best[1])

    def _branch(self, chosen: frozenset, banned: frozenset):
        self.clock.tick()
        if any(t <= chosen for t in self.blocked):
            return
        unhit = [d for d in self.to_hit if not (d & chosen)]
        if not unhit:
            key = (len(chosen), tuple(sorted(chosen)))
            if self.best is None or key < self.best:
                self.best = key
            return
        if self.best is not None and len(chosen) + self._bound(chosen, banned) > self.best[0]:
            return
        clause = min(unhit, key=lambda d: (len(d - banned), sorted(d)))
        options = sorted(clause - banned)
        # branch i: take options[i] and ban the earlier options of this clause
        for k, x in enumerate(options):
            self._branch(chosen | {x}, banned | frozenset(options[:k]))
