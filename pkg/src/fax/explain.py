"""Abductive and contrastive explanations for automaton decisions.

Everything here works on an automaton that *accepts* the word; a rejected
word is explained by running on the complement (see ``explain``).

An AXp is a subset-minimal set of fixed positions whose pattern is
included in the language; a CXp is a subset-minimal set of freed positions
whose pattern is not.  Both extractors walk positions in ascending order and
share one ``InclusionSession`` so each test only recomputes the layers
downstream of the toggled position.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .automata.core import Automaton, Word, accepts, complement, determinize
from .automata.inclusion import InclusionSession
from .errors import AlphabetMismatch, BudgetExceeded, EmptyAttribution, NotWeakAxp
from .explang import SINGLE, Bounds, build_axp_pattern, build_cxp_pattern, index_set
from .hitset import HittingSetProblem


def _session(a: Automaton, w: Word, b: Bounds, session: InclusionSession | None) -> InclusionSession:
    if session is not None:
        if session.automaton is not a or session.word != w or session.bounds != b:
            raise ValueError("session was opened for a different query")
        return session
    if w.alphabet != a.alphabet:
        raise AlphabetMismatch("word and automaton use different alphabets")
    return InclusionSession(a, w, b)


def _all(n: int) -> frozenset:
    return frozenset(range(1, n + 1))


def extract_axp(X: Iterable[int], a: Automaton, w: Word, b: Bounds = SINGLE,
                session: InclusionSession | None = None, deadline: float | None = None) -> frozenset:
    """Shrink the weak AXp ``X`` to a subset-minimal one."""
    s = _session(a, w, b, session)
    n = len(w)
    X = index_set(X, n)
    free = _all(n) - X
    if not s.included(free):
        raise NotWeakAxp(f"fixing {sorted(X)} does not guarantee acceptance")
    kept = set(X)
    for i in sorted(X):
        _tick(deadline)
        if s.included(free | {i}):
            free = free | {i}
            kept.discard(i)
    return frozenset(kept)


def extract_cxp(Y: Iterable[int], a: Automaton, w: Word, b: Bounds = SINGLE,
                session: InclusionSession | None = None, deadline: float | None = None) -> frozenset | None:
    """Shrink the weak CXp ``Y`` to a subset-minimal one, or None if ``Y`` is not one."""
    s = _session(a, w, b, session)
    free = index_set(Y, len(w))
    if s.included(free):
        return None
    for i in sorted(free):
        _tick(deadline)
        if not s.included(free - {i}):
            free = free - {i}
    return free


def singleton_cxps(a: Automaton, w: Word, b: Bounds = SINGLE,
                   session: InclusionSession | None = None) -> list[frozenset]:
    s = _session(a, w, b, session)
    return [frozenset([i]) for i in range(1, len(w) + 1) if not s.included({i})]


def _tick(deadline: float | None):
    if deadline is not None and time.monotonic() > deadline:
        raise BudgetExceeded("time budget exhausted")


@dataclass(frozen=True)
class EnumOptions:
    target_axp: bool = True
    warm_start: bool = False
    minimum_hs: bool = False
    node_budget: int | None = None
    time_budget: float | None = None  # seconds


@dataclass
class ExplanationReport:
    word: Word
    decision: bool
    bounds: Bounds
    axps: list[frozenset]
    cxps: list[frozenset]
    ffa: dict[int, Fraction]
    iterations: int = 0
    inclusion_checks: int = 0
    time_ms: float = 0.0
    complete: bool = True
    # candidate sets returned by the hitting-set engine, in order; None marks exhaustion
    trace: list[frozenset | None] = field(default_factory=list)
    targets: list[frozenset] = field(default_factory=list)
    clauses: str = ""

    @property
    def stats(self) -> dict:
        return {
            "iterations": self.iterations,
            "inclusion_checks": self.inclusion_checks,
            "time_ms": round(self.time_ms, 3),
            "complete": self.complete,
        }

    def to_dict(self) -> dict:
        def lists(sets):
            return sorted(sorted(s) for s in sets)

        return {
            "word": str(self.word),
            "decision": "accept" if self.decision else "reject",
            "bounds": str(self.bounds),
            "axps": lists(self.axps),
            "cxps": lists(self.cxps),
            "ffa": {str(i): float(v) for i, v in sorted(self.ffa.items())},
            "stats": self.stats,
            "patterns": {
                "axps": [build_axp_pattern(s, self.word, self.bounds).render() for s in _sorted(self.axps)],
                "cxps": [build_cxp_pattern(s, self.word, self.bounds).render() for s in _sorted(self.cxps)],
            },
        }


def _sorted(sets):
    return sorted(sets, key=lambda s: sorted(s))


def compute_ffa(axps: Iterable[Iterable[int]], n: int) -> dict[int, Fraction]:
    """Share of AXps containing each position; positions in none are omitted."""
    axps = [index_set(x, n) for x in axps]
    if not axps:
        raise EmptyAttribution("attribution needs at least one AXp")
    counts: dict[int, int] = {}
    for x in axps:
        for i in x:
            counts[i] = counts.get(i, 0) + 1
    return {i: Fraction(c, len(axps)) for i, c in sorted(counts.items())}


def enumerate_explanations(a: Automaton, w: Word, b: Bounds = SINGLE,
                           opts: EnumOptions = EnumOptions()) -> ExplanationReport:
    """All AXps and CXps of an accepted word by hitting-set duality.

    The engine proposes candidates for the target kind; a candidate that
    passes the target test is blocked, otherwise the opposite extractor
    shrinks its complement into a new dual explanation to hit.
    """
    started = time.monotonic()
    deadline = None if opts.time_budget is None else started + opts.time_budget
    if w.alphabet != a.alphabet:
        raise AlphabetMismatch("word and automaton use different alphabets")
    if not accepts(a, w):
        raise ValueError("enumeration needs an accepted word; explain rejection via the complement")
    n = len(w)
    everything = _all(n)
    session = InclusionSession(a, w, b, node_budget=opts.node_budget)
    problem = HittingSetProblem(n)
    targets: list[frozenset] = []
    duals: list[frozenset] = []
    trace: list[frozenset | None] = []
    iterations = 0
    complete = True
    exhausted = False  # an empty dual leaves nothing to hit
    try:
        if opts.warm_start:
            for c in singleton_cxps(a, w, b, session):
                if opts.target_axp:
                    duals.append(c)
                    problem.add_set_to_hit(c)
                else:
                    targets.append(c)
                    problem.block_upset(c)
        while True:
            _tick(deadline)
            if exhausted:
                mu = None
            else:
                mu = problem.next_minimum(deadline) if opts.minimum_hs else problem.next_minimal(deadline)
            iterations += 1
            trace.append(mu)
            if mu is None:
                break
            if opts.target_axp:
                hit = session.included(everything - mu)
            else:
                hit = not session.included(mu)
            if hit:
                targets.append(mu)
                problem.block_upset(mu)
                continue
            rest = everything - mu
            if opts.target_axp:
                nu = extract_cxp(rest, a, w, b, session, deadline)
            else:
                nu = extract_axp(rest, a, w, b, session, deadline)
            duals.append(nu)
            if nu:
                problem.add_set_to_hit(nu)
            else:
                exhausted = True
    except BudgetExceeded:
        complete = False

    axps, cxps = (targets, duals) if opts.target_axp else (duals, targets)
    ffa = compute_ffa(axps, n) if complete and axps else {}
    return ExplanationReport(
        word=w,
        decision=True,
        bounds=b,
        axps=list(axps),
        cxps=list(cxps),
        ffa=ffa,
        iterations=iterations,
        inclusion_checks=session.checks,
        time_ms=(time.monotonic() - started) * 1000,
        complete=complete,
        trace=trace,
        targets=list(targets),
        clauses=problem.dump(),
    )


def decision_automaton(a: Automaton, w: Word, state_cap: int | None = None) -> tuple[bool, Automaton]:
    """The word's decision and an automaton accepting it (the complement on rejection)."""
    if accepts(a, w):
        return True, a
    return False, complement(determinize(a, state_cap))


def explain(a: Automaton, w: Word, b: Bounds = SINGLE, opts: EnumOptions = EnumOptions(),
            state_cap: int | None = None) -> ExplanationReport:
    decision, target = decision_automaton(a, w, state_cap)
    report = enumerate_explanations(target, w, b, opts)
    report.decision = decision
    return report
