import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fax.automata import (
    Alphabet,
    InclusionSession,
    Word,
    accepts,
    complement,
    find_counterexample,
    is_included,
    language_included,
    regex_to_nfa,
    universal,
)
from fax.bench.rng import SplitMix64
from fax.errors import AlphabetMismatch, BudgetExceeded
from fax.explang import ANY, NONEMPTY, SINGLE, build_axp_pattern, build_cxp_pattern, chain_to_automaton

from oracles import pattern_words, random_dfa, random_nfa, random_word, simulate

BOUNDS = [SINGLE, NONEMPTY, ANY]


def pattern_regex(p) -> str:
    """Python regex for a chain pattern: an oracle independent of the chain automaton."""
    any_sym = "[" + "".join(re.escape(s) for s in p.word.alphabet.symbols) + "]"
    tail = {(1, 1): "", (1, None): "+", (0, None): "*"}[(p.bounds.lower, p.bounds.upper)]
    parts = []
    for i, s in enumerate(p.word.symbols, 1):
        parts.append(any_sym + tail if i in p.free else re.escape(p.word.alphabet.name(s)))
    return "".join(parts)


def check_witness(p, a, result):
    ce = result.counterexample
    assert re.fullmatch(pattern_regex(p), str(ce)) is not None
    assert not accepts(a, ce) and not simulate(a, ce.symbols)


class TestExamples:
    def test_third_b_middle_b_is_enough(self, third_b):
        word = Word.parse(third_b.alphabet, "bbbbb")
        assert is_included(build_axp_pattern({3}, word, SINGLE), third_b).included

    def test_wider_bounds_need_more_positions_counterexample(self, signatures, az):
        word = Word.parse(az, "ceccd")
        p = build_axp_pattern({2}, word, NONEMPTY)
        result = is_included(p, complement(signatures))
        assert not result.included
        assert str(result.counterexample) == "abeeee"
        check_witness(p, complement(signatures), result)

    def test_exact_word_is_included(self, signatures, az):
        word = Word.parse(az, "abcd")
        for b in BOUNDS:
            assert is_included(build_axp_pattern(range(1, 5), word, b), signatures)

    def test_alphabet_mismatch(self, third_b, az):
        with pytest.raises(AlphabetMismatch):
            find_counterexample(third_b, Word.parse(az, "ab"), set(), SINGLE)

    def test_budget_is_an_error_not_an_answer(self, signatures, az):
        word = Word.parse(az, "ceccd")
        with pytest.raises(BudgetExceeded):
            find_counterexample(complement(signatures), word, {1, 2, 3, 4, 5}, NONEMPTY, node_budget=3)
        s = InclusionSession(complement(signatures), word, NONEMPTY, node_budget=2)
        with pytest.raises(BudgetExceeded):
            s.included({1, 2, 3})


def _cases(seed, count):
    rng = SplitMix64(seed)
    for _ in range(count):
        a = random_nfa(rng, max_states=4, k=2) if rng.randbelow(2) else random_dfa(rng, max_states=4, max_symbols=3)
        n = rng.randbelow(7)
        w = random_word(rng, a.alphabet, n)
        free = frozenset(i for i in range(1, n + 1) if rng.randbelow(2))
        yield a, w, free, BOUNDS[rng.randbelow(3)]


class TestOracleEquivalence:
    def test_single_substitution_is_exact(self):
        for a, w, free, _ in _cases(5, 300):
            p = build_cxp_pattern(free, w, SINGLE)
            words = pattern_words(w.symbols, free, 1, 1, len(w), len(a.alphabet))
            expected = all(simulate(a, x) for x in words)
            result = is_included(p, a)
            assert result.included == expected
            if not expected:
                check_witness(p, a, result)

    def test_unbounded_against_brute_force_and_product(self):
        for a, w, free, b in _cases(9, 300):
            p = build_cxp_pattern(free, w, b)
            result = is_included(p, a)
            assert result.included == language_included(chain_to_automaton(p), a).included
            limit = min(len(w) + 3, 7)
            words = pattern_words(w.symbols, free, b.lower, b.upper, limit, len(a.alphabet))
            if not all(simulate(a, x) for x in words):
                assert not result.included
            if not result.included:
                check_witness(p, a, result)

    def test_full_pumping_bound_on_tiny_instances(self):
        # shortest counterexample is at most (chain states) * 2^|Q| long
        rng = SplitMix64(21)
        checked = 0
        while checked < 60:
            a = random_nfa(rng, max_states=2, k=2)
            n = rng.randbelow(3)
            w = random_word(rng, a.alphabet, n)
            free = frozenset(i for i in range(1, n + 1) if rng.randbelow(2))
            b = BOUNDS[rng.randbelow(3)]
            bound = (n + 1) * 2 ** a.state_count
            if bound > 12:
                continue
            p = build_cxp_pattern(free, w, b)
            words = pattern_words(w.symbols, free, b.lower, b.upper, bound, 2)
            assert is_included(p, a).included == all(simulate(a, x) for x in words)
            checked += 1

    def test_counterexample_is_shortest(self):
        for a, w, free, b in _cases(13, 200):
            p = build_cxp_pattern(free, w, b)
            result = is_included(p, a)
            if result.included:
                continue
            shorter = pattern_words(w.symbols, free, b.lower, b.upper, len(result.counterexample) - 1, len(a.alphabet))
            assert all(simulate(a, x) for x in shorter)


class TestSession:
    @settings(max_examples=80, deadline=None)
    @given(st.integers(0, 2**32), st.lists(st.integers(1, 8), max_size=25))
    def test_incremental_matches_fresh(self, seed, toggles):
        rng = SplitMix64(seed)
        a = random_nfa(rng, max_states=4, k=2) if seed % 2 else random_dfa(rng, max_states=5)
        w = random_word(rng, a.alphabet, 8)
        b = BOUNDS[seed % 3]
        session = InclusionSession(a, w, b)
        free = set()
        for t in toggles:
            free ^= {t}
            assert session.included(free) == find_counterexample(a, w, free, b).included
        assert session.checks == len(toggles)

    def test_universal_language(self):
        ab = Alphabet("ab")
        w = Word.parse(ab, "abba")
        s = InclusionSession(universal(ab), w, ANY)
        assert s.included({1, 2, 3, 4})

    def test_nondeterministic_right_side(self, az):
        nfa = regex_to_nfa("(abcd+)|(ab[c-z]e+)|(bc+da)|(bc+)", az)
        w = Word.parse(az, "bcc")
        assert not is_included(build_cxp_pattern({1}, w, SINGLE), nfa).included
        # bc followed by any letter: only bcc is accepted, so freeing 3 breaks it
        assert not is_included(build_cxp_pattern({3}, w, SINGLE), nfa).included
        assert is_included(build_cxp_pattern({3}, w, NONEMPTY), nfa).included is False
