"""Substring-containment languages and the random corpus benchmark."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from ..automata.core import Alphabet, Automaton, Word, accepts
from ..errors import AlphabetMismatch, GenerationError
from .rng import SplitMix64


def substring_union_automaton(words: Sequence[Word], alphabet: Alphabet | None = None) -> Automaton:
    """Complete DFA for "contains some member of ``words``" (Aho-Corasick).

    Trie nodes that complete a member are merged into one absorbing
    accepting state, since nothing after a match can undo it.
    """
    words = list(words)
    if not words:
        raise ValueError("substring automaton needs at least one word")
    alphabet = alphabet or words[0].alphabet
    for w in words:
        if w.alphabet != alphabet:
            raise AlphabetMismatch("member word uses a different alphabet")
    if any(len(w) == 0 for w in words):
        # every string contains the empty word
        return Automaton(alphabet, 1, frozenset([0]), frozenset([0]), [(0, [(0, len(alphabet) - 1)], 0)])
    k = len(alphabet)
    children: list[dict[int, int]] = [{}]
    terminal = [False]
    for w in words:
        node = 0
        for c in w.symbols:
            nxt = children[node].get(c)
            if nxt is None:
                nxt = len(children)
                children[node][c] = nxt
                children.append({})
                terminal.append(False)
            node = nxt
        terminal[node] = True

    goto = [[0] * k for _ in children]
    fail = [0] * len(children)
    queue = deque()
    for c in range(k):
        child = children[0].get(c)
        if child is None:
            goto[0][c] = 0
        else:
            goto[0][c] = child
            queue.append(child)
    while queue:
        node = queue.popleft()
        terminal[node] = terminal[node] or terminal[fail[node]]
        for c in range(k):
            child = children[node].get(c)
            if child is None:
                goto[node][c] = goto[fail[node]][c]
            else:
                fail[child] = goto[fail[node]][c]
                goto[node][c] = child
                queue.append(child)

    # renumber: live (non-matching) trie nodes first, then one accepting sink
    live = [q for q in range(len(children)) if not terminal[q]]
    new_id = {q: i for i, q in enumerate(live)}
    hit = len(live)
    transitions = []
    for q in live:
        for c in range(k):
            t = goto[q][c]
            transitions.append((new_id[q], [c], hit if terminal[t] else new_id[t]))
    transitions.append((hit, [(0, k - 1)], hit))
    return Automaton(alphabet, hit + 1, frozenset([0]), frozenset([hit]), transitions)


def corpus_alphabet(size: int) -> Alphabet:
    if not (2 <= size <= 26):
        raise ValueError("corpus alphabet size must be in 2..26")
    return Alphabet(chr(ord("a") + i) for i in range(size))


@dataclass(frozen=True)
class CorpusSpec:
    word_length: int
    word_count: int
    alphabet_size: int
    seed: int = 0

    def __post_init__(self):
        if self.word_length < 1 or self.word_count < 1:
            raise ValueError("word length and count must be positive")
        corpus_alphabet(self.alphabet_size)


@dataclass(frozen=True)
class CorpusInstance:
    spec: CorpusSpec
    automaton: Automaton
    members: tuple[Word, ...]
    accepted: tuple[Word, ...]
    # index into ``members`` of the word embedded in each accepted test word
    embedded: tuple[int, ...]
    rejected: tuple[Word, ...]


def _random_word(rng: SplitMix64, alphabet: Alphabet, length: int) -> Word:
    k = len(alphabet)
    return Word(alphabet, tuple(rng.randbelow(k) for _ in range(length)))


def _avoiding_states(a: Automaton) -> set[int]:
    """Non-accepting states from which arbitrarily long rejected walks exist."""
    good = set(range(a.state_count)) - set(a.accepting)
    k = len(a.alphabet)
    changed = True
    while changed:
        changed = False
        for q in list(good):
            if not any(a.delta(q, c) in good for c in range(k)):
                good.discard(q)
                changed = True
    return good


def _rejected_word(rng: SplitMix64, a: Automaton, length: int, good: set[int]) -> Word:
    (q,) = a.initial
    k = len(a.alphabet)
    out = []
    for _ in range(length):
        options = [c for c in range(k) if a.delta(q, c) in good]
        c = rng.choice(options)
        out.append(c)
        q = a.delta(q, c)
    return Word(a.alphabet, tuple(out))


def corpus_word_lengths(length_scale: float = 1.0) -> list[int]:
    return [max(1, round(i * 100 * length_scale)) for i in range(1, 11)]


def gen_corpus_automaton(spec: CorpusSpec, length_scale: float = 1.0) -> CorpusInstance:
    """Random member words, their substring automaton and 10+10 test words."""
    rng = SplitMix64(spec.seed)
    alphabet = corpus_alphabet(spec.alphabet_size)
    members = tuple(_random_word(rng, alphabet, spec.word_length) for _ in range(spec.word_count))
    a = substring_union_automaton(members, alphabet)
    lengths = corpus_word_lengths(length_scale)

    accepted, embedded = [], []
    for n in lengths:
        idx = rng.randbelow(len(members))
        m = members[idx].symbols
        total = max(n, len(m))
        at = rng.randbelow(total - len(m) + 1)
        filler = _random_word(rng, alphabet, total - len(m)).symbols
        accepted.append(Word(alphabet, filler[:at] + m + filler[at:]))
        embedded.append(idx)

    good = _avoiding_states(a)
    if next(iter(a.initial)) not in good:
        raise GenerationError("every long enough word contains a member; no rejected words exist")
    rejected = [_rejected_word(rng, a, n, good) for n in lengths]
    if not all(accepts(a, w) for w in accepted) or any(accepts(a, w) for w in rejected):
        raise GenerationError("test word labels disagree with the automaton")
    return CorpusInstance(spec, a, members, tuple(accepted), tuple(embedded), tuple(rejected))


def dumps_corpus(inst: CorpusInstance) -> str:
    s = inst.spec
    lines = [
        "fax-corpus v1",
        f"spec: {s.word_length} {s.word_count} {s.alphabet_size} {s.seed}",
    ]
    lines += [f"member: {w}" for w in inst.members]
    lines += [f"accept: {i} {w}" for i, w in zip(inst.embedded, inst.accepted)]
    lines += [f"reject: {w}" for w in inst.rejected]
    return "\n".join(lines) + "\n"
