"""Readers for regex-signature lists and DNA motif datasets."""

from __future__ import annotations

import string
from pathlib import Path

from ..automata.core import Alphabet, Automaton, Word, union
from ..automata.regex import regex_to_nfa
from ..errors import FaxError, FormatError

PRINTABLE = Alphabet(dict.fromkeys(string.printable[:95]))
DNA = Alphabet("ACGT")


def load_regex_lines(path, alphabet: Alphabet = PRINTABLE) -> Automaton:
    """Union of one Thompson NFA per non-blank, non-comment line.

    The result is left non-deterministic on purpose.
    """
    parts = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            parts.append(regex_to_nfa(line, alphabet))
        except FaxError as exc:
            raise FormatError(str(exc), lineno) from None
    if not parts:
        raise FormatError("no regular expressions in file")
    return union(parts)


def load_motif_dataset(path) -> list[tuple[Word, Word]]:
    """Pairs of (sequence, motif), one whitespace-separated pair per line."""
    pairs = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        cols = line.split()
        if len(cols) != 2:
            raise FormatError(f"expected 'sequence motif', got {len(cols)} column(s)", lineno)
        try:
            pairs.append((Word.parse(DNA, cols[0]), Word.parse(DNA, cols[1])))
        except FaxError as exc:
            raise FormatError(f"invalid nucleotide: {exc}", lineno) from None
    return pairs


def synthetic_motif_pairs(count: int = 20, seed: int = 0, min_len: int = 62, max_len: int = 2000):
    """Random (sequence, motif) pairs; even-indexed sequences contain their motif."""
    from .rng import SplitMix64

    rng = SplitMix64(seed)
    pairs = []
    for i in range(count):
        n = min_len + rng.randbelow(max_len - min_len + 1)
        if i == 0:
            n = min_len
        elif i == 1:
            n = max_len
        motif = tuple(rng.randbelow(4) for _ in range(4 + rng.randbelow(9)))
        seq = [rng.randbelow(4) for _ in range(n)]
        if i % 2 == 0:
            at = rng.randbelow(n - len(motif) + 1)
            seq[at:at + len(motif)] = motif
        pairs.append((Word(DNA, tuple(seq)), Word(DNA, motif)))
    return pairs


def dumps_motifs(pairs) -> str:
    return "".join(f"{s} {m}\n" for s, m in pairs)
