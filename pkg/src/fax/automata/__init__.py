"""Regular-language machinery: automata, regex compilation, inclusion."""

from .core import (
    Alphabet,
    Automaton,
    Word,
    accepts,
    complement,
    complete,
    determinize,
    to_ranges,
    union,
    universal,
)
from .inclusion import (
    INCLUDED,
    InclusionResult,
    InclusionSession,
    LazySubsets,
    find_counterexample,
    is_included,
    language_included,
)
from .io import dump, dumps, load, loads
from .regex import parse_regex, regex_to_nfa

__all__ = [
    "Alphabet",
    "Automaton",
    "Word",
    "accepts",
    "complement",
    "complete",
    "determinize",
    "to_ranges",
    "union",
    "universal",
    "INCLUDED",
    "InclusionResult",
    "InclusionSession",
    "LazySubsets",
    "find_counterexample",
    "is_included",
    "language_included",
    "dump",
    "dumps",
    "load",
    "loads",
    "parse_regex",
    "regex_to_nfa",
]
