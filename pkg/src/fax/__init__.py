"""Formal explanations (AXps, CXps) and feature attribution for automaton decisions."""

from .automata import Alphabet, Automaton, Word, accepts, complement, determinize, regex_to_nfa
from .explain import (
    EnumOptions,
    ExplanationReport,
    compute_ffa,
    enumerate_explanations,
    explain,
    extract_axp,
    extract_cxp,
    singleton_cxps,
)
from .explang import ANY, NONEMPTY, SINGLE, Bounds, ChainPattern, build_axp_pattern, build_cxp_pattern

__all__ = [
    "Alphabet",
    "Automaton",
    "Word",
    "accepts",
    "complement",
    "determinize",
    "regex_to_nfa",
    "EnumOptions",
    "ExplanationReport",
    "compute_ffa",
    "enumerate_explanations",
    "explain",
    "extract_axp",
    "extract_cxp",
    "singleton_cxps",
    "ANY",
    "NONEMPTY",
    "SINGLE",
    "Bounds",
    "ChainPattern",
    "build_axp_pattern",
    "build_cxp_pattern",
]
