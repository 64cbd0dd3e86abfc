"""Benchmark generators and dataset loaders."""

from .corpus import (
    CorpusInstance,
    CorpusSpec,
    corpus_alphabet,
    corpus_word_lengths,
    dumps_corpus,
    gen_corpus_automaton,
    substring_union_automaton,
)
from .loaders import DNA, PRINTABLE, dumps_motifs, load_motif_dataset, load_regex_lines, synthetic_motif_pairs
from .maze import MOVES, MazeInstance, dumps_maze, gen_maze, loads_maze, maze_dfa, maze_sizes
from .rng import SplitMix64

__all__ = [
    "CorpusInstance",
    "CorpusSpec",
    "corpus_alphabet",
    "corpus_word_lengths",
    "dumps_corpus",
    "gen_corpus_automaton",
    "substring_union_automaton",
    "DNA",
    "PRINTABLE",
    "load_motif_dataset",
    "load_regex_lines",
    "dumps_motifs",
    "synthetic_motif_pairs",
    "MOVES",
    "MazeInstance",
    "dumps_maze",
    "gen_maze",
    "loads_maze",
    "maze_dfa",
    "maze_sizes",
    "SplitMix64",
]
