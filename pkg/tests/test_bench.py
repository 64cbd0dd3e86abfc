import pytest

from fax.automata import Alphabet, Word, accepts, complement, dumps
from fax.bench import (
    DNA,
    PRINTABLE,
    CorpusSpec,
    SplitMix64,
    dumps_corpus,
    dumps_maze,
    gen_corpus_automaton,
    gen_maze,
    load_motif_dataset,
    load_regex_lines,
    loads_maze,
    maze_sizes,
    substring_union_automaton,
    synthetic_motif_pairs,
)
from fax.errors import FormatError, GenerationError
from fax.explain import explain

from conftest import DATA, SIGNATURE_REGEX
from oracles import all_words, brute_single

AB = Alphabet("ab")


class TestRng:
    def test_reference_values(self):
        # first outputs for seed 0 published with the reference implementation
        rng = SplitMix64(0)
        assert [rng.next_u64() for _ in range(3)] == [
            0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
        ]

    def test_randbelow_range(self):
        rng = SplitMix64(1)
        xs = [rng.randbelow(7) for _ in range(2000)]
        assert set(xs) == set(range(7))
        assert all(0 <= rng.random() < 1 for _ in range(100))


class TestSubstringAutomaton:
    def test_single_member(self):
        a = substring_union_automaton([Word.parse(AB, "ab")])
        assert a.deterministic and a.is_complete()
        assert [accepts(a, Word.parse(AB, t)) for t in ("ab", "aab", "abb", "ba", "aa")] == [
            True, True, True, False, False,
        ]

    def test_empty_list(self):
        with pytest.raises(ValueError):
            substring_union_automaton([], AB)

    def test_exhaustive_against_naive_search(self):
        rng = SplitMix64(8)
        for _ in range(30):
            members = [
                Word(AB, tuple(rng.randbelow(2) for _ in range(1 + rng.randbelow(4))))
                for _ in range(1 + rng.randbelow(3))
            ]
            a = substring_union_automaton(members)
            assert a.deterministic and a.is_complete()
            texts = [str(m) for m in members]
            for ids in all_words(2, 8):
                s = AB.decode(ids)
                assert accepts(a, Word(AB, ids)) == any(t in s for t in texts)

    def test_random_strings(self):
        rng = SplitMix64(99)
        members = [Word(AB, tuple(rng.randbelow(2) for _ in range(5))) for _ in range(3)]
        a = substring_union_automaton(members)
        for _ in range(500):
            n = rng.randbelow(31)
            w = Word(AB, tuple(rng.randbelow(2) for _ in range(n)))
            assert accepts(a, w) == any(str(m) in str(w) for m in members)

    def test_consecutive_a_family_matches_brute_force(self):
        a = substring_union_automaton([Word.parse(AB, "aaa")])
        w = Word.parse(AB, "bbbbbb")
        rep = explain(a, w)
        axps, cxps = brute_single(complement(a), w)
        assert set(rep.axps) == axps and set(rep.cxps) == cxps


class TestCorpus:
    def test_deterministic(self):
        spec = CorpusSpec(5, 1, 2, seed=4)
        one, two = gen_corpus_automaton(spec, 0.2), gen_corpus_automaton(spec, 0.2)
        assert dumps(one.automaton) == dumps(two.automaton)
        assert dumps_corpus(one) == dumps_corpus(two)

    def test_accepted_words_embed_their_member(self):
        inst = gen_corpus_automaton(CorpusSpec(5, 3, 3, seed=1), 0.3)
        for idx, w in zip(inst.embedded, inst.accepted):
            assert str(inst.members[idx]) in str(w)

    def test_labels_agree_with_naive_search(self):
        inst = gen_corpus_automaton(CorpusSpec(5, 3, 5, seed=2))
        texts = [str(m) for m in inst.members]
        assert [len(w) for w in inst.rejected] == list(range(100, 1001, 100))
        for w in inst.accepted:
            assert any(t in str(w) for t in texts)
        for w in inst.rejected:
            assert not any(t in str(w) for t in texts)

    def test_impossible_rejection(self):
        # every word of length >= 1 contains "a" or "b"
        with pytest.raises(GenerationError):
            gen_corpus_automaton(CorpusSpec(1, 10, 2, seed=0))


class TestMaze:
    def test_solution_and_rejected_paths(self):
        m = gen_maze(10, 10, 1 / 3, seed=5)
        assert accepts(m.dfa, m.solution_path)
        assert len(m.rejected_paths) == 5
        for k, r in enumerate(m.rejected_paths, 1):
            assert not accepts(m.dfa, r)
            assert len(r) == len(m.solution_path)
            assert sum(x != y for x, y in zip(r.symbols, m.solution_path.symbols)) == k

    def test_sink_is_absorbing(self):
        m = gen_maze(6, 8, 0.3, seed=2)
        sink = m.dfa.state_count - 1
        assert sink not in m.dfa.accepting
        assert all(m.dfa.delta(sink, c) == sink for c in range(4))
        # walking off the top edge is fatal for good
        up = Word.parse(m.dfa.alphabet, "U" + str(m.solution_path))
        assert not accepts(m.dfa, up)

    def test_sizes(self):
        sizes = maze_sizes()
        assert len(sizes) == 861 == len(set(sizes))
        assert sizes[0] == (10, 10) and sizes[-1] == (50, 50)

    def test_round_trip_and_determinism(self):
        m = gen_maze(12, 15, 1 / 3, seed=9)
        text = dumps_maze(m)
        assert text == dumps_maze(gen_maze(12, 15, 1 / 3, seed=9))
        back = loads_maze(text)
        assert dumps_maze(back) == text and back.dfa == m.dfa

    @pytest.mark.parametrize("args", [(1, 5, 0.3, 0), (5, 5, 1.0, 0), (5, 5, -0.1, 0)])
    def test_bad_parameters(self, args):
        with pytest.raises(ValueError):
            gen_maze(*args)

    def test_bad_file(self):
        with pytest.raises(FormatError):
            loads_maze("fax-maze v1\nsize: 2 2\nseed: 0\n..\n.\n")


class TestLoaders:
    def test_regex_lines(self, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("# comment\n\n" + SIGNATURE_REGEX + "\n")
        a = load_regex_lines(path)
        assert accepts(a, Word.parse(PRINTABLE, "abcd"))
        assert not accepts(a, Word.parse(PRINTABLE, "accc"))

    def test_many_lines_share_one_initial_state(self, tmp_path):
        path = tmp_path / "many.txt"
        path.write_text("".join(f"sig{i}[a-z]+\n" for i in range(98)))
        a = load_regex_lines(path)
        assert sum(1 for s, _ in a.epsilon_transitions if s == 0) == 98
        assert not a.deterministic

    def test_errors_report_line_numbers(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("ab\n\n(cd\n")
        with pytest.raises(FormatError) as err:
            load_regex_lines(path)
        assert err.value.line == 3
        empty = tmp_path / "empty.txt"
        empty.write_text("# nothing\n")
        with pytest.raises(FormatError):
            load_regex_lines(empty)

    def test_motif_lines(self, tmp_path):
        path = tmp_path / "m.txt"
        path.write_text("ACGTACGT ACG\nAAAA GGG\n")
        (s1, m1), (s2, m2) = load_motif_dataset(path)
        assert accepts(substring_union_automaton([m1]), s1)
        assert not accepts(substring_union_automaton([m2]), s2)

    @pytest.mark.parametrize("line", ["ACGU ACG", "ACGT", "ACGT AC GT"])
    def test_motif_errors(self, tmp_path, line):
        path = tmp_path / "bad.txt"
        path.write_text(line + "\n")
        with pytest.raises(FormatError):
            load_motif_dataset(path)

    def test_shipped_sample(self):
        pairs = load_motif_dataset(DATA / "motifs_sample.txt")
        assert len(pairs) == 20
        lengths = [len(s) for s, _ in pairs]
        assert min(lengths) == 62 and max(lengths) == 2000
        for i, (s, m) in enumerate(pairs):
            assert accepts(substring_union_automaton([m], DNA), s) == (str(m) in str(s))
            if i % 2 == 0:
                assert str(m) in str(s)
        assert pairs == synthetic_motif_pairs(20, 2024)
