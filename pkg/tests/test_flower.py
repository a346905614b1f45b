import random

import pytest
from hypothesis import given, strategies as st

from semiflower import (
    Automaton,
    CycleAvoidsBaseError,
    EmptyWordError,
    NotTrimError,
    NoUniqueBaseError,
    UnknownLetterError,
    as_semiflower,
    base_cycle_labels,
    build_flower,
    is_deterministic,
    is_prefix_code,
    is_semiflower,
    prefix_violation,
    product,
    simple_base_cycles,
    trim,
)
from semiflower.flower import parse_generator_lines
from semiflower.oracle import generates_word, language_upto

from conftest import FLOWER_H, FLOWER_K, GEN_H, GEN_K

words_strategy = st.frozensets(
    st.text(alphabet="ab", min_size=1, max_size=5), min_size=0, max_size=6)


class TestIsSemiflower:
    def test_fixtures(self):
        assert is_semiflower(FLOWER_H)
        assert is_semiflower(FLOWER_K)
        assert is_semiflower(trim(product(FLOWER_H, FLOWER_K)))

    def test_initial_differs_from_final(self):
        a = Automaton(alphabet="a", states=["s", "t"], initials=["s"], finals=["t"],
                      transitions=[("s", "a", "t"), ("t", "a", "s")])
        assert not is_semiflower(a)

    def test_untrimmed_rejected(self):
        a = Automaton(alphabet="a", states=["s", "dead"], initials=["s"], finals=["s"],
                      transitions=[("s", "a", "s")])
        with pytest.raises(NotTrimError):
            as_semiflower(a)

    def test_no_unique_base(self):
        a = Automaton(alphabet="a", states=["s", "t"], initials=["s", "t"],
                      finals=["s", "t"], transitions=[("s", "a", "t"), ("t", "a", "s")])
        with pytest.raises(NoUniqueBaseError):
            as_semiflower(a)


class TestAsSemiflower:
    def test_fixture_base(self):
        assert as_semiflower(FLOWER_H).base == "1"

    def test_single_state_vacuous(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"])
        assert as_semiflower(a).base == "s"

    def test_self_loop_off_base_witnessed(self):
        a = Automaton(alphabet="a", states=["s", "t"], initials=["s"], finals=["s"],
                      transitions=[("s", "a", "t"), ("t", "a", "s"), ("t", "a", "t")])
        with pytest.raises(CycleAvoidsBaseError) as err:
            as_semiflower(a)
        witness = err.value.witness
        assert [tuple(t) for t in witness] == [("t", "a", "t")]

    def test_longer_avoiding_cycle_witnessed(self):
        a = Automaton(alphabet="ab", states=["s", "t", "u"], initials=["s"], finals=["s"],
                      transitions=[("s", "a", "t"), ("t", "a", "u"), ("u", "a", "t"),
                                   ("u", "b", "s")])
        with pytest.raises(CycleAvoidsBaseError) as err:
            as_semiflower(a)
        cycle = err.value.witness
        assert cycle[0].source == cycle[-1].target
        assert all(x.target == y.source for x, y in zip(cycle, cycle[1:]))
        assert "s" not in {t.source for t in cycle}


class TestBuildFlower:
    def test_four_word_code_matches_fixture_shape(self):
        flower = build_flower(GEN_H, "ab")
        assert len(flower.states) == 4
        assert len(flower.transitions) == 7
        assert is_deterministic(flower.inner)
        assert language_upto(flower.inner, 8) == language_upto(FLOWER_H, 8)

    def test_two_word_code_matches_fixture_shape(self):
        flower = build_flower(GEN_K, "ab")
        assert len(flower.states) == 3
        assert len(flower.transitions) == 4
        assert language_upto(flower.inner, 8) == language_upto(FLOWER_K, 8)

    def test_empty_set_accepts_only_empty_word(self):
        flower = build_flower(frozenset(), "ab")
        assert len(flower.states) == 1
        assert language_upto(flower.inner, 4) == {""}

    def test_rejects_empty_word(self):
        with pytest.raises(EmptyWordError):
            build_flower({"a", ""}, "ab")

    def test_rejects_foreign_letter(self):
        with pytest.raises(UnknownLetterError):
            build_flower({"ac"}, "ab")

    def test_base_name_dodges_letter_prefixes(self):
        flower = build_flower({"11", "12"}, "12")
        assert flower.base not in {"1", "11", "12"}

    @given(words_strategy)
    def test_always_semiflower_and_exact_language(self, words):
        flower = build_flower(words, "ab")
        assert is_semiflower(flower.inner)
        assert base_cycle_labels(flower) == words
        for length in range(5):
            for word in _words("ab", length):
                assert (word in language_upto(flower.inner, 4)) == \
                    generates_word(word, words)

    @given(words_strategy)
    def test_deterministic_iff_prefix_code(self, words):
        flower = build_flower(words, "ab")
        assert is_deterministic(flower.inner) == is_prefix_code(words)

    @given(words_strategy)
    def test_cycle_count_equals_code_size(self, words):
        # one trie path per word, prefix code or not
        flower = build_flower(words, "ab")
        assert len(simple_base_cycles(flower)) == len(words)


def _words(alphabet, length):
    if length == 0:
        yield ""
        return
    for rest in _words(alphabet, length - 1):
        for letter in alphabet:
            yield rest + letter


class TestCycles:
    def test_two_petal_fixture(self, sfa_k):
        cycles = simple_base_cycles(sfa_k)
        assert [c.label for c in cycles] == ["a", "bab"]

    def test_single_state_no_cycles(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"])
        assert simple_base_cycles(as_semiflower(a)) == []

    def test_product_fixture_cycles(self, sfa_meet):
        cycles = simple_base_cycles(sfa_meet)
        assert len(cycles) == 5
        assert sorted(c.label for c in cycles) == \
            sorted(["aa", "baba", "ababa", "babbaba", "ababbaba"])

    def test_intermediates_distinct_and_consecutive(self, sfa_meet, sfa_wide):
        for sfa in (sfa_meet, sfa_wide):
            for cycle in simple_base_cycles(sfa):
                steps = cycle.steps
                assert steps[0].source == sfa.base
                assert steps[-1].target == sfa.base
                assert all(x.target == y.source for x, y in zip(steps, steps[1:]))
                interior = [t.target for t in steps[:-1]]
                assert sfa.base not in interior
                assert len(interior) == len(set(interior))

    def test_shared_labels_in_nondeterministic_machine(self):
        a = Automaton(alphabet="ab", states=["1", "x", "y"], initials=["1"], finals=["1"],
                      transitions=[("1", "a", "x"), ("x", "b", "1"),
                                   ("1", "a", "y"), ("y", "b", "1")])
        sfa = as_semiflower(a)
        assert len(simple_base_cycles(sfa)) == 2
        assert base_cycle_labels(sfa) == frozenset({"ab"})

    def test_single_loop_label(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"],
                      transitions=[("s", "a", "s")])
        assert base_cycle_labels(as_semiflower(a)) == frozenset({"a"})

    def test_fixture_labels(self, sfa_h):
        assert base_cycle_labels(sfa_h) == GEN_H


class TestPrefixCode:
    def test_violation_reported(self):
        assert prefix_violation({"a", "ab", "b"}) == ("a", "ab")
        assert prefix_violation({"ab", "ba"}) is None
        assert is_prefix_code(GEN_H)
        assert not is_prefix_code({"a", "aa"})

    def test_equal_words_are_not_violations(self):
        assert is_prefix_code({"ab"})
        assert is_prefix_code(frozenset())


class TestGeneratorFiles:
    def test_comments_and_blanks(self):
        lines = ["# heading", "aa  ", "", "  aba # trailing note", "ba", "bb", "   "]
        assert parse_generator_lines(lines) == [(2, "aa"), (4, "aba"), (5, "ba"), (6, "bb")]

    def test_duplicates_keep_line_numbers(self):
        assert parse_generator_lines(["a", "a"]) == [(1, "a"), (2, "a")]
