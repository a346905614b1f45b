import random

import pytest
from hypothesis import given, strategies as st

from semiflower import (
    AlphabetMismatchError,
    Automaton,
    UnknownLetterError,
    UnknownStateError,
    accepts,
    accessible_states,
    bpo_histogram,
    coaccessible_states,
    in_degree,
    in_degree_histogram,
    is_deterministic,
    out_degree,
    product,
    to_dot,
    trim,
)
from semiflower.automaton import dumps, from_json_dict, loads, to_json_dict
from semiflower.oracle import generates_word, language_upto

from conftest import (
    FLOWER_H,
    FLOWER_K,
    fixpoint_backward_reachable,
    fixpoint_forward_reachable,
    random_automaton,
)

MEET_STATES = {
    "(1,1')", "(1,2')", "(1,3')", "(2,1')", "(2,3')",
    "(3,1')", "(3,2')", "(4,1')", "(4,2')",
}

MEET_TRANSITIONS = {
    ("(1,1')", "a", "(2,1')"), ("(1,1')", "b", "(3,2')"),
    ("(2,1')", "a", "(1,1')"), ("(2,1')", "b", "(4,2')"),
    ("(3,2')", "a", "(1,3')"), ("(4,2')", "a", "(1,3')"),
    ("(1,3')", "b", "(3,1')"), ("(3,1')", "a", "(1,1')"),
    ("(3,1')", "b", "(1,2')"), ("(1,2')", "a", "(2,3')"),
    ("(2,3')", "b", "(4,1')"), ("(4,1')", "a", "(1,1')"),
}


class TestValidation:
    def test_rejects_unknown_initial(self):
        with pytest.raises(ValueError):
            Automaton(alphabet="a", states=["s"], initials=["t"])

    def test_rejects_foreign_label(self):
        with pytest.raises(ValueError):
            Automaton(alphabet="a", states=["s"], initials=["s"],
                      finals=["s"], transitions=[("s", "b", "s")])

    def test_rejects_multichar_letter(self):
        with pytest.raises(ValueError):
            Automaton(alphabet=["ab"], states=["s"])

    def test_duplicate_transitions_collapse(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"],
                      transitions=[("s", "a", "s"), ("s", "a", "s")])
        assert len(a.transitions) == 1


class TestAccessibility:
    def test_fixture_all_accessible(self):
        assert accessible_states(FLOWER_H) == {"1", "2", "3", "4"}
        assert coaccessible_states(FLOWER_H) == {"1", "2", "3", "4"}

    def test_no_transitions_null_path(self):
        a = Automaton(alphabet="a", states=["s", "t"], initials=["s"])
        assert accessible_states(a) == {"s"}

    def test_empty_finals_coaccessible_empty(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"],
                      transitions=[("s", "a", "s")])
        assert coaccessible_states(a) == set()

    def test_product_accessible_part(self):
        raw = product(FLOWER_H, FLOWER_K)
        assert accessible_states(raw) == MEET_STATES

    def test_against_fixpoint_oracle(self):
        rng = random.Random(13)
        for _ in range(100):
            a = random_automaton(rng)
            assert accessible_states(a) == fixpoint_forward_reachable(a)
            assert coaccessible_states(a) == fixpoint_backward_reachable(a)


class TestTrim:
    def test_fixture_already_trim(self):
        assert trim(FLOWER_H) == FLOWER_H

    def test_empty_finals_trims_to_nothing(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"],
                      transitions=[("s", "a", "s")])
        assert trim(a).states == frozenset()

    def test_product_fixture_exact_shape(self):
        meet = trim(product(FLOWER_H, FLOWER_K))
        assert meet.states == frozenset(MEET_STATES)
        assert {tuple(t) for t in meet.transitions} == MEET_TRANSITIONS

    def test_idempotent_and_language_preserving(self):
        rng = random.Random(99)
        for _ in range(60):
            a = random_automaton(rng)
            t = trim(a)
            assert trim(t) == t
            assert language_upto(a, 6) == language_upto(t, 6)


class TestDeterminism:
    def test_fixtures_deterministic(self):
        assert is_deterministic(FLOWER_H)
        assert is_deterministic(FLOWER_K)

    def test_conflicting_pair(self):
        a = Automaton(alphabet="a", states=["s", "t", "u"], initials=["s"],
                      transitions=[("s", "a", "t"), ("s", "a", "u")])
        assert not is_deterministic(a)

    def test_multiple_initials(self):
        a = Automaton(alphabet="a", states=["s", "t"], initials=["s", "t"])
        assert not is_deterministic(a)

    def test_closed_under_product(self):
        rng = random.Random(4)
        from conftest import random_dfa
        for _ in range(100):
            a, b = random_dfa(rng), random_dfa(rng)
            assert is_deterministic(product(a, b))


class TestProduct:
    def test_alphabet_mismatch(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"])
        b = Automaton(alphabet="b", states=["t"], initials=["t"], finals=["t"])
        with pytest.raises(AlphabetMismatchError):
            product(a, b)

    def test_untrimmed_shape(self):
        raw = product(FLOWER_H, FLOWER_K)
        assert len(raw.states) == 12
        assert len(raw.transitions) == 14
        assert raw.initials == frozenset({"(1,1')"})
        assert raw.finals == frozenset({"(1,1')"})

    def test_loop_free_operand_gives_empty_word_language(self):
        single = Automaton(alphabet="ab", states=["z"], initials=["z"], finals=["z"])
        meet = product(FLOWER_H, single)
        assert accepts(meet, "")
        assert language_upto(meet, 6) == {""}

    def test_language_is_intersection(self):
        rng = random.Random(21)
        for _ in range(60):
            a, b = random_automaton(rng), random_automaton(rng)
            meet = product(a, b)
            assert language_upto(meet, 6) == language_upto(a, 6) & language_upto(b, 6)


class TestAccepts:
    def test_fixture_words(self):
        assert accepts(FLOWER_H, "aba")
        assert accepts(FLOWER_H, "")
        # decomposability over {a, bab} decides membership
        assert not accepts(FLOWER_K, "ba")
        assert accepts(FLOWER_K, "baba")

    def test_unknown_letter(self):
        with pytest.raises(UnknownLetterError):
            accepts(FLOWER_H, "abc")

    def test_matches_generator_membership(self, sfa_h):
        for length in range(7):
            for word in _all_words("ab", length):
                assert accepts(FLOWER_H, word) == generates_word(word, {"aa", "aba", "ba", "bb"})


def _all_words(alphabet, length):
    if length == 0:
        yield ""
        return
    for rest in _all_words(alphabet, length - 1):
        for letter in alphabet:
            yield rest + letter


class TestDegrees:
    def test_fixture_in_degrees(self):
        assert in_degree(FLOWER_H, "1") == 4
        meet = trim(product(FLOWER_H, FLOWER_K))
        assert in_degree(meet, "(1,3')") == 2

    def test_isolated_state(self):
        a = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"])
        assert in_degree(a, "s") == 0
        assert out_degree(a, "s") == 0

    def test_unknown_state(self):
        with pytest.raises(UnknownStateError):
            in_degree(FLOWER_H, "zzz")

    def test_histograms(self):
        assert bpo_histogram(FLOWER_K) == {2: 1, 1: 2}
        single = Automaton(alphabet="a", states=["s"], initials=["s"], finals=["s"])
        assert bpo_histogram(single) == {0: 1}

    def test_handshake_identities(self):
        rng = random.Random(5)
        for _ in range(100):
            a = random_automaton(rng)
            out_h = bpo_histogram(a)
            in_h = in_degree_histogram(a)
            assert sum(out_h.values()) == len(a.states)
            assert sum(d * c for d, c in out_h.items()) == len(a.transitions)
            assert sum(d * c for d, c in in_h.items()) == len(a.transitions)


class TestSerialization:
    def test_round_trip_fixtures(self):
        for a in (FLOWER_H, FLOWER_K, trim(product(FLOWER_H, FLOWER_K))):
            assert loads(dumps(a)) == a
            assert from_json_dict(to_json_dict(a)) == a

    @given(st.integers(0, 10_000))
    def test_round_trip_random(self, seed):
        a = random_automaton(random.Random(seed))
        assert loads(dumps(a)) == a

    def test_schema_fields(self):
        data = to_json_dict(FLOWER_K)
        assert set(data) == {"alphabet", "states", "initials", "finals", "transitions"}
        assert data["transitions"] == sorted(data["transitions"])
        assert ["1'", "a", "1'"] in data["transitions"]


class TestDot:
    def test_base_drawn_double(self):
        dot = to_dot(FLOWER_H)
        assert '"1" [shape=doublecircle];' in dot
        assert '"2" [shape=circle];' in dot
        assert '"1" -> "2" [label="a"];' in dot
