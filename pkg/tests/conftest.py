"""Shared fixtures: the reference machines and tiny independent oracles.

FLOWER_H / FLOWER_K are a hand-coded pair of deterministic semi-flower
automata over {a, b} whose trimmed product is semi-flower with exactly two
branch points; they generate {aa, aba, ba, bb}* and {a, bab}*.  WIDE_TWO_BPI
is a 16-state machine with two bpi's far from the base (m=3, l=2, k=4) and a
single return path labeled "aba".
"""

import random

import pytest

from semiflower import Automaton, as_semiflower, product, trim

GEN_H = frozenset({"aa", "aba", "ba", "bb"})
GEN_K = frozenset({"a", "bab"})

FLOWER_H = Automaton(
    alphabet="ab",
    states=["1", "2", "3", "4"],
    initials=["1"],
    finals=["1"],
    transitions=[
        ("1", "a", "2"), ("1", "b", "3"), ("2", "a", "1"), ("2", "b", "4"),
        ("3", "a", "1"), ("3", "b", "1"), ("4", "a", "1"),
    ],
)

FLOWER_K = Automaton(
    alphabet="ab",
    states=["1'", "2'", "3'"],
    initials=["1'"],
    finals=["1'"],
    transitions=[
        ("1'", "a", "1'"), ("1'", "b", "2'"), ("2'", "a", "3'"), ("3'", "b", "1'"),
    ],
)

# the five base-cycle labels of the trimmed product of FLOWER_H and FLOWER_K
GEN_MEET = frozenset({"aa", "baba", "ababa", "babbaba", "ababbaba"})

WIDE_TWO_BPI = Automaton(
    alphabet="ab",
    states=["1", "q", "p", "c1", "c2", "c3", "c4", "d1", "d2", "d3",
            "e1", "e2", "g1", "g2", "r1", "r2"],
    initials=["1"],
    finals=["1"],
    transitions=[
        # four feeder paths into q labeled ab, aab, aaab, aaaab
        ("1", "a", "c1"), ("c1", "b", "q"), ("c1", "a", "c2"), ("c2", "b", "q"),
        ("c2", "a", "c3"), ("c3", "b", "q"), ("c3", "a", "c4"), ("c4", "b", "q"),
        # three feeder paths into p labeled ba, bab, bba (two a-edges at d1)
        ("1", "b", "d1"), ("d1", "a", "p"), ("d1", "a", "d2"), ("d2", "b", "p"),
        ("d1", "b", "d3"), ("d3", "a", "p"),
        # two paths p -> q labeled aba and bab
        ("p", "a", "e1"), ("e1", "b", "e2"), ("e2", "a", "q"),
        ("p", "b", "g1"), ("g1", "a", "g2"), ("g2", "b", "q"),
        # the single return path q -> 1 labeled aba
        ("q", "a", "r1"), ("r1", "b", "r2"), ("r2", "a", "1"),
    ],
)

# prefix-code pair whose trimmed product keeps a base-avoiding cycle, so the
# intersection need not be finitely generated
GEN_NOT_SEMIFLOWER = (frozenset({"aa", "ab", "b"}), frozenset({"ab", "ba"}))

# prefix-code pair whose product has two bpi's joined by a unique feeding path
GEN_UNIQUE_PATH = (frozenset({"aa", "ab", "ba", "bb"}), frozenset({"a", "bab"}))


@pytest.fixture
def sfa_h():
    return as_semiflower(FLOWER_H)


@pytest.fixture
def sfa_k():
    return as_semiflower(FLOWER_K)


@pytest.fixture
def sfa_meet():
    return as_semiflower(trim(product(FLOWER_H, FLOWER_K)))


@pytest.fixture
def sfa_wide():
    return as_semiflower(WIDE_TWO_BPI)


# --- independent test-side oracles -----------------------------------------

def fixpoint_forward_reachable(a: Automaton) -> set:
    """Reachability by naive iteration over the transition list."""
    reached = set(a.initials)
    changed = True
    while changed:
        changed = False
        for src, _, dst in a.transitions:
            if src in reached and dst not in reached:
                reached.add(dst)
                changed = True
    return reached


def fixpoint_backward_reachable(a: Automaton) -> set:
    reached = set(a.finals)
    changed = True
    while changed:
        changed = False
        for src, _, dst in a.transitions:
            if dst in reached and src not in reached:
                reached.add(src)
                changed = True
    return reached


def naive_decomposable(word: str, parts: frozenset, min_factors: int = 2) -> bool:
    """Exhaustive recursive factorization check, for cross-checking the DP."""

    def rec(rest: str, used: int) -> bool:
        if not rest:
            return used >= min_factors
        return any(rest.startswith(p) and rec(rest[len(p):], used + 1)
                   for p in parts if p)

    return rec(word, 0)


def random_automaton(rng: random.Random, max_states: int = 6,
                     alphabet: str = "ab") -> Automaton:
    """A random (not necessarily trim or deterministic) automaton."""
    count = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(count)]
    transitions = set()
    for _ in range(rng.randint(0, 2 * count)):
        transitions.add((rng.choice(states), rng.choice(alphabet), rng.choice(states)))
    initials = rng.sample(states, rng.randint(1, count))
    finals = rng.sample(states, rng.randint(0, count))
    return Automaton(alphabet=alphabet, states=states, initials=initials,
                     finals=finals, transitions=transitions)


def random_dfa(rng: random.Random, max_states: int = 6,
               alphabet: str = "ab") -> Automaton:
    """A random deterministic automaton with one initial state."""
    count = rng.randint(1, max_states)
    states = [f"s{i}" for i in range(count)]
    transitions = set()
    for src in states:
        for letter in alphabet:
            if rng.random() < 0.7:
                transitions.add((src, letter, rng.choice(states)))
    finals = rng.sample(states, rng.randint(0, count))
    return Automaton(alphabet=alphabet, states=states, initials=[states[0]],
                     finals=finals, transitions=transitions)
