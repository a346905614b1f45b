"""Brute-force ground truth, independent of the rank formulas.

Every submonoid of a free monoid has a unique minimal generating set: the
nonempty elements that are not products of two or more nonempty elements.
For a finitely generated submonoid this set is computable by dynamic
programming over word prefixes, because any factor in a decomposition of w
is itself a factor of w and strictly shorter.  That gives exact ranks with
no automaton theory at all, which is what the degree formulas are checked
against.

The module also carries bounded language enumeration and the seeded random
instance generators used by fuzz campaigns.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automaton import Automaton
from .errors import AlphabetMismatchError, BudgetExceededError, EmptyWordError
from .flower import SemiFlowerAutomaton, base_cycle_labels


ENUMERATION_BUDGET = 10_000_000


@dataclass(frozen=True)
class MinimalGenerators:
    """Result of decomposability elimination over a generating set.

    ``words`` generates the same submonoid as the input; no element of it is
    a product of two or more nonempty elements of that submonoid.  Each
    removed word carries a witness factorization into input words.
    """

    words: frozenset[str]
    removed: tuple[tuple[str, tuple[str, ...]], ...]


def _splits(word: str, pieces: frozenset[str]) -> tuple[str, ...] | None:
    """Some factorization of ``word`` into elements of ``pieces``, or None."""
    reach: list[str | None] = [None] * (len(word) + 1)
    reach[0] = ""
    for i in range(1, len(word) + 1):
        for p in pieces:
            if len(p) <= i and reach[i - len(p)] is not None and word[i - len(p):i] == p:
                reach[i] = p
                break
    if reach[len(word)] is None:
        return None
    factors: list[str] = []
    i = len(word)
    while i > 0:
        factors.append(reach[i])
        i -= len(reach[i])
    return tuple(reversed(factors))


def decomposition_witness(word: str, generators: frozenset[str]) -> tuple[str, ...] | None:
    """A factorization of ``word`` into >= 2 generator words, if one exists.

    The first factor must be a proper prefix, which forces at least two
    factors; the generators considered never include ``word`` itself since
    every factor fits strictly inside it.
    """
    usable = frozenset(g for g in generators if g and len(g) < len(word))
    for first in sorted(usable):
        if word.startswith(first):
            rest = _splits(word[len(first):], usable)
            if rest is not None:
                return (first, *rest)
    return None


def minimal_generators(generators) -> MinimalGenerators:
    """The unique minimal generating set of the submonoid generated by the input.

    A word is removed exactly when it is a concatenation of two or more
    nonempty elements of the generated submonoid; testing against the input
    words suffices, since any such element is itself a product of them.
    """
    words = frozenset(generators)
    if "" in words:
        raise EmptyWordError("generating sets may not contain the empty word")
    removed = []
    kept = set()
    for w in sorted(words, key=lambda x: (len(x), x)):
        witness = decomposition_witness(w, words)
        if witness is None:
            kept.add(w)
        else:
            removed.append((w, witness))
    return MinimalGenerators(words=frozenset(kept), removed=tuple(removed))


def generates_word(word: str, generators) -> bool:
    """Membership of ``word`` in the submonoid generated by ``generators``."""
    pieces = frozenset(g for g in generators if g)
    return word == "" or _splits(word, pieces) is not None


def oracle_rank(s: SemiFlowerAutomaton) -> int:
    """Exact rank of the accepted submonoid, independent of determinism.

    The machine accepts the submonoid generated by its base-cycle labels, so
    the rank is the size of that set after decomposability elimination.
    """
    return len(minimal_generators(base_cycle_labels(s)).words)


# --- bounded language enumeration -------------------------------------------

def _check_budget(alphabet_size: int, maxlen: int) -> None:
    total = sum(alphabet_size ** i for i in range(1, maxlen + 1))
    if total > ENUMERATION_BUDGET:
        raise BudgetExceededError(
            f"enumerating up to {total} words exceeds the {ENUMERATION_BUDGET} budget")


def language_upto(a: Automaton, maxlen: int) -> set[str]:
    """All accepted words of length <= maxlen.

    Walks the word tree with subset simulation, pruning branches whose state
    subset is empty, so sparse machines stay far below the worst-case budget
    (which is still enforced up front).
    """
    _check_budget(len(a.alphabet), maxlen)
    step: dict[tuple[str, str], frozenset[str]] = {}
    for t in a.transitions:
        key = (t.source, t.label)
        step[key] = step.get(key, frozenset()) | {t.target}
    letters = sorted(a.alphabet)
    finals = a.finals
    accepted: set[str] = set()

    def walk(word: str, subset: frozenset[str]) -> None:
        if subset & finals:
            accepted.add(word)
        if len(word) == maxlen:
            return
        for letter in letters:
            nxt = frozenset().union(*(step.get((s, letter), frozenset()) for s in subset))
            if nxt:
                walk(word + letter, nxt)

    walk("", frozenset(a.initials))
    return accepted


def language_equal_upto(a: Automaton, b: Automaton, maxlen: int) -> bool:
    """True iff the two automata accept exactly the same words up to maxlen."""
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("language comparison needs a shared alphabet")
    return language_upto(a, maxlen) == language_upto(b, maxlen)


def closure_upto(generators, alphabet_size: int, maxlen: int) -> set[str]:
    """Words of the generated submonoid up to ``maxlen``, by breadth-first
    concatenation; used as a membership oracle for whole languages."""
    _check_budget(alphabet_size, maxlen)
    words = [g for g in frozenset(generators) if g and len(g) <= maxlen]
    out = {""}
    frontier = [""]
    while frontier:
        nxt = []
        for w in frontier:
            for g in words:
                piece = w + g
                if len(piece) <= maxlen and piece not in out:
                    out.add(piece)
                    nxt.append(piece)
        frontier = nxt
    return out


# --- random instances --------------------------------------------------------

LETTERS = "abcd"


@dataclass(frozen=True)
class FuzzConfig:
    """Deterministic fuzz parameters; the same seed replays the same stream."""

    seed: int
    alphabet_size: int = 2
    max_generators: int = 6
    max_word_len: int = 5
    trials: int = 1000

    def __post_init__(self):
        if not 2 <= self.alphabet_size <= 4:
            raise ValueError("alphabet_size must be in 2..4")
        if not 1 <= self.max_generators <= 8:
            raise ValueError("max_generators must be in 1..8")
        if not 1 <= self.max_word_len <= 6:
            raise ValueError("max_word_len must be in 1..6")
        if self.trials < 0:
            raise ValueError("trials must be >= 0")

    @property
    def alphabet(self) -> str:
        return LETTERS[: self.alphabet_size]

    def rng(self, salt: str = "") -> random.Random:
        # str seeds hash via sha512, stable across runs and platforms
        return random.Random(f"{self.seed}:{salt}")


def random_prefix_code(cfg: FuzzConfig, salt: str = "") -> frozenset[str]:
    """A nonempty, pairwise prefix-free set of nonempty words.

    Words are sampled with a bias toward short lengths and then pruned in
    sampling order, keeping each word only if it neither extends nor is
    extended by an already-kept one.
    """
    rng = cfg.rng(salt)
    letters = cfg.alphabet
    kept: list[str] = []
    for _ in range(rng.randint(1, cfg.max_generators)):
        length = min(rng.randint(1, cfg.max_word_len), rng.randint(1, cfg.max_word_len))
        word = "".join(rng.choice(letters) for _ in range(length))
        if not any(word.startswith(k) or k.startswith(word) for k in kept):
            kept.append(word)
    return frozenset(kept)


def random_two_bpi_dsfa(cfg: FuzzConfig, salt: str = "") -> SemiFlowerAutomaton:
    """A deterministic semi-flower automaton with exactly two bpi's.

    Built straight from the (m, l, k) shape: a spine of k feeders from the
    base into q, a spine of m feeders from the base into p, l paths from p
    into q, and one return chain from q to the base.  Chain letters are drawn
    at random with the two out-edges of any branching node kept distinct, so
    the machine is deterministic by construction and its rank must come out
    at m*l + k.
    """
    rng = cfg.rng(salt)
    letters = cfg.alphabet
    m = rng.randint(2, 5)
    l = rng.randint(1, 4)
    k = rng.randint(1 if l == 1 else 0, 4)
    states = {"1", "p", "q"}
    transitions: set[tuple[str, str, str]] = set()

    def spine(prefix: str, start: str, end: str, count: int) -> None:
        # `count` paths start -> end: each spine node exits to `end` and
        # continues to a fresh neighbor on a different letter
        node = start
        for i in range(count):
            exit_letter = rng.choice(letters)
            transitions.add((node, exit_letter, end))
            if i < count - 1:
                nxt = f"{prefix}{i + 1}"
                states.add(nxt)
                cont = rng.choice([x for x in letters if x != exit_letter])
                transitions.add((node, cont, nxt))
                node = nxt

    base_letters = rng.sample(letters, 2)
    if k:
        states.add("c0")
        transitions.add(("1", base_letters[0], "c0"))
        spine("c", "c0", "q", k)
    states.add("d0")
    transitions.add(("1", base_letters[1], "d0"))
    spine("d", "d0", "p", m)
    states.add("f0")
    transitions.add(("p", rng.choice(letters), "f0"))
    spine("f", "f0", "q", l)
    node = "q"
    for i in range(rng.randint(0, 2)):
        states.add(f"t{i}")
        transitions.add((node, rng.choice(letters), f"t{i}"))
        node = f"t{i}"
    transitions.add((node, rng.choice(letters), "1"))

    inner = Automaton(alphabet=letters, states=states, initials={"1"},
                      finals={"1"}, transitions=transitions)
    return SemiFlowerAutomaton(inner=inner, base="1")
