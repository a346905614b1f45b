"""Semi-flower automata: validation, construction, and base-cycle enumeration.

A semi-flower automaton is a trim automaton with a single state that is both
initial and final (the base), such that every cycle passes through the base.
Equivalently, deleting the base leaves an acyclic digraph.  Such a machine
accepts exactly the submonoid generated by the labels of its cycles that are
simple in the base.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .automaton import Automaton, Transition, is_deterministic, is_trim, successor_map
from .errors import (
    CycleAvoidsBaseError,
    EmptyWordError,
    NotTrimError,
    NoUniqueBaseError,
    UnknownLetterError,
)


@dataclass(frozen=True)
class SemiFlowerAutomaton:
    """A validated semi-flower automaton with its distinguished base state."""

    inner: Automaton
    base: str

    @property
    def alphabet(self) -> frozenset[str]:
        return self.inner.alphabet

    @property
    def states(self) -> frozenset[str]:
        return self.inner.states

    @property
    def transitions(self) -> frozenset[Transition]:
        return self.inner.transitions

    def __repr__(self) -> str:
        return (f"SemiFlowerAutomaton(base={self.base!r}, |Q|={len(self.states)}, "
                f"|F|={len(self.transitions)})")


@dataclass(frozen=True)
class CyclePath:
    """A cycle simple in the base: consecutive transitions, base to base.

    Intermediate states never equal the base and are pairwise distinct (the
    base-deleted digraph of a semi-flower automaton is acyclic, so this is
    forced rather than assumed).
    """

    steps: tuple[Transition, ...]

    @property
    def label(self) -> str:
        return "".join(t.label for t in self.steps)

    def states_visited(self) -> list[str]:
        return [self.steps[0].source] + [t.target for t in self.steps]


def find_cycle_avoiding(a: Automaton, avoid: str) -> list[Transition] | None:
    """A cycle in the digraph of ``a`` that never visits ``avoid``, or None.

    Iterative three-color DFS over the base-deleted digraph; a back edge
    yields the witness cycle.
    """
    succ = successor_map(a)
    color: dict[str, int] = {}  # 1 = on stack, 2 = done
    parent_edge: dict[str, Transition] = {}
    for root in a.states:
        if root == avoid or color.get(root):
            continue
        stack: list[tuple[str, Iterator[Transition]]] = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            state, edges = stack[-1]
            advanced = False
            for t in edges:
                if t.target == avoid:
                    continue
                c = color.get(t.target)
                if c == 1:
                    # back edge: unwind the stack to reconstruct the cycle
                    cycle = [t]
                    cur = state
                    while cur != t.target:
                        e = parent_edge[cur]
                        cycle.append(e)
                        cur = e.source
                    cycle.reverse()
                    return cycle
                if c is None:
                    color[t.target] = 1
                    parent_edge[t.target] = t
                    stack.append((t.target, iter(succ[t.target])))
                    advanced = True
                    break
            if not advanced:
                color[state] = 2
                stack.pop()
    return None


def as_semiflower(a: Automaton) -> SemiFlowerAutomaton:
    """Validate the semi-flower structure and wrap the automaton.

    Raises NotTrimError, NoUniqueBaseError, or CycleAvoidsBaseError (with a
    witness cycle) when the structure fails.
    """
    if not is_trim(a):
        raise NotTrimError("automaton has useless states; trim it first")
    if not (len(a.initials) == 1 and a.initials == a.finals):
        raise NoUniqueBaseError(
            f"need a unique initial state equal to the unique final state, "
            f"got initials={sorted(a.initials)}, finals={sorted(a.finals)}")
    (base,) = a.initials
    witness = find_cycle_avoiding(a, base)
    if witness is not None:
        raise CycleAvoidsBaseError(
            f"cycle through {witness[0].source!r} avoids the base {base!r}",
            witness=witness)
    return SemiFlowerAutomaton(inner=a, base=base)


def is_semiflower(a: Automaton) -> bool:
    try:
        as_semiflower(a)
    except (NotTrimError, NoUniqueBaseError, CycleAvoidsBaseError):
        return False
    return True


def _fresh_base_name(words: Iterable[str]) -> str:
    taken = {w[:i] for w in words for i in range(1, len(w))}
    for candidate in ("1", "base", "start"):
        if candidate not in taken:
            return candidate
    i = 0
    while f"base{i}" in taken:
        i += 1
    return f"base{i}"


def build_flower(words: Iterable[str], alphabet: Iterable[str]) -> SemiFlowerAutomaton:
    """Prefix-merged flower accepting exactly the submonoid generated by ``words``.

    The words are laid out as a trie rooted at the base, with each word's final
    transition redirected back to the base.  The result is always trim and
    semi-flower; it is deterministic iff ``words`` is a prefix code.
    """
    words = frozenset(words)
    alphabet = frozenset(alphabet)
    if "" in words:
        raise EmptyWordError("the empty word cannot be a generator; strip it first")
    for w in words:
        for letter in w:
            if letter not in alphabet:
                raise UnknownLetterError(f"word {w!r} uses {letter!r} outside the alphabet")
    base = _fresh_base_name(words)
    states = {base}
    transitions: set[tuple[str, str, str]] = set()
    for w in words:
        node = base
        for i, letter in enumerate(w):
            if i == len(w) - 1:
                transitions.add((node, letter, base))
            else:
                nxt = w[: i + 1]
                states.add(nxt)
                transitions.add((node, letter, nxt))
                node = nxt
    inner = Automaton(alphabet=alphabet, states=states, initials={base},
                      finals={base}, transitions=transitions)
    return SemiFlowerAutomaton(inner=inner, base=base)


def simple_base_cycles(s: SemiFlowerAutomaton) -> list[CyclePath]:
    """All cycles simple in the base, ordered by label then by transition sequence.

    Depth-first enumeration from the base that never revisits an intermediate
    state; termination is guaranteed because the base-deleted digraph is
    acyclic.
    """
    succ = successor_map(s.inner)
    cycles: list[CyclePath] = []
    path: list[Transition] = []
    on_path: set[str] = set()

    def walk(state: str) -> None:
        for t in sorted(succ[state]):
            if t.target == s.base:
                cycles.append(CyclePath(steps=tuple(path) + (t,)))
            elif t.target not in on_path:
                path.append(t)
                on_path.add(t.target)
                walk(t.target)
                on_path.remove(t.target)
                path.pop()

    walk(s.base)
    cycles.sort(key=lambda c: (c.label, c.steps))
    return cycles


def base_cycle_labels(s: SemiFlowerAutomaton) -> frozenset[str]:
    """The set of labels of the cycles simple in the base.

    The accepted language is exactly the submonoid these labels generate.
    Distinct cycles may share a label in nondeterministic machines, so the
    result can be smaller than the cycle list.
    """
    return frozenset(c.label for c in simple_base_cycles(s))


def is_prefix_code(words: Iterable[str]) -> bool:
    return prefix_violation(words) is None


def prefix_violation(words: Iterable[str]) -> tuple[str, str] | None:
    """A (prefix, word) pair with prefix a proper prefix of word, or None."""
    ordered = sorted(frozenset(words))
    for shorter, longer in zip(ordered, ordered[1:]):
        if longer.startswith(shorter) and shorter != longer:
            return (shorter, longer)
    return None


def flower_is_deterministic(words: Iterable[str], alphabet: Iterable[str]) -> bool:
    return is_deterministic(build_flower(words, alphabet).inner)


# --- generator-set files ----------------------------------------------------

def parse_generator_lines(lines: Iterable[str]) -> list[tuple[int, str]]:
    """Parse the one-word-per-line format: '#' comments, blank lines ignored.

    Returns (line_number, word) pairs in file order, duplicates included so
    callers can report offending line numbers.
    """
    out = []
    for lineno, raw in enumerate(lines, start=1):
        word = raw.split("#", 1)[0].strip()
        if word:
            out.append((lineno, word))
    return out


def read_generator_file(path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(word for _, word in parse_generator_lines(fh))
