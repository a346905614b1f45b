"""Finite automata as immutable relational structures.

An automaton is a quadruple of finite sets: states, initial states, final
states, and labeled transitions over a declared alphabet.  Everything here
is a pure function over frozen values, so automata can be shared freely
between threads and used as dict keys.

Letters are single printable characters and words are plain strings; the
empty string is the empty word.  State ids are nonempty strings, unique
within one automaton; product states record the ordered pair of origin ids
in their name, e.g. ``(2,1')``.
"""

from __future__ import annotations

import json
from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import AlphabetMismatchError, UnknownLetterError, UnknownStateError


class Transition(NamedTuple):
    source: str
    label: str
    target: str


@dataclass(frozen=True)
class Automaton:
    """Immutable automaton (states, initials, finals, transitions) over an alphabet.

    Constructor arguments may be any iterables; they are normalized to
    frozensets, and transitions to :class:`Transition` triples.  Validation
    enforces that initials and finals are states, transition endpoints are
    states, and every label belongs to the declared alphabet.
    """

    alphabet: frozenset[str]
    states: frozenset[str]
    initials: frozenset[str]
    finals: frozenset[str]
    transitions: frozenset[Transition]

    def __init__(self, alphabet: Iterable[str], states: Iterable[str] = (),
                 initials: Iterable[str] = (), finals: Iterable[str] = (),
                 transitions: Iterable[tuple[str, str, str]] = ()):
        object.__setattr__(self, "alphabet", frozenset(alphabet))
        object.__setattr__(self, "states", frozenset(states))
        object.__setattr__(self, "initials", frozenset(initials))
        object.__setattr__(self, "finals", frozenset(finals))
        object.__setattr__(self, "transitions",
                           frozenset(Transition(*t) for t in transitions))
        self._validate()

    def _validate(self) -> None:
        for letter in self.alphabet:
            if not (isinstance(letter, str) and len(letter) == 1 and letter.isprintable()):
                raise ValueError(f"letters must be single printable characters, got {letter!r}")
        for s in self.states:
            if not (isinstance(s, str) and s):
                raise ValueError(f"state ids must be nonempty strings, got {s!r}")
        if not self.initials <= self.states:
            raise ValueError(f"initial states {sorted(self.initials - self.states)} not in state set")
        if not self.finals <= self.states:
            raise ValueError(f"final states {sorted(self.finals - self.states)} not in state set")
        for src, label, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition ({src!r},{label!r},{dst!r}) uses unknown states")
            if label not in self.alphabet:
                raise ValueError(f"transition label {label!r} not in alphabet")

    def __repr__(self) -> str:
        return (f"Automaton(|Q|={len(self.states)}, |F|={len(self.transitions)}, "
                f"initials={sorted(self.initials)}, finals={sorted(self.finals)})")


def successor_map(a: Automaton) -> dict[str, list[Transition]]:
    """Outgoing transitions grouped by source state (all states present)."""
    out: dict[str, list[Transition]] = {s: [] for s in a.states}
    for t in a.transitions:
        out[t.source].append(t)
    return out


def predecessor_map(a: Automaton) -> dict[str, list[Transition]]:
    """Incoming transitions grouped by target state (all states present)."""
    inc: dict[str, list[Transition]] = {s: [] for s in a.states}
    for t in a.transitions:
        inc[t.target].append(t)
    return inc


def _reachable(seeds: Iterable[str], edges: dict[str, list[Transition]],
               step: str) -> set[str]:
    seen = set(seeds)
    frontier = deque(seen)
    while frontier:
        state = frontier.popleft()
        for t in edges[state]:
            nxt = getattr(t, step)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return seen


def accessible_states(a: Automaton) -> set[str]:
    """States reachable from some initial state by a possibly null path."""
    return _reachable(a.initials, successor_map(a), "target")


def coaccessible_states(a: Automaton) -> set[str]:
    """States from which some final state is reachable."""
    return _reachable(a.finals, predecessor_map(a), "source")


def trim(a: Automaton) -> Automaton:
    """Restriction of ``a`` to accessible and coaccessible states.

    The accepted language is unchanged.  The alphabet is kept as declared.
    """
    keep = accessible_states(a) & coaccessible_states(a)
    return Automaton(
        alphabet=a.alphabet,
        states=keep,
        initials=a.initials & keep,
        finals=a.finals & keep,
        transitions=(t for t in a.transitions if t.source in keep and t.target in keep),
    )


def is_trim(a: Automaton) -> bool:
    return accessible_states(a) & coaccessible_states(a) == a.states


def is_deterministic(a: Automaton) -> bool:
    """True iff there is one initial state and no (source, label) conflict."""
    if len(a.initials) != 1:
        return False
    seen: set[tuple[str, str]] = set()
    for t in a.transitions:
        key = (t.source, t.label)
        if key in seen:
            return False
        seen.add(key)
    return True


def product_state(p: str, q: str) -> str:
    return f"({p},{q})"


def product(a: Automaton, b: Automaton) -> Automaton:
    """Synchronous product over a shared alphabet.

    States are all ordered pairs, initials/finals are the pairwise products,
    and a transition exists iff both operands have it on the same letter.
    The result is deliberately not trimmed; callers trim explicitly.
    """
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError(
            f"alphabets differ: {sorted(a.alphabet)} vs {sorted(b.alphabet)}")
    by_letter_b: dict[tuple[str, str], list[str]] = {}
    for t in b.transitions:
        by_letter_b.setdefault((t.source, t.label), []).append(t.target)
    transitions = []
    for t in a.transitions:
        for q in b.states:
            for q2 in by_letter_b.get((q, t.label), ()):
                transitions.append(Transition(product_state(t.source, q),
                                              t.label,
                                              product_state(t.target, q2)))
    return Automaton(
        alphabet=a.alphabet,
        states=(product_state(p, q) for p in a.states for q in b.states),
        initials=(product_state(p, q) for p in a.initials for q in b.initials),
        finals=(product_state(p, q) for p in a.finals for q in b.finals),
        transitions=transitions,
    )


def accepts(a: Automaton, word: str) -> bool:
    """Subset simulation: does some path labeled ``word`` run initial -> final?"""
    for letter in word:
        if letter not in a.alphabet:
            raise UnknownLetterError(f"letter {letter!r} not in alphabet")
    step: dict[tuple[str, str], set[str]] = {}
    for t in a.transitions:
        step.setdefault((t.source, t.label), set()).add(t.target)
    current = set(a.initials)
    for letter in word:
        current = set().union(*(step.get((s, letter), ()) for s in current)) if current else set()
        if not current:
            break
    return bool(current & a.finals)


def _require_state(a: Automaton, s: str) -> None:
    if s not in a.states:
        raise UnknownStateError(f"state {s!r} not in automaton")


def in_degree(a: Automaton, s: str) -> int:
    """Number of arcs coming into ``s``."""
    _require_state(a, s)
    return sum(1 for t in a.transitions if t.target == s)


def out_degree(a: Automaton, s: str) -> int:
    """Number of arcs leaving ``s``."""
    _require_state(a, s)
    return sum(1 for t in a.transitions if t.source == s)


def bpo_histogram(a: Automaton) -> dict[int, int]:
    """Map out-degree -> number of states with that out-degree.

    Every state is counted, including degree 0; the counts sum to ``|Q|``.
    """
    degrees = Counter(t.source for t in a.transitions)
    return dict(Counter(degrees.get(s, 0) for s in a.states))


def in_degree_histogram(a: Automaton) -> dict[int, int]:
    """Map in-degree -> number of states with that in-degree."""
    degrees = Counter(t.target for t in a.transitions)
    return dict(Counter(degrees.get(s, 0) for s in a.states))


# --- serialization ---------------------------------------------------------

def to_json_dict(a: Automaton) -> dict:
    """JSON-ready dict: sorted lists, transitions as [src, label, dst]."""
    return {
        "alphabet": sorted(a.alphabet),
        "states": sorted(a.states),
        "initials": sorted(a.initials),
        "finals": sorted(a.finals),
        "transitions": sorted([t.source, t.label, t.target] for t in a.transitions),
    }


def from_json_dict(data: dict) -> Automaton:
    return Automaton(
        alphabet=data["alphabet"],
        states=data["states"],
        initials=data["initials"],
        finals=data["finals"],
        transitions=[tuple(t) for t in data["transitions"]],
    )


def dumps(a: Automaton, indent: int | None = 2) -> str:
    return json.dumps(to_json_dict(a), indent=indent, sort_keys=True)


def loads(text: str) -> Automaton:
    return from_json_dict(json.loads(text))


# --- DOT export ------------------------------------------------------------

def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: Automaton, name: str = "automaton") -> str:
    """Graphviz digraph; a state that is both initial and final gets a double circle."""
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;"]
    for i, s in enumerate(sorted(a.initials)):
        lines.append(f'  __start{i} [shape=point, style=invis];')
    for s in sorted(a.states):
        shape = "doublecircle" if s in a.finals else "circle"
        lines.append(f"  {_dot_quote(s)} [shape={shape}];")
    for i, s in enumerate(sorted(a.initials)):
        lines.append(f"  __start{i} -> {_dot_quote(s)};")
    for t in sorted(a.transitions):
        lines.append(f"  {_dot_quote(t.source)} -> {_dot_quote(t.target)}"
                     f" [label={_dot_quote(t.label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
