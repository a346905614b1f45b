"""Ranks of the submonoids accepted by semi-flower automata.

The rank of the accepted submonoid is read off the digraph without any word
enumeration:

* at most one branch point going in (bpi): rank <= |F| - |Q| + 1, with
  equality for deterministic machines;
* exactly two bpi's p and q (q the one nearer the base): with m the
  in-degree of p, and the in-degree of q split as l + k according to whether
  an in-edge is fed from p or not, rank <= m*l + k, again exact when
  deterministic;
* three or more bpi's: no closed form; we fall back to counting the distinct
  base-cycle labels, which is exact iff the machine is deterministic.

The module also provides the structural checks these formulas rest on
(unique return path from q, the Euler-style degree identity, the product
out-degree bound) and the condensed bpi's-and-paths view of a machine.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .automaton import (
    Automaton,
    Transition,
    bpo_histogram,
    in_degree,
    is_deterministic,
    predecessor_map,
    product,
    successor_map,
    trim,
)
from .errors import (
    AlphabetMismatchError,
    CycleAvoidsBaseError,
    LengthMismatchError,
    NotDeterministicError,
    TieDistanceError,
    TooManyBpisError,
    UnknownStateError,
    WrongBpiCountError,
)
from .flower import SemiFlowerAutomaton, base_cycle_labels, simple_base_cycles

UNIQUE_BPI_FORMULA = "UniqueBpiFormula"
TWO_BPI_FORMULA = "TwoBpiFormula"
CYCLE_COUNT = "CycleCount"


@dataclass(frozen=True)
class TwoBpiProfile:
    """The (p, q, m, l, k) shape of a semi-flower automaton with <= 2 bpi's.

    q is the bpi nearest the base and p the other one; p == q with l == 0
    encodes the unique-bpi degenerate case.  m is the in-degree of p; the
    in-degree of q equals l + k, where l counts the in-edges of q lying on
    some base-avoiding path from p and k the rest.
    """

    p: str
    q: str
    m: int
    l: int
    k: int
    dist_p: int
    dist_q: int

    def to_json_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "m": self.m, "l": self.l,
                "k": self.k, "dist_p": self.dist_p, "dist_q": self.dist_q}


@dataclass(frozen=True)
class RankReport:
    """Rank of the accepted submonoid, with the formula that produced it.

    ``exact`` is True when the operand was deterministic; otherwise the value
    is an upper bound on the true rank.
    """

    rank_value: int
    exact: bool
    method: str
    bpi_count: int
    profile: TwoBpiProfile | None = None

    def to_json_dict(self) -> dict:
        return {
            "rank_value": self.rank_value,
            "exact": self.exact,
            "method": self.method,
            "bpi_count": self.bpi_count,
            "profile": self.profile.to_json_dict() if self.profile else None,
        }


def distances_to_state(a: Automaton, target: str) -> dict[str, int]:
    """Edge-count distance from every state to ``target`` (reverse BFS)."""
    if target not in a.states:
        raise UnknownStateError(f"state {target!r} not in automaton")
    pred = predecessor_map(a)
    dist = {target: 0}
    frontier = deque([target])
    while frontier:
        state = frontier.popleft()
        for t in pred[state]:
            if t.source not in dist:
                dist[t.source] = dist[state] + 1
                frontier.append(t.source)
    return dist


def distance_to_base(s: SemiFlowerAutomaton, state: str) -> int:
    """Minimum number of transitions on a path from ``state`` to the base."""
    if state not in s.states:
        raise UnknownStateError(f"state {state!r} not in automaton")
    return distances_to_state(s.inner, s.base)[state]


def bpis(a: Automaton | SemiFlowerAutomaton) -> list[str]:
    """States with in-degree >= 2, sorted by distance to the base, then id.

    For a plain automaton without a unique initial-final state the distance
    key is dropped and the sort is by id alone.
    """
    if isinstance(a, SemiFlowerAutomaton):
        inner, base = a.inner, a.base
    else:
        inner = a
        base = next(iter(a.initials)) if len(a.initials) == 1 and a.initials == a.finals else None
    degree: dict[str, int] = {}
    for t in inner.transitions:
        degree[t.target] = degree.get(t.target, 0) + 1
    found = [s for s, d in degree.items() if d >= 2]
    if base is None:
        return sorted(found)
    dist = distances_to_state(inner, base)
    infinity = len(inner.states) + 1
    return sorted(found, key=lambda s: (dist.get(s, infinity), s))


def two_bpi_profile(s: SemiFlowerAutomaton) -> TwoBpiProfile:
    """Classify the in-edges of the near bpi q as fed-from-p (l) or not (k).

    Classification walks the unique predecessor chain backward from each
    in-edge of q in the base-deleted digraph: every non-bpi state there has
    in-degree at most one, so the chain is forced; it ends at p (count the
    edge in l), at a state whose only in-edges come from the base (count it
    in k), or would revisit q, which would witness a base-avoiding cycle and
    is raised as structural corruption.  Chains for distinct in-edges may
    merge (the feeding paths form a tree hanging off p and can share their
    first edges); each individual chain is still unique, which is what makes
    l well defined.
    """
    points = bpis(s)
    if len(points) not in (1, 2):
        raise WrongBpiCountError(f"need 1 or 2 bpi's, found {len(points)}: {points}")
    dist = distances_to_state(s.inner, s.base)
    if len(points) == 1:
        (q,) = points
        deg = in_degree(s.inner, q)
        return TwoBpiProfile(p=q, q=q, m=deg, l=0, k=deg,
                             dist_p=dist[q], dist_q=dist[q])
    q, p = points
    if dist[p] == dist[q]:
        raise TieDistanceError(
            f"distinct bpi's {p!r} and {q!r} at equal distance {dist[p]} from the base")
    pred = predecessor_map(s.inner)
    l = k = 0
    for edge in pred[q]:
        if edge.source == s.base:
            k += 1
            continue
        chain_seen: set[str] = set()
        cur = edge.source
        reached_p = cur == p
        while not reached_p:
            if cur == q or cur in chain_seen:
                raise CycleAvoidsBaseError(
                    f"backward chain from an in-edge of {q!r} looped at {cur!r}; "
                    f"the automaton has a base-avoiding cycle")
            chain_seen.add(cur)
            ups = [t for t in pred[cur] if t.source != s.base]
            if not ups:
                break
            assert len(ups) == 1, f"unexpected branch point {cur!r} during classification"
            cur = ups[0].source
            reached_p = cur == p
        if reached_p:
            l += 1
        else:
            k += 1
    return TwoBpiProfile(p=p, q=q, m=in_degree(s.inner, p), l=l, k=k,
                         dist_p=dist[p], dist_q=dist[q])


def rank_unique_bpi(s: SemiFlowerAutomaton) -> RankReport:
    """Rank via |F| - |Q| + 1; requires at most one bpi."""
    points = bpis(s)
    if len(points) > 1:
        raise WrongBpiCountError(f"need at most 1 bpi, found {len(points)}: {points}")
    value = len(s.transitions) - len(s.states) + 1
    profile = two_bpi_profile(s) if len(points) == 1 else None
    return RankReport(rank_value=value, exact=is_deterministic(s.inner),
                      method=UNIQUE_BPI_FORMULA, bpi_count=len(points),
                      profile=profile)


def rank_two_bpi(s: SemiFlowerAutomaton) -> RankReport:
    """Rank via m*l + k; requires exactly two bpi's."""
    points = bpis(s)
    if len(points) != 2:
        raise WrongBpiCountError(f"need exactly 2 bpi's, found {len(points)}: {points}")
    profile = two_bpi_profile(s)
    return RankReport(rank_value=profile.m * profile.l + profile.k,
                      exact=is_deterministic(s.inner),
                      method=TWO_BPI_FORMULA, bpi_count=2, profile=profile)


def rank(s: SemiFlowerAutomaton) -> RankReport:
    """Rank of the accepted submonoid, dispatching on the number of bpi's.

    With three or more bpi's there is no closed form and the value is the
    number of distinct base-cycle labels, an upper bound that is exact iff
    the machine is deterministic.
    """
    count = len(bpis(s))
    if count <= 1:
        return rank_unique_bpi(s)
    if count == 2:
        return rank_two_bpi(s)
    return RankReport(rank_value=len(base_cycle_labels(s)),
                      exact=is_deterministic(s.inner),
                      method=CYCLE_COUNT, bpi_count=count, profile=None)


def verify_euler_identity(s: SemiFlowerAutomaton) -> bool:
    """Check |F| - |Q| == sum over i>=2 of |BPO_i| * (i - 1).

    Holds for every deterministic semi-flower automaton with at least one
    transition (the one-state transition-free machine has an out-degree-0
    state and misses the identity by one).
    """
    if not is_deterministic(s.inner):
        raise NotDeterministicError("the degree identity needs a deterministic automaton")
    histogram = bpo_histogram(s.inner)
    rhs = sum(count * (deg - 1) for deg, count in histogram.items() if deg >= 2)
    return len(s.transitions) - len(s.states) == rhs


def verify_product_bpo_bound(a: Automaton, b: Automaton) -> bool:
    """Check |BPO_t(a x b)| <= sum of c_r * d_s over r, s in t..n, for t in 2..n.

    Stated for the raw product; trimming only removes states, so the bound
    is checked on both the untrimmed and trimmed machines.
    """
    if not (is_deterministic(a) and is_deterministic(b)):
        raise NotDeterministicError("the out-degree bound needs deterministic operands")
    if a.alphabet != b.alphabet:
        raise AlphabetMismatchError("operands must share one alphabet")
    n = len(a.alphabet)
    c = bpo_histogram(a)
    d = bpo_histogram(b)
    raw = product(a, b)
    for machine in (raw, trim(raw)):
        histogram = bpo_histogram(machine)
        for t in range(2, n + 1):
            lhs = histogram.get(t, 0)
            rhs = sum(c.get(r, 0) * d.get(s, 0)
                      for r in range(t, n + 1) for s in range(t, n + 1))
            if lhs > rhs:
                return False
    return True


def sequence_inequality(c: Sequence[int], d: Sequence[int]) -> tuple[int, int]:
    """Both sides of the tail-sum inequality for natural sequences.

    With c = (c_1..c_n) and d = (d_1..d_n), returns

        lhs = sum over t=2..n of (t-1) * (sum of c_r, r>=t) * (sum of d_s, s>=t)
        rhs = (sum of (i-1)*c_i) * (sum of (j-1)*d_j)

    and the contract is lhs <= rhs always.
    """
    if len(c) != len(d):
        raise LengthMismatchError(f"sequence lengths differ: {len(c)} vs {len(d)}")
    if len(c) < 1:
        raise LengthMismatchError("sequences must have length >= 1")
    if any(x < 0 for x in c) or any(x < 0 for x in d):
        raise ValueError("entries must be natural numbers")
    n = len(c)
    lhs = sum((t - 1) * sum(c[t - 1:]) * sum(d[t - 1:]) for t in range(2, n + 1))
    rhs = (sum((i - 1) * c[i - 1] for i in range(2, n + 1))
           * sum((j - 1) * d[j - 1] for j in range(2, n + 1)))
    return lhs, rhs


def _simple_paths(a: Automaton, source: str, target: str) -> list[tuple[Transition, ...]]:
    """All paths source -> target with pairwise-distinct states.

    When source == target only the null path qualifies, represented as ().
    """
    if source == target:
        return [()]
    succ = successor_map(a)
    paths: list[tuple[Transition, ...]] = []
    path: list[Transition] = []
    visited = {source}

    def walk(state: str) -> None:
        for t in sorted(succ[state]):
            if t.target == target:
                paths.append(tuple(path) + (t,))
            elif t.target not in visited and t.target != source:
                visited.add(t.target)
                path.append(t)
                walk(t.target)
                path.pop()
                visited.remove(t.target)

    walk(source)
    return paths


def verify_two_bpi_lemma(s: SemiFlowerAutomaton) -> bool:
    """Structural facts behind the two-bpi rank formula.

    True iff (i) there is exactly one simple path from the near bpi q to the
    base, (ii) every base-simple cycle visits q, and (iii) every cycle that
    visits the far bpi p also visits q.
    """
    points = bpis(s)
    if len(points) != 2:
        raise WrongBpiCountError(f"need exactly 2 bpi's, found {len(points)}: {points}")
    q, _p = points
    if len(_simple_paths(s.inner, q, s.base)) != 1:
        return False
    # (ii) subsumes (iii): if every cycle visits q, so does every p-cycle.
    return all(q in cycle.states_visited() for cycle in simple_base_cycles(s))


def verify_rank_identity_two_bpi(s: SemiFlowerAutomaton) -> bool:
    """Deterministic two-bpi identities tying the rank to degree counts.

    Checks rank - (m-1)(l-1) == |F| - |Q| + 1 and
    rank == (m-1)(l-1) + sum over t>=2 of |BPO_t|*(t-1) + 1.
    """
    if not is_deterministic(s.inner):
        raise NotDeterministicError("the rank identities need a deterministic automaton")
    report = rank_two_bpi(s)
    m, l = report.profile.m, report.profile.l
    value = report.rank_value
    if value - (m - 1) * (l - 1) != len(s.transitions) - len(s.states) + 1:
        return False
    histogram = bpo_histogram(s.inner)
    degree_sum = sum(count * (deg - 1) for deg, count in histogram.items() if deg >= 2)
    return value == (m - 1) * (l - 1) + degree_sum + 1


# --- bpi's-and-paths representation ----------------------------------------

@dataclass(frozen=True)
class BprSummary:
    """Condensed view of a semi-flower automaton: base, bpi's, path bundles.

    ``path_labels`` maps ordered pairs of distinguished states (base and
    bpi's) to the labels of all directed paths between them whose
    intermediate states avoid every distinguished state.  Lists are in
    shortlex order; pairs without paths are omitted.
    """

    base: str
    bpis: tuple[str, ...]
    path_labels: dict[tuple[str, str], tuple[str, ...]]

    def to_json_dict(self) -> dict:
        return {
            "base": self.base,
            "bpis": list(self.bpis),
            "path_labels": {f"{a} -> {b}": list(words)
                            for (a, b), words in sorted(self.path_labels.items())},
        }


def _bundle_paths(a: Automaton, source: str, target: str,
                  distinguished: frozenset[str]) -> list[str]:
    """Labels of paths source -> target (length >= 1) avoiding distinguished
    states as intermediates."""
    succ = successor_map(a)
    labels: list[str] = []
    seen: set[str] = set()

    def walk(state: str, word: str) -> None:
        for t in sorted(succ[state]):
            if t.target == target:
                labels.append(word + t.label)
            if t.target in distinguished or t.target in seen:
                continue
            seen.add(t.target)
            walk(t.target, word + t.label)
            seen.remove(t.target)

    walk(source, "")
    return sorted(labels, key=lambda w: (len(w), w))


def bpr(s: SemiFlowerAutomaton) -> BprSummary:
    """The bpi's-and-paths summary; defined for at most two bpi's."""
    points = bpis(s)
    if len(points) > 2:
        raise TooManyBpisError(f"summary needs <= 2 bpi's, found {len(points)}: {points}")
    distinguished = frozenset({s.base, *points})
    ordered = [s.base] + [b for b in points if b != s.base]
    path_labels: dict[tuple[str, str], tuple[str, ...]] = {}
    for src in ordered:
        for dst in ordered:
            bundle = _bundle_paths(s.inner, src, dst, distinguished)
            if bundle:
                path_labels[(src, dst)] = tuple(bundle)
    return BprSummary(base=s.base, bpis=tuple(points), path_labels=path_labels)


def reconstruct_labels(summary: BprSummary) -> tuple[str, ...]:
    """Base-cycle labels rebuilt from the summary, as a sorted multiset.

    Routes run from the base back to the base through pairwise-distinct
    distinguished states; the bundle labels along a route are concatenated
    in every combination.
    """
    hubs = [b for b in summary.bpis if b != summary.base]
    routes: list[list[str]] = [[summary.base, summary.base]]
    for h in hubs:
        routes.append([summary.base, h, summary.base])
    if len(hubs) == 2:
        a, b = hubs
        routes.append([summary.base, a, b, summary.base])
        routes.append([summary.base, b, a, summary.base])
    words: list[str] = []
    for route in routes:
        combos = [""]
        for src, dst in zip(route, route[1:]):
            bundle = summary.path_labels.get((src, dst))
            if bundle is None:
                combos = []
                break
            combos = [w + piece for w in combos for piece in bundle]
        words.extend(combos)
    return tuple(sorted(words))


def bpr_to_dot(summary: BprSummary, name: str = "bpr") -> str:
    """Graphviz digraph of the summary: double circle base, boxed bpi's,
    one labeled edge per path in each bundle."""
    def quote(x: str) -> str:
        return '"' + x.replace("\\", "\\\\").replace('"', '\\"') + '"'

    lines = [f"digraph {quote(name)} {{", "  rankdir=TB;"]
    lines.append(f"  {quote(summary.base)} [shape=doublecircle];")
    for b in summary.bpis:
        if b != summary.base:
            lines.append(f"  {quote(b)} [shape=box];")
    for (src, dst), words in sorted(summary.path_labels.items()):
        for w in words:
            lines.append(f"  {quote(src)} -> {quote(dst)} [label={quote(w)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def rank_report_dumps(report: RankReport, indent: int | None = 2) -> str:
    return json.dumps(report.to_json_dict(), indent=indent, sort_keys=True)
