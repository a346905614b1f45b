"""End-to-end Hanna Neumann analysis for a pair of generating sets.

Two submonoids H and K satisfy the Hanna Neumann property (HNP) when

    rrk(H meet K) <= rrk(H) * rrk(K),      rrk(N) = max(0, rk(N) - 1).

The pipeline builds a deterministic flower for each prefix code, trims their
product, and classifies it:

* semi-flower with at most one bpi: HNP is guaranteed;
* semi-flower with exactly two bpi's: the guarantee weakens to
  rrk(H meet K) <= rrk(H) * rrk(K) + (m-1)(l-1), which collapses back to
  HNP when there is a unique feeding path (l == 1);
* three or more bpi's: no guarantee, though the ranks are still exact;
* not semi-flower at all: the intersection need not be finitely generated
  and no rank is reported.

In every case where ranks exist the verdict also records the actual
comparison, so a bound can be checked against reality.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .automaton import Automaton, is_deterministic, product, trim
from .errors import (
    CycleAvoidsBaseError,
    EmptyGeneratorsError,
    NotPrefixCodeError,
    NotTrimError,
    NoUniqueBaseError,
)
from .flower import SemiFlowerAutomaton, as_semiflower, build_flower, prefix_violation
from .rank import TwoBpiProfile, bpis, rank, two_bpi_profile

UNIQUE_BPI_HNP = "UniqueBpiHNP"
TWO_BPI_BOUND = "TwoBpiBound"
UNIQUE_PATH_HNP = "UniquePathHNP"
NO_GUARANTEE = "NoGuarantee"


def reduced_rank(r: int) -> int:
    return max(0, r - 1)


@dataclass(frozen=True)
class HnpVerdict:
    """Ranks, product classification, applicable guarantee, and comparison.

    When the trimmed product is not semi-flower the intersection may not be
    finitely generated; ``rank_meet`` and everything derived from it are then
    None and no guarantee applies.
    """

    rank_h: int
    rank_k: int
    rank_meet: int | None
    rrk_h: int
    rrk_k: int
    rrk_meet: int | None
    product_bpi_count: int
    product_semiflower: bool
    condition_c: bool
    theorem_applied: str
    bound: int | None
    hnp_holds: bool | None
    bound_respected: bool | None
    profile: TwoBpiProfile | None

    def to_json_dict(self) -> dict:
        data = {
            "rank_h": self.rank_h,
            "rank_k": self.rank_k,
            "rank_meet": self.rank_meet,
            "rrk_h": self.rrk_h,
            "rrk_k": self.rrk_k,
            "rrk_meet": self.rrk_meet,
            "product_bpi_count": self.product_bpi_count,
            "product_semiflower": self.product_semiflower,
            "condition_c": self.condition_c,
            "theorem_applied": self.theorem_applied,
            "bound": self.bound,
            "hnp_holds": self.hnp_holds,
            "bound_respected": self.bound_respected,
            "profile": self.profile.to_json_dict() if self.profile else None,
        }
        return data


def verdict_dumps(verdict: HnpVerdict, indent: int | None = 2) -> str:
    return json.dumps(verdict.to_json_dict(), indent=indent, sort_keys=True)


def condition_c(h: SemiFlowerAutomaton, k: SemiFlowerAutomaton,
                prod: SemiFlowerAutomaton) -> bool:
    """Both operands deterministic with exactly one bpi each, and the trimmed
    product semi-flower with exactly two bpi's."""
    return (is_deterministic(h.inner) and is_deterministic(k.inner)
            and len(bpis(h)) == 1 and len(bpis(k)) == 1
            and len(bpis(prod)) == 2)


def _checked_flower(words: frozenset[str], alphabet, name: str) -> SemiFlowerAutomaton:
    if not words:
        raise EmptyGeneratorsError(f"generating set {name} is empty")
    offender = prefix_violation(words)
    if offender is not None:
        raise NotPrefixCodeError(
            f"generating set {name} is not a prefix code: "
            f"{offender[0]!r} is a proper prefix of {offender[1]!r}",
            offender=offender)
    return build_flower(words, alphabet)


@dataclass(frozen=True)
class PairMachines:
    """The automata behind a verdict: both flowers, the trimmed product, and
    its semi-flower wrapper when the product qualifies."""

    flower_h: SemiFlowerAutomaton
    flower_k: SemiFlowerAutomaton
    meet: Automaton
    meet_sfa: SemiFlowerAutomaton | None


def analyze_pair(x_h, x_k, alphabet=None) -> HnpVerdict:
    """Full verdict for the submonoids generated by two prefix codes.

    ``alphabet`` defaults to the union of the letters appearing in the two
    sets.  Raises EmptyGeneratorsError, NotPrefixCodeError, or
    UnknownLetterError when the inputs are unusable.
    """
    verdict, _ = analyze_pair_with_machines(x_h, x_k, alphabet)
    return verdict


def analyze_pair_with_machines(x_h, x_k, alphabet=None) -> tuple[HnpVerdict, PairMachines]:
    """Like :func:`analyze_pair` but also returns the constructed machines."""
    x_h = frozenset(x_h)
    x_k = frozenset(x_k)
    if alphabet is None:
        alphabet = frozenset("".join(x_h) + "".join(x_k))
    flower_h = _checked_flower(x_h, alphabet, "H")
    flower_k = _checked_flower(x_k, alphabet, "K")

    report_h = rank(flower_h)
    report_k = rank(flower_k)
    rrk_h = reduced_rank(report_h.rank_value)
    rrk_k = reduced_rank(report_k.rank_value)
    operands_unique_bpi = report_h.bpi_count <= 1 and report_k.bpi_count <= 1

    meet = trim(product(flower_h.inner, flower_k.inner))
    try:
        meet_sfa = as_semiflower(meet)
    except (NotTrimError, NoUniqueBaseError, CycleAvoidsBaseError):
        meet_sfa = None

    machines = PairMachines(flower_h=flower_h, flower_k=flower_k,
                            meet=meet, meet_sfa=meet_sfa)

    if meet_sfa is None:
        # a surviving cycle avoids the base pair: H meet K may be infinitely
        # generated, so no rank and no guarantee
        return HnpVerdict(
            rank_h=report_h.rank_value, rank_k=report_k.rank_value,
            rank_meet=None, rrk_h=rrk_h, rrk_k=rrk_k, rrk_meet=None,
            product_bpi_count=len(bpis(meet)), product_semiflower=False,
            condition_c=False, theorem_applied=NO_GUARANTEE, bound=None,
            hnp_holds=None, bound_respected=None, profile=None), machines

    report_meet = rank(meet_sfa)
    rrk_meet = reduced_rank(report_meet.rank_value)
    bpi_count = report_meet.bpi_count
    profile = two_bpi_profile(meet_sfa) if bpi_count in (1, 2) else None
    cond_c = condition_c(flower_h, flower_k, meet_sfa)

    if bpi_count <= 1 and operands_unique_bpi:
        theorem = UNIQUE_BPI_HNP
        bound = rrk_h * rrk_k
    elif bpi_count == 2 and operands_unique_bpi:
        bound = rrk_h * rrk_k + (profile.m - 1) * (profile.l - 1)
        theorem = UNIQUE_PATH_HNP if profile.l == 1 else TWO_BPI_BOUND
    else:
        theorem = NO_GUARANTEE
        bound = None

    return HnpVerdict(
        rank_h=report_h.rank_value, rank_k=report_k.rank_value,
        rank_meet=report_meet.rank_value,
        rrk_h=rrk_h, rrk_k=rrk_k, rrk_meet=rrk_meet,
        product_bpi_count=bpi_count, product_semiflower=True,
        condition_c=cond_c, theorem_applied=theorem, bound=bound,
        hnp_holds=rrk_meet <= rrk_h * rrk_k,
        bound_respected=None if bound is None else rrk_meet <= bound,
        profile=profile), machines


def verdict_exit_code(verdict: HnpVerdict) -> int:
    """0 when HNP holds, 1 when it fails, 2 when no guarantee applies."""
    if verdict.theorem_applied == NO_GUARANTEE:
        return 2
    return 0 if verdict.hnp_holds else 1
