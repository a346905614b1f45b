"""Seeded fuzz campaigns over random prefix-code pairs.

Each trial draws two prefix codes, runs the full pair analysis, and checks
every structural invariant the formulas promise: formula ranks against the
brute-force oracle, the degree identities, the product out-degree bound, the
two-bpi structure lemma, the rank bound, and (optionally) bounded language
equality of the product against memberwise intersection.  Violations are
collected, never raised, so a campaign always runs to completion; findings
worth replaying are appended to a newline-delimited JSON log keyed by seed
and trial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .hnp import UNIQUE_BPI_HNP, analyze_pair_with_machines
from .oracle import FuzzConfig, language_upto, oracle_rank, random_prefix_code
from .rank import (
    verify_euler_identity,
    verify_product_bpo_bound,
    verify_rank_identity_two_bpi,
    verify_two_bpi_lemma,
)


@dataclass
class CampaignSummary:
    """Counts and findings of one deterministic campaign."""

    seed: int
    trials: int = 0
    product_bpi_histogram: dict[int, int] = field(default_factory=dict)
    non_semiflower_products: int = 0
    condition_c_pairs: int = 0
    unique_path_pairs: int = 0
    hnp_failures: int = 0
    bound_tight_pairs: int = 0
    violations: list[str] = field(default_factory=list)
    findings: int = 0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trials": self.trials,
            "product_bpi_histogram": {str(k): v for k, v in
                                      sorted(self.product_bpi_histogram.items())},
            "non_semiflower_products": self.non_semiflower_products,
            "condition_c_pairs": self.condition_c_pairs,
            "unique_path_pairs": self.unique_path_pairs,
            "hnp_failures": self.hnp_failures,
            "bound_tight_pairs": self.bound_tight_pairs,
            "violations": self.violations,
            "findings": self.findings,
        }


class _FindingLog:
    def __init__(self, path):
        self.path = path
        self.handle = open(path, "a", encoding="utf-8") if path else None
        self.count = 0

    def write(self, entry: dict) -> None:
        self.count += 1
        if self.handle:
            self.handle.write(json.dumps(entry, sort_keys=True) + "\n")

    def close(self) -> None:
        if self.handle:
            self.handle.close()


def run_trial(cfg: FuzzConfig, trial: int, summary: CampaignSummary,
              log: _FindingLog, language_maxlen: int | None) -> None:
    x_h = random_prefix_code(cfg, f"{trial}:h")
    x_k = random_prefix_code(cfg, f"{trial}:k")
    base_entry = {"seed": cfg.seed, "trial": trial,
                  "h": sorted(x_h), "k": sorted(x_k)}

    def violate(message: str) -> None:
        summary.violations.append(f"trial {trial}: {message}")
        log.write({**base_entry, "kind": "invariant_violation", "message": message})

    verdict, machines = analyze_pair_with_machines(x_h, x_k, cfg.alphabet)
    flower_h, flower_k = machines.flower_h, machines.flower_k

    for name, flower, reported in (("h", flower_h, verdict.rank_h),
                                   ("k", flower_k, verdict.rank_k)):
        if oracle_rank(flower) != reported:
            violate(f"operand {name}: formula rank {reported} != oracle")
        if flower.transitions and not verify_euler_identity(flower):
            violate(f"operand {name}: degree identity failed")
    if not verify_product_bpo_bound(flower_h.inner, flower_k.inner):
        violate("product out-degree bound failed")

    if verdict.product_semiflower:
        summary.product_bpi_histogram[verdict.product_bpi_count] = \
            summary.product_bpi_histogram.get(verdict.product_bpi_count, 0) + 1
        meet_sfa = machines.meet_sfa
        if oracle_rank(meet_sfa) != verdict.rank_meet:
            violate(f"product: formula rank {verdict.rank_meet} != oracle")
        if meet_sfa.transitions and not verify_euler_identity(meet_sfa):
            violate("product: degree identity failed")
        if verdict.product_bpi_count == 2:
            if not verify_two_bpi_lemma(meet_sfa):
                violate("product: two-bpi structure lemma failed")
            if not verify_rank_identity_two_bpi(meet_sfa):
                violate("product: two-bpi rank identity failed")
        if verdict.bound is not None and not verdict.bound_respected:
            violate(f"rank bound violated: rrk_meet {verdict.rrk_meet} "
                    f"> bound {verdict.bound}")
        if verdict.theorem_applied == UNIQUE_BPI_HNP and not verdict.hnp_holds:
            violate("unique-bpi product but HNP failed")
        if (verdict.condition_c and verdict.profile.l == 1
                and not verdict.hnp_holds):
            violate("unique feeding path but HNP failed")
    else:
        summary.non_semiflower_products += 1
        log.write({**base_entry, "kind": "non_semiflower_product"})

    if verdict.condition_c:
        summary.condition_c_pairs += 1
        entry = {**base_entry, "kind": "condition_c",
                 "profile": verdict.profile.to_json_dict(),
                 "ranks": [verdict.rank_h, verdict.rank_k, verdict.rank_meet],
                 "hnp_holds": verdict.hnp_holds}
        log.write(entry)
        if verdict.profile.l == 1:
            summary.unique_path_pairs += 1
        if verdict.rrk_meet == verdict.bound:
            summary.bound_tight_pairs += 1
            log.write({**base_entry, "kind": "bound_tight", "bound": verdict.bound})
    if verdict.hnp_holds is False:
        summary.hnp_failures += 1
        log.write({**base_entry, "kind": "hnp_failure",
                   "product_bpi_count": verdict.product_bpi_count,
                   "rrk": [verdict.rrk_h, verdict.rrk_k, verdict.rrk_meet]})

    if language_maxlen and verdict.product_semiflower:
        lang_meet = language_upto(machines.meet, language_maxlen)
        lang_h = language_upto(flower_h.inner, language_maxlen)
        lang_k = language_upto(flower_k.inner, language_maxlen)
        if lang_meet != lang_h & lang_k:
            violate(f"product language differs from intersection "
                    f"up to length {language_maxlen}")


def run_campaign(cfg: FuzzConfig, log_path=None,
                 language_maxlen: int | None = 8) -> CampaignSummary:
    """Run ``cfg.trials`` independent trials; deterministic in the seed.

    ``language_maxlen`` bounds the per-trial language comparison (None skips
    it, which makes large campaigns considerably faster).
    """
    summary = CampaignSummary(seed=cfg.seed)
    log = _FindingLog(log_path)
    try:
        for trial in range(cfg.trials):
            summary.trials += 1
            run_trial(cfg, trial, summary, log, language_maxlen)
    finally:
        summary.findings = log.count
        log.close()
    return summary
