"""Command-line front end.

Subcommands: rank, product, hnp, bpr, oracle, fuzz.  Text mode writes
human-readable lines to stdout; --json emits exactly one JSON document on
stdout instead, so the two never interleave.  Diagnostics go to stderr.

Exit codes: 0 success (for hnp: the property holds), 1 hnp fails,
2 precondition/parse error or no guarantee.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import automaton as aut
from .errors import SemiflowerError, TooManyBpisError
from .flower import (
    as_semiflower,
    build_flower,
    parse_generator_lines,
    prefix_violation,
)
from .fuzz import run_campaign
from .hnp import NO_GUARANTEE, analyze_pair, verdict_dumps, verdict_exit_code
from .oracle import FuzzConfig, minimal_generators
from .rank import (
    CYCLE_COUNT,
    TWO_BPI_FORMULA,
    UNIQUE_BPI_FORMULA,
    bpr,
    bpr_to_dot,
    rank,
    rank_report_dumps,
)

EXIT_OK = 0
EXIT_HNP_FAILS = 1
EXIT_ERROR = 2


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_ERROR


def _read_generators(path: str, alphabet: str | None):
    """Words with their line numbers, plus the pinned or inferred alphabet."""
    with open(path, encoding="utf-8") as fh:
        numbered = parse_generator_lines(fh)
    words = frozenset(w for _, w in numbered)
    letters = frozenset(alphabet) if alphabet else frozenset("".join(words))
    return numbered, words, letters


def _prefix_code_or_die(path: str, numbered, words) -> None:
    offender = prefix_violation(words)
    if offender is not None:
        lines = {w: n for n, w in reversed(numbered)}
        raise SemiflowerError(
            f"{path}: not a prefix code: {offender[0]!r} (line {lines[offender[0]]}) "
            f"is a proper prefix of {offender[1]!r} (line {lines[offender[1]]})")


def _load_automaton_or_flower(path: str, alphabet: str | None):
    """An automaton JSON file, or a generator file built into a flower."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return as_semiflower(aut.loads(text))
    numbered = parse_generator_lines(text.splitlines())
    words = frozenset(w for _, w in numbered)
    letters = frozenset(alphabet) if alphabet else frozenset("".join(words))
    return build_flower(words, letters)


def cmd_rank(args) -> int:
    numbered, words, letters = _read_generators(args.generators, args.alphabet)
    _prefix_code_or_die(args.generators, numbered, words)
    flower = build_flower(words, letters)
    report = rank(flower)
    if args.json:
        print(rank_report_dumps(report))
        return EXIT_OK
    detail = {
        UNIQUE_BPI_FORMULA: lambda r: (
            f"unique bpi, |F|-|Q|+1 = {len(flower.transitions)}-{len(flower.states)}+1"),
        TWO_BPI_FORMULA: lambda r: (
            f"two bpis, m*l+k = {r.profile.m}*{r.profile.l}+{r.profile.k}"),
        CYCLE_COUNT: lambda r: "three or more bpis, cycle count",
    }[report.method](report)
    if report.bpi_count == 0:
        print(f"rank {report.rank_value}")
    else:
        print(f"rank {report.rank_value} ({detail})")
    print(f"method {report.method}, bpi count {report.bpi_count}, "
          f"exact {report.exact}")
    if report.profile is not None:
        p = report.profile
        print(f"profile p={p.p} q={p.q} m={p.m} l={p.l} k={p.k}")
    return EXIT_OK


def cmd_product(args) -> int:
    with open(args.left, encoding="utf-8") as fh:
        a = aut.loads(fh.read())
    with open(args.right, encoding="utf-8") as fh:
        b = aut.loads(fh.read())
    result = aut.product(a, b)
    if args.trim:
        result = aut.trim(result)
    if args.dot:
        print(aut.to_dot(result), end="")
    else:
        print(aut.dumps(result))
    return EXIT_OK


def cmd_hnp(args) -> int:
    _, words_h, letters_h = _read_generators(args.h_generators, args.alphabet)
    _, words_k, letters_k = _read_generators(args.k_generators, args.alphabet)
    letters = frozenset(args.alphabet) if args.alphabet else letters_h | letters_k
    if args.reduce:
        words_h = minimal_generators(words_h).words
        words_k = minimal_generators(words_k).words
    verdict = analyze_pair(words_h, words_k, letters)
    if args.json:
        print(verdict_dumps(verdict))
    else:
        print(f"rank H = {verdict.rank_h}, rank K = {verdict.rank_k}, "
              f"rank of intersection = {verdict.rank_meet}")
        print(f"reduced ranks: {verdict.rrk_meet} vs "
              f"{verdict.rrk_h}*{verdict.rrk_k} = {verdict.rrk_h * verdict.rrk_k}")
        print(f"product: semiflower={verdict.product_semiflower}, "
              f"bpis={verdict.product_bpi_count}, condition C={verdict.condition_c}")
        print(f"guarantee {verdict.theorem_applied}, bound {verdict.bound}, "
              f"bound respected {verdict.bound_respected}")
        if verdict.hnp_holds is None:
            print("hnp undetermined (intersection may be infinitely generated)")
        else:
            relation = "<=" if verdict.hnp_holds else ">"
            print(f"hnp {'holds' if verdict.hnp_holds else 'fails'}: "
                  f"{verdict.rrk_meet} {relation} {verdict.rrk_h * verdict.rrk_k}")
    return verdict_exit_code(verdict)


def cmd_bpr(args) -> int:
    flower = _load_automaton_or_flower(args.input, args.alphabet)
    summary = bpr(flower)
    if args.dot:
        print(bpr_to_dot(summary), end="")
        return EXIT_OK
    if args.json:
        print(json.dumps(summary.to_json_dict(), indent=2, sort_keys=True))
        return EXIT_OK
    print(f"base {summary.base}, bpis {list(summary.bpis)}")
    for (src, dst), labels in sorted(summary.path_labels.items()):
        print(f"paths {src} -> {dst}: {', '.join(labels)}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    _, words, _ = _read_generators(args.generators, None)
    result = minimal_generators(words)
    if args.json:
        print(json.dumps({
            "minimal": sorted(result.words),
            "rank": len(result.words),
            "removed": [{"word": w, "witness": list(parts)}
                        for w, parts in result.removed],
        }, indent=2, sort_keys=True))
        return EXIT_OK
    print(f"rank {len(result.words)}")
    print(f"minimal generators: {', '.join(sorted(result.words)) or '(none)'}")
    for word, witness in result.removed:
        print(f"removed {word} = {'.'.join(witness)}")
    return EXIT_OK


def cmd_fuzz(args) -> int:
    cfg = FuzzConfig(seed=args.seed, alphabet_size=args.alphabet_size,
                     max_generators=args.max_generators,
                     max_word_len=args.max_word_len, trials=args.trials)
    summary = run_campaign(cfg, log_path=args.report,
                           language_maxlen=args.language_maxlen or None)
    if args.json:
        print(json.dumps(summary.to_json_dict(), indent=2, sort_keys=True))
    else:
        data = summary.to_json_dict()
        print(f"trials {data['trials']}, product bpi histogram "
              f"{data['product_bpi_histogram']}")
        print(f"non-semiflower products {data['non_semiflower_products']}, "
              f"condition C pairs {data['condition_c_pairs']} "
              f"(unique path {data['unique_path_pairs']}, "
              f"bound tight {data['bound_tight_pairs']})")
        print(f"hnp failures {data['hnp_failures']}, findings {data['findings']}, "
              f"violations {len(summary.violations)}")
        for message in summary.violations:
            print(f"violation: {message}")
    return EXIT_OK if summary.ok else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="semiflower",
        description="Semi-flower automata, submonoid ranks, and the "
                    "Hanna Neumann property.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank of the submonoid generated by a prefix code")
    p.add_argument("generators", help="file with one generator word per line")
    p.add_argument("--alphabet", help="pin the alphabet, e.g. 'ab'")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("product", help="synchronous product of two automaton JSON files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--trim", action="store_true", help="trim the result")
    p.add_argument("--dot", action="store_true", help="emit Graphviz instead of JSON")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("hnp", help="Hanna Neumann verdict for two generating sets")
    p.add_argument("h_generators")
    p.add_argument("k_generators")
    p.add_argument("--alphabet")
    p.add_argument("--json", action="store_true")
    p.add_argument("--reduce", action="store_true",
                   help="replace inputs by their minimal generating sets first")
    p.set_defaults(func=cmd_hnp)

    p = sub.add_parser("bpr", help="bpi's-and-paths summary of an automaton or flower")
    p.add_argument("input", help="automaton JSON file or generator file")
    p.add_argument("--alphabet")
    p.add_argument("--json", action="store_true")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_bpr)

    p = sub.add_parser("oracle", help="minimal generating set by decomposability elimination")
    p.add_argument("generators")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("fuzz", help="seeded invariant-checking campaign")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--alphabet-size", type=int, default=2)
    p.add_argument("--max-generators", type=int, default=6)
    p.add_argument("--max-word-len", type=int, default=5)
    p.add_argument("--language-maxlen", type=int, default=8,
                   help="bounded language check per trial; 0 disables")
    p.add_argument("--report", help="append findings to this NDJSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SemiflowerError as exc:
        return _fail(str(exc))
    except OSError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
