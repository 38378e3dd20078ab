"""Command-line front end.

Exit codes: 0 success, 1 decision NotVerballyClosed, 2 usage or parse
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import decision, harness
from .magnus import canon, eq, fox_derivatives, in_derived, is_identity, render, to_json, to_laurent
from .tags import BudgetExceeded, GroupTag
from .words import Word, WordSyntaxError, parse_word

EXIT_OK, EXIT_NOT_CLOSED, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

SUITES = ("eq1-search", "lemma22", "example51", "lemma53", "testelem-sampling")


class UsageError(Exception):
    pass


def _group(text: str) -> GroupTag:
    try:
        return GroupTag.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _default_word_budget(group: GroupTag) -> int:
    return 200 if group.derived_length <= 3 else 60


def _read_word(text: str, args) -> Word:
    if text == "-":
        text = sys.stdin.read()
    try:
        w = parse_word(text, args.group.rank)
    except WordSyntaxError as exc:
        raise UsageError(f"cannot parse {text.strip()!r}: {exc}")
    except ValueError as exc:
        raise UsageError(str(exc))
    if w.has_variables:
        raise UsageError(f"group elements must not contain variables: {text.strip()!r}")
    budget = args.word_budget or _default_word_budget(args.group)
    if len(w) > budget:
        raise BudgetExceeded(f"word of length {len(w)} exceeds the budget of {budget} letters")
    return w


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def cmd_normalize(args) -> int:
    w = _read_word(args.word, args)
    elem = canon(w, args.group)
    _emit(args, {"group": str(args.group), "word": str(w), "canonical": to_json(elem)}, render(elem))
    return EXIT_OK


def cmd_equal(args) -> int:
    u, v = _read_word(args.first, args), _read_word(args.second, args)
    same = eq(u, v, args.group)
    verdict = "equal" if same else "distinct"
    _emit(args, {"group": str(args.group), "result": verdict}, verdict)
    return EXIT_OK


def cmd_fox(args) -> int:
    w = _read_word(args.word, args)
    level = GroupTag.solvable(args.group.rank, 1)
    derivs = [str(to_laurent(a)) for a in fox_derivatives(w, level)]
    _emit(args, {"word": str(w), "derivatives": derivs},
          "\n".join(f"d{i + 1}: {d}" for i, d in enumerate(derivs)))
    return EXIT_OK


def _report_exit(args, report: decision.DecisionReport) -> int:
    payload = report.to_json()
    lines = [f"status: {report.status.value}"]
    if report.retraction is not None:
        lines += [f"rho(z{i + 1}) = {w}" for i, w in enumerate(report.retraction.images)]
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, payload, "\n".join(lines))
    return EXIT_NOT_CLOSED if report.status is decision.Status.NOT_VERBALLY_CLOSED else EXIT_OK


def cmd_retract_cyclic(args) -> int:
    h = _read_word(args.h, args)
    try:
        report = decision.cyclic_decide(h, args.group)
    except ValueError as exc:
        raise UsageError(str(exc))
    return _report_exit(args, report)


def cmd_retract_twogen(args) -> int:
    g, f = _read_word(args.g, args), _read_word(args.f, args)
    config = decision.SearchConfig(bound=args.bound, candidates=args.budget)
    try:
        report = decision.two_gen_decide(g, f, args.group, config)
    except ValueError as exc:
        raise UsageError(str(exc))
    return _report_exit(args, report)


def _eq1_search(args, congruence: bool) -> dict:
    group = args.group
    if congruence and not harness.lemma22_applies(group):
        print(f"warning: the congruence check is not established for {group}; refusing",
              file=sys.stderr)
        raise UsageError(f"lemma22 needs M(2) or MN(2,k) with k >= 4, got {group}")
    E = harness.build_eq1(group)
    r = group.rank
    alphabet = [Word.gen(1, r), Word.gen(2, r), parse_word("(z1,z2)", r)]
    result = harness.bounded_search(E, alphabet, args.bound, args.budget, strict=True)
    report = result.to_json()
    report["seed"] = args.seed
    report["alphabet"] = [str(a) for a in alphabet]
    if congruence:
        passed = sum(harness.lemma22_check(hit[:2], group) for hit in result.hits)
        report["congruence_checks"] = {"pass": passed, "fail": len(result.hits) - passed}
    return report


def _example51(args) -> dict:
    S23, S22 = GroupTag.solvable(2, 3), GroupTag.solvable(2, 2)
    u = harness.example51_u()
    text = str(u)
    return {"u": text, "length": len(u), "sha256": hashlib.sha256(text.encode()).hexdigest(),
            "nontrivial_in_S(2,3)": not is_identity(u, S23),
            "in_second_derived": in_derived(u, S23, 2),
            "trivial_in_S(2,2)": is_identity(u, S22)}


def _lemma53(args) -> dict:
    group = args.group if args.group_given else GroupTag.solvable(2, 2)
    v = parse_word(args.word or "(z1,z2)", group.rank)
    try:
        u = harness.lemma53_u(v, args.m, group)
        violation = False
    except harness.TestElementViolation:
        u, violation = None, True
    except ValueError as exc:
        raise UsageError(str(exc))
    return {"group": str(group), "v": str(v), "m": args.m,
            "u": str(u) if u is not None else None, "violation": violation}


def _sampling(args) -> dict:
    group = args.group if args.group_given else GroupTag.solvable(2, 3)
    u = parse_word(args.word, group.rank) if args.word else harness.example51_u()
    report = harness.test_element_sampling_check(u, group, args.samples, args.seed)
    out = report.to_json()
    out.update({"group": str(group), "u_length": len(u)})
    return out


def cmd_verify(args) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    if args.suite == "eq1-search":
        report = _eq1_search(args, congruence=False)
    elif args.suite == "lemma22":
        report = _eq1_search(args, congruence=True)
    elif args.suite == "example51":
        report = _example51(args)
    elif args.suite == "lemma53":
        report = _lemma53(args)
    else:
        report = _sampling(args)
    report = {"suite": args.suite, **report}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", type=_group, default=None,
                        help="M(r), S(r,d) or MN(r,k) (default M(2))")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--bound", type=int, default=None, help="search length bound")
    common.add_argument("--budget", type=int, default=None, help="candidate budget for searches")
    common.add_argument("--seed", type=int, default=0x5EED, help="RNG seed for sampling")
    common.add_argument("--word-budget", type=int, default=None,
                        help="maximum input word length (default 200, or 60 for d >= 4)")

    parser = argparse.ArgumentParser(prog="solvgroups", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[common], help="canonical form of a word")
    p.add_argument("word")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("equal", parents=[common], help="decide equality of two words")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equal)

    p = sub.add_parser("fox", parents=[common], help="abelianized Fox derivatives")
    p.add_argument("word")
    p.set_defaults(func=cmd_fox)

    p = sub.add_parser("retract-cyclic", parents=[common], help="decide whether gp(h) is a retract")
    p.add_argument("h")
    p.set_defaults(func=cmd_retract_cyclic)

    p = sub.add_parser("retract-twogen", parents=[common], help="decide whether gp(g, f) is a retract")
    p.add_argument("g")
    p.add_argument("f")
    p.set_defaults(func=cmd_retract_twogen)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--word", default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.group_given = args.group is not None
    if args.group is None:
        args.group = GroupTag.metabelian(2)
    defaults = decision.SearchConfig()
    if args.bound is None:
        args.bound = 2 if args.command == "verify" else defaults.bound
    if args.budget is None:
        args.budget = 100_000 if args.command == "verify" else defaults.candidates
    if args.bound < 0 or args.budget <= 0 or (args.word_budget is not None and args.word_budget <= 0):
        print("error: bounds and budgets must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
