"""Command line interface.

Subcommands: convert (regex to automaton), toregex (automaton to regex),
measure, equiv, gen (witness families), bench, rank (cycle rank and star
height).  Exit code 0 on success, 1 on domain errors, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import automata, bench, digraphs, elimination, expressions, families
from .constructions import CONSTRUCTION_NAMES, construct

_DEF_SEED = int(os.environ.get("REFA_SEED", "1"))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="refa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="build an automaton from a regular expression")
    p.add_argument("regex")
    p.add_argument("--to", choices=sorted(CONSTRUCTION_NAMES), default="pos")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("-o", "--output")

    p = sub.add_parser("toregex", help="convert an automaton file to a regular expression")
    p.add_argument("automaton")
    p.add_argument("--method", choices=("eliminate", "arden", "mny"), default="eliminate")
    p.add_argument("--order", default="greedy", help="strategy name or fixed:<comma list>")
    p.add_argument("--no-simplify", action="store_true", help="skip per-step simplification")
    p.add_argument("--unicode", action="store_true", help="print λ and ∅ instead of & and #")

    p = sub.add_parser("measure", help="size measures of a regular expression")
    p.add_argument("regex")

    p = sub.add_parser("equiv", help="decide language equality of two automaton files")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("gen", help="generate a witness family or a random DFA")
    p.add_argument("family", choices=families.FAMILIES + ("random",))
    p.add_argument("params", type=int, nargs="+")
    p.add_argument("--regex", action="store_true", help="emit the expression, not the automaton")
    p.add_argument("--seed", type=int, default=_DEF_SEED)
    p.add_argument("-o", "--output")

    p = sub.add_parser("bench", help="benchmark constructions or elimination orderings")
    p.add_argument("what", choices=("constructions", "orderings"))
    p.add_argument("--families", default="buffer=1,2,4,8;options=4,8,16", help="name=n1,n2;...")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--alphabet", type=int, default=2)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=_DEF_SEED)
    p.add_argument("-o", "--output")

    p = sub.add_parser("rank", help="cycle rank and, when defined, star height")
    p.add_argument("automaton")
    p.add_argument("--budget", type=int, default=18)
    return parser


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _parse_order(spec: str):
    if spec.startswith("fixed:"):
        return [int(s) if s.lstrip("-").isdigit() else s for s in spec[len("fixed:") :].split(",")]
    if spec in elimination.STRATEGIES:
        return spec
    raise ValueError(f"unknown order {spec!r}")


def _cmd_convert(args) -> int:
    aut = construct(args.to, expressions.parse(args.regex))
    if args.format == "dot":
        _emit(automata.to_dot(aut), args.output)
    else:
        import json

        _emit(json.dumps(automata.to_dict(aut), indent=2) + "\n", args.output)
    return 0


def _cmd_toregex(args) -> int:
    aut = automata.load(args.automaton)
    simplify_steps = not args.no_simplify
    if args.method == "eliminate":
        expr = elimination.state_elimination(aut, _parse_order(args.order), simplify_steps)
    elif args.method == "arden":
        expr = elimination.arden_solve(automata.remove_lambda(aut), simplify_steps)
    else:
        ranking = None
        if args.order.startswith("fixed:"):
            ranking = _parse_order(args.order)
        expr = elimination.mcnaughton_yamada(
            automata.remove_lambda(aut), ranking, simplify_steps
        )
    print(expressions.render(expr, unicode=args.unicode))
    return 0


def _cmd_measure(args) -> int:
    report = expressions.measures(expressions.parse(args.regex))
    for field in ("size", "rpn", "awidth", "height"):
        print(f"{field}: {getattr(report, field)}")
    return 0


def _cmd_equiv(args) -> int:
    left = automata.load(args.left)
    right = automata.load(args.right)
    witness = automata.distinguishing_word(left, right)
    if witness is None:
        print("equivalent")
    else:
        # witnesses are reported only after both automata confirm them
        assert automata.accepts(left, witness) != automata.accepts(right, witness)
        print(f"inequivalent: {''.join(witness) or '&'}")
    return 0


def _cmd_gen(args) -> int:
    if args.family == "random":
        n, k = args.params
        aut = families.random_dfa(n, k, args.seed)
        artifact = families.FamilyArtifact("random", (n, k), None, aut)
    else:
        artifact = families.gen_family(args.family, *args.params)
    if args.regex:
        if artifact.regex is None:
            raise ValueError(f"family {args.family} has no expression form")
        _emit(expressions.render(artifact.regex) + "\n", args.output)
        return 0
    if artifact.automaton is None:
        raise ValueError(f"family {args.family} has no automaton form; use --regex")
    import json

    _emit(json.dumps(automata.to_dict(artifact.automaton), indent=2) + "\n", args.output)
    return 0


def _cmd_bench(args) -> int:
    if args.what == "constructions":
        runs: dict[str, list[int]] = {}
        for part in args.families.split(";"):
            name, _, sizes = part.partition("=")
            runs[name.strip()] = [int(s) for s in sizes.split(",")]
        records = bench.bench_constructions(runs)
    else:
        records = bench.bench_orderings(
            n=args.n, alphabet_size=args.alphabet, samples=args.samples, seed=args.seed
        )
    _emit(bench.to_csv(records), args.output)
    if args.what == "orderings":
        for method, median in bench.summarize_orderings(records):
            print(f"median awidth {method}: {median:g}", file=sys.stderr)
    return 0


def _cmd_rank(args) -> int:
    aut = automata.load(args.automaton)
    dg = digraphs.underlying_digraph(aut)
    try:
        print(f"cycle rank: {digraphs.cycle_rank(dg, args.budget)}")
    except digraphs.CycleRankBudgetError:
        print(f"cycle rank upper bound: {digraphs.cycle_rank_upper(dg)}")
    try:
        height = digraphs.star_height_bideterministic(aut, args.budget)
        print(f"star height: {height}")
    except (digraphs.NotBideterministicError, automata.NotDeterministicError):
        print("star height: undetermined (not bideterministic)")
    except digraphs.CycleRankBudgetError:
        print("star height: not computed (exact cycle rank over budget)")
    return 0


_COMMANDS = {
    "convert": _cmd_convert,
    "toregex": _cmd_toregex,
    "measure": _cmd_measure,
    "equiv": _cmd_equiv,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
    "rank": _cmd_rank,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
