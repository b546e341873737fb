"""Command-line entry point.

Exit status: 0 on success, 1 when a verification sweep finds a
disagreement, 2 on usage, validation or domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fo
from .generate import MONOID_KINDS, random_change_instance, random_instance
from .instances import FLAVORS, KINDS, InstanceError, parse
from .reductions import RULES, DomainError, apply_rule
from .solvers import ResourceLimitError, solve
from .verify import SAMPLERS, caps_from, sample, verify_rule


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def cmd_solve(args) -> int:
    _emit(solve(parse(_read(args.file))).to_json())
    return 0


def cmd_reduce(args) -> int:
    inst = parse(_read(args.file))
    out = apply_rule(args.rule, inst)
    _emit(out.to_json())
    return 0


def cmd_verify(args) -> int:
    caps = caps_from(args.max_n, args.max_m, args.max_k)
    report = verify_rule(args.rule, args.trials, args.seed, caps, args.bias)
    _emit(report.to_json())
    return 0 if report.ok else 1


def cmd_gen(args) -> int:
    caps = caps_from(args.max_n, args.max_m, args.max_k)
    if args.rule:
        inst = sample(args.rule, args.seed, 0, caps, args.bias)
    elif args.change:
        objective = tuple(args.objective) if args.objective else None
        if args.approx and objective is None:
            objective = (1, 1)
        inst = random_change_instance(args.seed, args.change, args.approx, caps, args.bias,
                                      objective=objective, k=args.k)
    else:
        inst = random_instance(args.seed, args.monoid, args.problem, not args.le, args.distinct,
                               caps, args.bias, k=args.k)
    _emit(inst.to_json())
    return 0


def cmd_mc(args) -> int:
    structure, sentence = fo.load_mc(_read(args.file))
    _emit({"result": fo.evaluate(structure, sentence), "length": fo.length(sentence)})
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monofact", description="Factorization problems in monoids.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide an instance file ('-' for stdin)")
    s.add_argument("file")
    s.set_defaults(run=cmd_solve)

    r = sub.add_parser("reduce", help="apply a reduction rule or chain")
    r.add_argument("--rule", required=True, choices=sorted(RULES))
    r.add_argument("file")
    r.set_defaults(run=cmd_reduce)

    def size_flags(q):
        q.add_argument("--max-n", type=int, default=None)
        q.add_argument("--max-m", type=int, default=None)
        q.add_argument("--max-k", type=int, default=None)
        q.add_argument("--bias", type=float, default=0.5, help="chance of a planted positive")

    v = sub.add_parser("verify", help="answer-preservation sweep for one rule")
    v.add_argument("--rule", required=True, choices=sorted(SAMPLERS))
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    size_flags(v)
    v.set_defaults(run=cmd_verify)

    g = sub.add_parser("gen", help="print a random instance")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--rule", choices=sorted(SAMPLERS), help="sample from the rule's domain")
    g.add_argument("--monoid", choices=MONOID_KINDS, default="symmetric")
    g.add_argument("--problem", choices=KINDS, default="SSS")
    g.add_argument("--le", action="store_true", help="at-most variant")
    g.add_argument("--distinct", action="store_true")
    g.add_argument("--change", choices=FLAVORS, help="emit a change-making instance")
    g.add_argument("--approx", action="store_true")
    g.add_argument("--objective", type=int, nargs=2, metavar=("A", "B"))
    g.add_argument("--k", type=int, default=None)
    size_flags(g)
    g.set_defaults(run=cmd_gen)

    m = sub.add_parser("mc", help="model-check a sentence on a finite structure")
    m.add_argument("file")
    m.set_defaults(run=cmd_mc)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except (InstanceError, DomainError, UsageError, fo.ParseError, fo.EvaluationError,
            ResourceLimitError, ValueError) as exc:
        print(f"monofact {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
