"""Command line interface: ``detset dset | witness | verify``.

Exit codes: 0 pass, 1 check failure, 2 budget exceeded, 3 value not
realizable, 4 no covering construction within budget, 5 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from .bounds import reports_to_csv
from .enumerate import EnumBudget, dset_cofactor, dset_naive
from .exceptions import BudgetExceeded, DetSetError, Insufficient, NotAMember
from .gadgets import coverage_certificate, synthesize_witness
from .ring import INTEGERS, RingSpec
from .setalg import format_set, parse_set
from .suites import DEFAULT_SEED, SUITES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BUDGET = 2
EXIT_NOT_MEMBER = 3
EXIT_INSUFFICIENT = 4
EXIT_USAGE = 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_ring_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, help="prime modulus of F_p")
    p.add_argument("--ring", choices=("fp", "int"), default="fp", help="fp (needs --p) or int")
    p.add_argument("--set", required=True, dest="set_literal", help='comma-separated integers, e.g. "0,1,3"')


def _add_output_args(p: argparse.ArgumentParser, formats=("json", "text")) -> None:
    p.add_argument("--format", choices=formats, default=formats[0])
    p.add_argument("--out", help="write output to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="detset", description="Exact determinant sets D_n(A).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dset", help="enumerate D_n(A)")
    _add_ring_args(d)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--method", choices=("naive", "cofactor", "both"), default="cofactor")
    d.add_argument("--max-matrices", type=int, default=10**7)
    d.add_argument("--max-seconds", type=float, default=None)
    d.add_argument("--jobs", type=int, default=1)
    _add_output_args(d, ("json", "text", "csv"))

    w = sub.add_parser("witness", help="build a verified witness matrix")
    _add_ring_args(w)
    w.add_argument("--m", type=int)
    w.add_argument("--n", type=int)
    w.add_argument("--target", type=int)
    w.add_argument("--cover", action="store_true", help="certify D_k(A) = F_p, one witness per element")
    w.add_argument("--budget", type=int, default=64, help="largest matrix size searched by --cover")
    _add_output_args(w, ("json",))

    v = sub.add_parser("verify", help="run check suites")
    v.add_argument("--suite", action="append", choices=sorted(SUITES), help="repeatable; default all")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--jobs", type=int, default=1)
    _add_output_args(v, ("json", "csv"))
    return parser


def _ring(args) -> RingSpec:
    if args.ring == "int":
        if args.p is not None:
            raise UsageError("--p is meaningless with --ring int")
        return INTEGERS
    if args.p is None:
        raise UsageError("--p is required unless --ring int")
    return RingSpec(args.p)


def _parse_set(args, ring):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        A = parse_set(args.set_literal, ring)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return A


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_dset(args) -> int:
    ring = _ring(args)
    A = _parse_set(args, ring)
    methods = ("naive", "cofactor") if args.method == "both" else (args.method,)
    results = {}
    for method in methods:
        budget = EnumBudget(args.max_matrices, args.max_seconds, method)
        fn = dset_naive if method == "naive" else dset_cofactor
        results[method] = fn(A, args.n, budget, jobs=args.jobs)
    D = results[methods[-1]]
    agree = len({r for r in results.values()}) == 1
    if args.format == "json":
        payload = {
            "ring": str(ring),
            "p": ring.p,
            "set": list(A.elements),
            "n": args.n,
            "method": args.method,
            "elements": list(D.elements),
            "size": len(D),
            "agree": agree,
        }
        text = json.dumps(payload, sort_keys=True)
    elif args.format == "csv":
        text = "element\n" + "\n".join(map(str, D.elements))
    else:
        text = f"{format_set(D)}\nsize {len(D)}"
        if not agree:
            text += "\nmismatch between naive and cofactor"
    _emit(args, text)
    return EXIT_OK if agree else EXIT_FAIL


def cmd_witness(args) -> int:
    ring = _ring(args)
    A = _parse_set(args, ring)
    if args.cover:
        cert = coverage_certificate(A, args.budget)
        payload = {"certificate": cert.to_json(), "witnesses": [w.to_json() for w in cert.witnesses()]}
    else:
        if args.m is None or args.n is None or args.target is None:
            raise UsageError("--m, --n and --target are required without --cover")
        payload = synthesize_witness(A, args.m, args.n, args.target).to_json()
    _emit(args, json.dumps(payload, sort_keys=True))
    return EXIT_OK


def _run_named(item):
    name, seed = item
    return run_suite(name, seed)


def cmd_verify(args) -> int:
    names = args.suite or list(SUITES)
    items = [(name, args.seed) for name in names]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            batches = list(pool.map(_run_named, items))
    else:
        batches = [_run_named(item) for item in items]
    reports = [r for batch in batches for r in batch]
    if args.format == "csv":
        text = reports_to_csv(reports)
    else:
        text = "\n".join(r.to_json() for r in reports)
    _emit(args, text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {"dset": cmd_dset, "witness": cmd_witness, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be >= 1")
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"BudgetExceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except NotAMember as exc:
        print(f"NotAMember: {exc}", file=sys.stderr)
        return EXIT_NOT_MEMBER
    except Insufficient as exc:
        print(f"Insufficient: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT
    except (UsageError, DetSetError, ValueError) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
