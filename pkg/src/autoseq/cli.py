"""Command-line interface: ``autoseq <command> ...``.

Sources are either a sequence definition file (JSON) or a generator
expression such as ``thue_morse:signed`` or ``dirichlet:5:2=i`` (see
:mod:`autoseq.generators`); ``--base`` applies to generators.

Exit codes: 0 success, 1 counterexample / absence / inconclusive,
2 malformed input.
"""
from __future__ import annotations

import argparse
import datetime
import json
import os
import sys
from typing import Optional, Sequence

from . import dfao as D
from . import seqfile
from .classifier import classify
from .generators import parse_generator
from .multiplicative import binary_reduction, check_multiplicative, prime_profiles
from .proofkit import (alpha_statistics, build_r_A, find_equal_shifts, find_geometric_one,
                       lte_divisibility_witness, unit_patch_products)

SCHEMA_VERSION = 1


class InputError(Exception):
    pass


def load_source(source: str, base: int) -> D.Dfao:
    if os.path.exists(source):
        return seqfile.load(source)
    if source.endswith(".json"):
        raise InputError(f"no such file: {source}")
    return parse_generator(source, base).build()


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pairs(text: str) -> list[tuple[int, int]]:
    out = []
    for item in filter(None, text.split(",")):
        p, sep, d = item.partition(":")
        try:
            out.append((int(p), int(d) if sep else 1))
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected p:delta pairs, got {item!r}") from None
    return out


def _flatten(doc, prefix: str = "") -> list[str]:
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            lines.extend(_flatten(doc[key], f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(doc, list) and any(isinstance(x, (dict, list)) for x in doc):
        for i, item in enumerate(doc):
            lines.extend(_flatten(item, f"{prefix}[{i}]"))
    elif isinstance(doc, list):
        lines.append(f"{prefix}: " + (", ".join(_scalar(x) for x in doc) if doc else "[]"))
    else:
        lines.append(f"{prefix}: {_scalar(doc)}")
    return lines


def _scalar(x) -> str:
    if x is None:
        return "none"
    if isinstance(x, bool):
        return "true" if x else "false"
    return str(x)


def emit(doc: dict, args: argparse.Namespace, text: Optional[str] = None) -> None:
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command_name, **doc}
    if args.verbose:
        doc["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif text is not None and not args.verbose:
        sys.stdout.write(text.rstrip("\n") + "\n")
    else:
        sys.stdout.write("\n".join(_flatten(doc)) + "\n")


def cmd_eval(args) -> int:
    a = load_source(args.source, args.base)
    v = D.evaluate(a, args.n)
    emit({"n": args.n, "value": str(v), "value_exact": v.to_json()}, args, str(v))
    return 0


def cmd_kernel(args) -> int:
    a = load_source(args.source, args.base)
    info = D.kernel(a)
    doc = {"base": info.base, "s0": info.s0, "k0": info.k0, "s0_with_zero": info.s0_with_zero,
           "representatives": [list(p) for p in info.representatives]}
    if args.certify:
        doc["certified"] = D.certify_kernel(a, info)
    emit(doc, args)
    return 0 if doc.get("certified", True) else 1


def cmd_minimize(args) -> int:
    a = load_source(args.source, args.base)
    m = D.minimize(a)
    emit({"states_before": a.num_states, "states_after": m.num_states,
          "machine": seqfile.to_dict(m)}, args, seqfile.dumps(m))
    return 0


def cmd_equal(args) -> int:
    a = load_source(args.left, args.base)
    b = load_source(args.right, args.base)
    res = D.equal(a, b)
    doc = {"equal": res.equal, "witness": res.witness, "certificate": res.certificate()}
    if not res.equal:
        doc["left_value"] = str(D.evaluate(a, res.witness))
        doc["right_value"] = str(D.evaluate(b, res.witness))
    text = "equal" if res.equal else (
        f"counterexample n={res.witness}: {doc['left_value']} != {doc['right_value']}")
    emit(doc, args, text)
    return 0 if res.equal else 1


def cmd_check_mult(args) -> int:
    a = load_source(args.source, args.base)
    rep = check_multiplicative(a, args.N, complete=args.complete)
    doc = rep.as_dict()
    doc["profiles"] = ([p.as_dict() for p in prime_profiles(a, args.profiles, args.E)]
                       if args.profiles else [])
    emit(doc, args)
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    a = load_source(args.source, args.base)
    c = classify(a, N=args.N, P=args.P, Qmax=args.Qmax, E=args.E)
    emit(c.as_dict(), args)
    return 0 if c.conclusive else 1


def cmd_probe(args) -> int:
    a = load_source(args.source, args.base)
    ep = D.geometric_probe(a, args.A, args.C, args.m0, args.r)
    emit({"A": args.A, "C": args.C, "m0": args.m0, "r": args.r,
          "preperiod": [str(v) for v in ep.preperiod], "period": [str(v) for v in ep.period]}, args)
    return 0


def _proof_source(args) -> D.Dfao:
    a = load_source(args.source, args.base)
    return binary_reduction(a) if args.binary else a


def cmd_find_shifts(args) -> int:
    w = find_equal_shifts(_proof_source(args), args.r, args.A)
    emit({"found": w is not None, **(w.as_dict() if w else {})}, args)
    return 0 if w else 1


def cmd_find_geometric(args) -> int:
    w = find_geometric_one(_proof_source(args), args.r)
    emit({"found": w is not None, **(w.as_dict() if w else {})}, args)
    return 0 if w else 1


def cmd_lte_witness(args) -> int:
    w = lte_divisibility_witness(args.p, args.q, args.A, args.C, args.m0, args.r, args.k)
    emit({"p": args.p, "q": args.q, "A": args.A, "C": args.C, "m0": args.m0, "r": args.r,
          **w.as_dict()}, args)
    return 0


def cmd_build_ra(args) -> int:
    res = build_r_A(args.primes, args.q, args.A)
    emit({"primes": args.primes, "q": args.q, "A": args.A, **res.as_dict()}, args)
    return 0


def cmd_unit_patch(args) -> int:
    cov = unit_patch_products(args.Y, args.q, args.alpha, args.alpha1)
    emit({"Y": [list(p) for p in args.Y], **cov.as_dict()}, args)
    return 0 if cov.covered else 1


def cmd_alpha_stats(args) -> int:
    a = _proof_source(args)
    hist = alpha_statistics(prime_profiles(a, args.P, args.E))
    emit({"P": args.P, "E": args.E, "histogram": {str(k): v for k, v in hist.items()}}, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--base", type=int, default=2, help="base for generator sources")
    common.add_argument("--verbose", action="store_true", help="add a timestamp to the report")

    parser = argparse.ArgumentParser(prog="autoseq", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, parent=sub):
        p = parent.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func, command_name=name)
        return p

    p = add("eval", cmd_eval, "evaluate f(n)")
    p.add_argument("source")
    p.add_argument("n", type=int)

    p = add("kernel", cmd_kernel, "q-kernel, s0 and k0")
    p.add_argument("source")
    p.add_argument("--certify", action="store_true", help="re-check by equality decisions")

    p = add("minimize", cmd_minimize, "minimal machine as a sequence file")
    p.add_argument("source")

    p = add("equal", cmd_equal, "decide equality of two sequences")
    p.add_argument("left")
    p.add_argument("right")

    p = add("check-mult", cmd_check_mult, "multiplicativity up to N")
    p.add_argument("source")
    p.add_argument("--N", type=int, default=10**4)
    p.add_argument("--complete", action="store_true")
    p.add_argument("--profiles", type=int, default=0, metavar="P", help="attach prime profiles up to P")
    p.add_argument("--E", type=int, default=6)

    p = add("classify", cmd_classify, "character / vanishing classification")
    p.add_argument("source")
    p.add_argument("--N", type=int, default=10**4)
    p.add_argument("--P", type=int, default=10**5)
    p.add_argument("--Qmax", type=int, default=None)
    p.add_argument("--E", type=int, default=6)

    p = add("probe", cmd_probe, "describe n -> f(q^(A+Cn) m0 + r)")
    p.add_argument("source")
    for flag in ("--A", "--C", "--m0", "--r"):
        p.add_argument(flag, type=int, required=True)

    proof = sub.add_parser("proof", help="mechanized proof steps")
    psub = proof.add_subparsers(dest="proof_command", required=True)

    p = add("find-shifts", cmd_find_shifts, "equal subsequences at two exponents", psub)
    p.add_argument("source")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--A", type=int, required=True)
    p.add_argument("--binary", action="store_true", help="apply the binary reduction first")

    p = add("find-geometric", cmd_find_geometric, "f = 1 along q^(A+Cn) m0 + r", psub)
    p.add_argument("source")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--binary", action="store_true")

    p = add("lte-witness", cmd_lte_witness, "n with p^k || q^(A+Cn) m0 + r", psub)
    for flag in ("--p", "--q", "--A", "--C", "--m0", "--r", "--k"):
        p.add_argument(flag, type=int, required=True)

    p = add("build-rA", cmd_build_ra, "CRT residue r_A", psub)
    p.add_argument("--primes", type=_int_list, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--A", type=int, required=True)

    p = add("unit-patch", cmd_unit_patch, "subset products covering 1 + q^alpha Z", psub)
    p.add_argument("--Y", type=_pairs, required=True, help="p:delta pairs, e.g. 5:1,3:2")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--alpha1", type=int, required=True)

    p = add("alpha-stats", cmd_alpha_stats, "histogram of alpha_p", psub)
    p.add_argument("source")
    p.add_argument("--P", type=int, default=1000)
    p.add_argument("--E", type=int, default=6)
    p.add_argument("--binary", action="store_true")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputError, ValueError, ArithmeticError, OSError) as exc:
        print(f"autoseq {args.command_name}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
