"""Command line entry point.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for usage errors, 3 for malformed input files, 4 when a size guard or
search budget is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bundles, core, divisibility as dv, euler, suite, villadsen
from .core import INF

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_MALFORMED, EXIT_GUARD = 0, 1, 2, 3, 4


class MalformedInput(Exception):
    pass


def _emit(records: list[dict], lines: list[str], fmt: str) -> None:
    if fmt == "records":
        for rec in records:
            print(json.dumps(rec, sort_keys=True, separators=(",", ":")))
    else:
        for line in lines:
            print(line)


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def _load_family(path: str) -> euler.SetFamily:
    try:
        return euler.SetFamily.from_record(_read_json(path))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from exc


def _fmt_value(v) -> str:
    return "inf" if v == INF else str(v)


# ---------------------------------------------------------------------------
# subcommands


def cmd_matrix_div(args) -> int:
    v = dv.matrix_div(args.m, args.k)
    rec = {"m": args.m, "k": args.k, "value": "inf" if v == INF else v}
    _emit([rec], [f"Div_{args.m}(M_{args.k}) = {_fmt_value(v)}"], args.format)
    return EXIT_OK


def cmd_analyze(args) -> int:
    try:
        model = core.load_model(_read_json(args.model))
    except core.ModelError as exc:
        raise MalformedInput(f"invalid model: {exc}") from exc
    u = model.unit
    if args.u is not None:
        if args.u in model.labels:
            u = model.labels.index(args.u)
        else:
            try:
                u = int(args.u)
            except ValueError:
                raise MalformedInput(f"unknown element {args.u!r}") from None
            if not 0 <= u < model.size:
                raise MalformedInput(f"element index {u} out of range")
    kinds = [dv.DivKind.parse(args.kind)] if args.kind else list(dv.DivKind)
    records, lines, ok = [], [f"model {model.name} ({model.size} elements), u = {model.label(u)}"], True
    for kind in kinds:
        rep = dv.least(model, u, kind, args.m, args.cutoff)
        ok &= rep.recheck(model)
        records.append(rep.to_record(model))
        wit = "-" if rep.witness is None else "(" + ", ".join(model.label(x) for x in rep.witness) + ")"
        tag = f"  [{rep.proof_tag}]" if rep.proof_tag else ""
        lines.append(f"{kind.value:8s} m={args.m}  value={rep.value_text():6s} witness={wit}{tag}")
    _emit(records, lines, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_euler(args) -> int:
    fam = _load_family(args.family)
    rec: dict = {"family": fam.to_record()}
    try:
        poly = euler.euler_of_family(fam)
        rec["euler"] = poly.to_record()
        rec["source"] = "polynomial"
        nonzero = bool(poly)
        shown = str(poly)
    except euler.TermBudgetExceeded as exc:
        nonzero = euler.hall_check(fam).feasible
        rec["euler"] = None
        rec["source"] = "hall_check (term guard exceeded)"
        shown = f"<{exc}>"
    rec["nonvanishing"] = nonzero
    lines = [f"e = {shown}", f"nonvanishing: {nonzero}  (via {rec['source']})"]
    _emit([rec], lines, args.format)
    return EXIT_OK if nonzero else EXIT_FAIL


def cmd_hall(args) -> int:
    fam = _load_family(args.family)
    try:
        cert = euler.hall_check(fam)
    except OverflowError as exc:
        raise bundles.GuardViolation(str(exc)) from exc
    rec = cert.to_record()
    if cert.feasible:
        lines = ["feasible: transversal"] + [
            f"  {sorted(s)} x{c}: {list(r)}" for (s, c), r in zip(fam.members, cert.transversal)
        ]
    else:
        union = sorted(frozenset().union(*(s for s, _ in cert.violator)))
        need = sum(c for _, c in cert.violator)
        lines = ["infeasible: Hall violator"] + [f"  {sorted(s)} x{c}" for s, c in cert.violator]
        lines.append(f"  union size {len(union)} < {need}")
    _emit([rec], lines, args.format)
    return EXIT_OK if cert.feasible else EXIT_FAIL


def cmd_villadsen(args) -> int:
    variant = args.variant
    if variant == "simple2":
        spec = villadsen.build("simple2", None, args.n)
    else:
        if args.N is None:
            raise UsageError(f"--N is required for {variant}")
        spec = villadsen.build(variant, args.N, args.n)
    records = [{"construction": spec.to_record()}]
    lines = [
        f"construction {variant} N={spec.N} n={spec.n}: d_n={spec.d_n}, rank={spec.q_n.rank}",
        f"  block sizes {[len(b) for b in spec.J]}",
    ]
    ok = True
    if variant == "simple1":
        if args.n < 2:
            raise UsageError("simple1 verification needs --n >= 2")
        iv = villadsen.verify_thm_simple(args.N, args.n)
        ok = iv.recheck() and (iv.lower, iv.upper) == (args.N, 3 * args.N + 4)
        records.append({"interval": iv.to_record()})
        lines.append(f"  div_2 / Div_2 in {iv.text()}")
        lines.append(f"  {iv.provenance}")
    elif variant == "simple2":
        k = args.k if args.k is not None else args.n
        verdict, cert = villadsen.verify_lm_simple2(k, args.n)
        if isinstance(verdict, bundles.RankVerdict):
            records.append({"k": k, "verdict": verdict.text()})
            lines.append(f"  k={k}: {verdict.text()}")
        else:
            ok = bool(verdict) and cert.recheck()
            records.append({"k": k, "lower_bound_certified": verdict, "certificate": cert.to_record()})
            lines.append(f"  k={k}: div_{2**k} > {2**k * k}: {verdict}")
    else:
        m = args.m if args.m is not None else 1
        verdict, cert = villadsen.verify_thm_inf_tensor(args.N, m, args.n)
        ok = verdict and cert.recheck()
        records.append({"m": m, "lower_bound_certified": verdict, "certificate": cert.to_record()})
        lines.append(f"  {m}-fold tensor: div_2 > {args.N}: {verdict}")
    _emit(records, lines, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify_suite(args) -> int:
    results = suite.run_suites(args.seed, args.filter)
    if not results:
        raise UsageError(f"no suite matches {args.filter!r}")
    records = [dict(r.to_record(), seed=args.seed) for r in results]
    lines = [f"seed {args.seed}"] + [
        f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.checked} checks)" for r in results
    ]
    _emit(records, lines, args.format)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table", help="output format")

    parser = argparse.ArgumentParser(prog="cudiv", description="Divisibility numbers of finite Cuntz semigroup models")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("matrix-div", parents=[common], help="closed formula for matrix algebras")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.set_defaults(func=cmd_matrix_div)

    p = sub.add_parser("analyze", parents=[common], help="least-n reports for a model file")
    p.add_argument("--model", required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--kind", choices=[k.value for k in dv.DivKind])
    p.add_argument("--cutoff", type=_positive, default=dv.DEFAULT_CUTOFF)
    p.add_argument("--u", help="element label or index (default: the model's unit)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("euler", parents=[common], help="Euler class of a family of line bundles")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("hall", parents=[common], help="transversal or Hall violator of a family")
    p.add_argument("--family", required=True)
    p.set_defaults(func=cmd_hall)

    p = sub.add_parser("villadsen", parents=[common], help="construction data and certified bounds")
    p.add_argument("--variant", choices=villadsen.VARIANTS, required=True)
    p.add_argument("--N", type=_positive)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--k", type=_positive, help="simple2: check div_{2^k} (default k = n)")
    p.add_argument("--m", type=_positive, help="inf_tensor: number of tensor factors (default 1)")
    p.set_defaults(func=cmd_villadsen)

    p = sub.add_parser("verify-suite", parents=[common], help="run the seeded invariant suites")
    p.add_argument("--filter", help="only suites whose name contains this text")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cudiv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MalformedInput as exc:
        print(f"cudiv: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (bundles.GuardViolation, dv.SearchSpaceTooLarge, euler.InstanceTooLarge) as exc:
        print(f"cudiv: guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
