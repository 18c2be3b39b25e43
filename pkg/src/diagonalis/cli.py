"""Command-line interface.

Subcommands: expand, diag, recur, identity, geometry.  Output is text by
default; --format json/csv where it makes sense.  Exit code 0 iff all
requested checks pass.  Box caches use the versioned text format from
`seriesbox`; relative cache paths resolve against $DIAGONALIS_CACHE.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import family as family_mod
from .exactalg import UniPoly, rat, rat_str
from .family import FamilySpec, named_instance
from .geometry import (box_positivity_bisect, critical_points_diag,
                       nonsmooth_locus_3d, sturm_isolate)
from .identities import IDENTITIES, verify_identity
from .multipoly import scale_variables
from .sequences import (SequenceWindow, binomial_oracle, builtin_recurrence,
                        characteristic_polynomial, extract_diagonal,
                        recurrence_check, recurrence_extend, recurrence_guess,
                        recurrence_seed)
from .seriesbox import (DEFAULT_ENTRY_LIMIT, expand_reciprocal,
                        first_nonpositive, lambda_coefficient_check,
                        load_cache, save_cache)


def _resolve_family(args) -> FamilySpec:
    if getattr(args, "coeffs", None):
        cs = [rat(s) for s in args.coeffs.split(",")]
        d = args.d if getattr(args, "d", None) else len(cs) - 1
        if d != len(cs) - 1:
            raise SystemExit(f"--d {d} inconsistent with {len(cs)} coefficients")
        return family_mod.make_family(d, cs)
    if not getattr(args, "family", None):
        raise SystemExit("need --family or --coeffs")
    params = {}
    for key in ("a", "b", "c", "lam"):
        v = getattr(args, key, None)
        if v is not None:
            params[key] = rat(v)
    if getattr(args, "d", None):
        params["d"] = args.d
    return named_instance(args.family, **params)


def _cache_path(path: str) -> str:
    if os.path.isabs(path):
        return path
    return os.path.join(os.environ.get("DIAGONALIS_CACHE", "."), path)


def _fmt_index(n) -> str:
    return "(" + ",".join(map(str, n)) + ")"


def cmd_expand(args) -> int:
    fam = _resolve_family(args)
    box = expand_reciprocal(fam.denominator(), args.N,
                            entry_limit=args.entry_limit)
    report = {
        "family": fam.to_json(),
        "N": args.N,
        "entries": box.entry_count(),
        "ring": box.ring,
    }
    status = 0
    if args.check_positive:
        if box.ring == "Qlambda":
            hit = lambda_coefficient_check(box)
            if hit is None:
                report["check"] = (f"all lambda-coefficients in [0..{args.N}]^"
                                   f"{box.dim} have nonnegative coefficients")
            else:
                n, poly = hit
                report["check"] = f"flagged {_fmt_index(n)} -> {poly!r}"
                status = 1
        else:
            hit = first_nonpositive(box, strict=not args.non_strict)
            if hit is None:
                word = "nonpositive" if not args.non_strict else "negative"
                report["check"] = f"no {word} coefficient in [0..{args.N}]^{box.dim}"
            else:
                n, c = hit
                report["check"] = f"{_fmt_index(n)} -> {rat_str(c)}"
                status = 1
    if args.cache:
        path = _cache_path(args.cache)
        with open(path, "w") as fh:
            save_cache(box, fh)
        report["cache"] = path
    _emit(args, report)
    return status


def _diag_values(args):
    if args.from_cache:
        with open(_cache_path(args.from_cache)) as fh:
            box = load_cache(fh)
        fam = None
    else:
        fam = _resolve_family(args)
        denom = fam.denominator()
        if args.scale and args.scale != "9-power":
            s = rat(args.scale)
            denom = scale_variables(denom, (s,) * denom.dim)
        box = expand_reciprocal(denom, args.N, entry_limit=args.entry_limit)
    seq = extract_diagonal(box)
    vals = list(seq.values)
    if args.scale == "9-power":
        vals = [Fraction(9) ** n * v for n, v in enumerate(vals)]
    return fam, vals


def cmd_diag(args) -> int:
    fam, vals = _diag_values(args)
    report = {"N": args.N, "diagonal": [rat_str(v) for v in vals]}
    if fam is not None:
        report["family"] = fam.to_json()
    status = 0
    if args.oracle:
        kwargs = {"a": rat(args.a)} if args.a is not None else {}
        if args.oracle.lower().replace("-", "").replace("_", "") == "lewyaskey":
            u = recurrence_seed(builtin_recurrence("lewyaskey"), len(vals) - 1)
            from .exactalg import binomial
            expected = [binomial(2 * n, n) * u[n] for n in range(len(vals))]
        else:
            expected = [binomial_oracle(args.oracle, n, **kwargs)
                        for n in range(len(vals))]
        for n, (got, want) in enumerate(zip(vals, expected)):
            if got != want:
                report["oracle"] = (f"mismatch at n={n}: "
                                    f"box {rat_str(got)} vs oracle {rat_str(want)}")
                status = 1
                break
        else:
            report["oracle"] = f"match ({args.oracle}, n <= {len(vals) - 1})"
    _emit(args, report)
    return status


def _parse_terms(s: str) -> SequenceWindow:
    return SequenceWindow(0, tuple(rat(t) for t in s.split(",")))


def _recur_object(args):
    if args.builtin:
        kwargs = {"a": rat(args.a)} if args.a is not None else {}
        return builtin_recurrence(args.builtin, **kwargs)
    if args.rec_json:
        from .sequences import PRecurrence
        return PRecurrence.from_json(json.loads(args.rec_json))
    raise SystemExit("need --builtin or --rec-json")


def _recur_sequence(args) -> SequenceWindow:
    if args.terms:
        return _parse_terms(args.terms)
    fam = _resolve_family(args)
    box = expand_reciprocal(fam.denominator(), args.N,
                            entry_limit=args.entry_limit)
    return extract_diagonal(box)


def cmd_recur(args) -> int:
    report: dict = {"mode": args.mode}
    status = 0
    if args.mode == "guess":
        seq = _recur_sequence(args)
        rec = recurrence_guess(seq, args.max_order, args.max_degree)
        if rec is None:
            report["result"] = "no recurrence found"
            status = 1
        else:
            report["order"] = rec.order
            report["degree"] = rec.degree
            report["coefficients"] = rec.to_json()
            report["label"] = "empirical"
    elif args.mode == "check":
        rec = _recur_object(args)
        seq = _recur_sequence(args)
        bad = recurrence_check(rec, seq)
        if bad is None:
            report["result"] = "pass"
        else:
            n, resid = bad
            report["result"] = f"fail at n={n}, residual {rat_str(resid)}"
            status = 1
    elif args.mode == "extend":
        rec = _recur_object(args)
        if args.terms:
            init = _parse_terms(args.terms)
            seq = recurrence_extend(rec, init, args.upto)
        else:
            seq = recurrence_seed(rec, args.upto)
        report["values"] = [rat_str(v) for v in seq.values]
    elif args.mode == "charpoly":
        rec = _recur_object(args)
        cp = characteristic_polynomial(rec)
        report["charpoly"] = cp.to_json()
        if cp.degree == 2:
            c, b_, a_ = cp[0], cp[1], cp[2]
            disc = b_ * b_ - 4 * a_ * c
            report["discriminant"] = rat_str(disc)
            report["roots"] = "complex" if disc < 0 else "real"
    else:
        raise SystemExit(f"unknown recur mode {args.mode!r}")
    _emit(args, report)
    return status


def cmd_identity(args) -> int:
    bad = verify_identity(args.name, args.M)
    if bad is None:
        _emit(args, {"identity": args.name, "order": args.M, "result": "pass"})
        return 0
    n, lhs, rhs = bad
    _emit(args, {"identity": args.name, "order": args.M,
                 "result": f"mismatch at index {n}: "
                           f"{rat_str(lhs)} vs {rat_str(rhs)}"})
    return 1


def _grid(spec: str):
    lo, hi, step = (rat(x) for x in spec.split(":"))
    vals = []
    v = lo
    while v <= hi:
        vals.append(v)
        v += step
    return vals


def cmd_geometry(args) -> int:
    if args.mode == "point":
        fam = _resolve_family(args)
        rep = critical_points_diag(fam)
        _emit(args, rep.to_json())
        return 0
    if args.mode == "grid":
        rows = []
        for a in _grid(args.a):
            for b in _grid(args.b):
                val, member = nonsmooth_locus_3d(a, b)
                if a <= 1:
                    rep = critical_points_diag(named_instance("hab", a=a, b=b))
                    count, verdict = rep.positive_orthant_count, rep.verdict
                else:
                    count, verdict = "", "unsupported (a > 1 off canonical range)"
                rows.append((rat_str(a), rat_str(b), rat_str(val),
                             "member" if member else "smooth", count, verdict))
        out = args.output or sys.stdout
        close = False
        if isinstance(out, str):
            out = open(out, "w")
            close = True
        out.write("a,b,locus_value,locus,orthant_count,verdict\n")
        for row in rows:
            out.write(",".join(str(x) for x in row) + "\n")
        if close:
            out.close()
        return 0
    if args.mode == "bisect":
        lo, hi = box_positivity_bisect(args.N, args.prec,
                                       b_lo=rat(args.b_lo),
                                       strict=not args.non_strict)
        _emit(args, {"N": args.N,
                     "threshold_interval": [rat_str(lo), rat_str(hi)],
                     "precision": args.prec})
        return 0
    raise SystemExit(f"unknown geometry mode {args.mode!r}")


def _emit(args, report: dict) -> None:
    if getattr(args, "format", "text") == "json":
        json.dump({"schema": "v1", **report}, sys.stdout, indent=2)
        sys.stdout.write("\n")
        return
    for k, v in report.items():
        print(f"{k}: {v}")


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", help="catalog family name")
    p.add_argument("--coeffs", help="inline coefficients c0,c1,...,cd")
    p.add_argument("--d", type=int, help="dimension (GRZ / inline coeffs)")
    p.add_argument("--a", help="family parameter a")
    p.add_argument("--b", help="family parameter b")
    p.add_argument("--c", help="family parameter c")
    p.add_argument("--lam", help="specialize lambda for StraubLambda")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--entry-limit", type=int, default=DEFAULT_ENTRY_LIMIT,
                   help="refuse boxes with more entries than this")
    p.add_argument("--workers", type=int, default=1,
                   help="reserved; results are identical for any value")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="diagonalis",
        description="Exact positivity experiments for symmetric rational "
                    "functions and their diagonals")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand 1/p on a coefficient box")
    _add_family_args(p)
    _add_common(p)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--check-positive", action="store_true")
    p.add_argument("--non-strict", action="store_true",
                   help="flag only strictly negative coefficients")
    p.add_argument("--cache", help="write box cache to this path")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("diag", help="extract and optionally cross-check a diagonal")
    _add_family_args(p)
    _add_common(p)
    p.add_argument("--N", type=int)
    p.add_argument("--scale", help="variable prescale s, or '9-power' for 9^n")
    p.add_argument("--oracle", help="closed-form oracle name to compare against")
    p.add_argument("--from-cache", help="load box from cache instead of expanding")
    p.set_defaults(func=cmd_diag)

    p = sub.add_parser("recur", help="recurrence tools")
    p.add_argument("mode", choices=["guess", "check", "extend", "charpoly"])
    _add_family_args(p)
    _add_common(p)
    p.add_argument("--builtin", help="built-in recurrence name")
    p.add_argument("--rec-json", help="recurrence as JSON coefficient arrays")
    p.add_argument("--terms", help="comma-separated sequence values")
    p.add_argument("--N", type=int, help="box bound when taking a family diagonal")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--upto", type=int, help="extend up to this index")
    p.set_defaults(func=cmd_recur)

    p = sub.add_parser("identity", help="verify a generating-function identity")
    p.add_argument("name", choices=sorted(IDENTITIES))
    p.add_argument("--M", type=int, required=True, help="truncation order")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("geometry", help="critical-point and locus reports")
    p.add_argument("mode", choices=["point", "grid", "bisect"])
    _add_family_args(p)
    _add_common(p)
    p.add_argument("--N", type=int, help="box bound for bisect")
    p.add_argument("--prec", default="1/64", help="bisection precision")
    p.add_argument("--b-lo", default="4", help="bisection lower start")
    p.add_argument("--non-strict", action="store_true")
    p.add_argument("--output", help="CSV output path for grid mode")
    p.set_defaults(func=cmd_geometry)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
