"""Command line front end.

Exit codes: 0 success / verified-in-range, 1 failed recheck, 2 usage or
parse error, 10 refuted-with-certificate, 20 undetermined or over budget.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import certificates
from .claims import REFUTED, VERIFIED, MapParams, phi_always_hit, psi_preserves_hit_probe, thm24_search, verify_crossley
from .errors import BudgetExceeded, SteenhitError, UsageError
from .hit import DEFAULT_BUDGET, is_hit, quotient
from .invariants import FULL_GROUP_BUDGET, invariant_subspace
from .poly import Polynomial, parse_polynomial, render
from .steenrod import p_k

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_REFUTED = 10
EXIT_UNDETERMINED = 20


def _int_list(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(sub, degree=False):
    # -h is the variable count, so help moves to --help only
    sub.add_argument("--help", action="help", help="show this help message and exit")
    sub.add_argument("-p", type=int, required=True, help="odd prime")
    sub.add_argument("-h", dest="h", type=int, required=True, help="number of variables")
    sub.add_argument("--format", choices=("text", "json"), default="text")
    if degree:
        g = sub.add_mutually_exclusive_group(required=True)
        g.add_argument("-n", type=int, help="topological degree (even)")
        g.add_argument("--polydeg", type=int, help="exponent sum d; same as -n 2d")


def _degree(args):
    return args.n if args.n is not None else 2 * args.polydeg


def build_parser():
    parser = argparse.ArgumentParser(prog="steenhit", add_help=False,
                                     description="Steenrod reduced powers and the hit problem over F_p")
    parser.add_argument("--help", action="help", help="show this help message and exit")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("apply", add_help=False, help="print P^k(f)")
    _common(sp)
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("poly")

    sp = subs.add_parser("hit", add_help=False, help="decide whether f is hit; emit a witness")
    _common(sp)
    sp.add_argument("poly")
    sp.add_argument("--out", help="write the hit report (with witness) to this file")

    sp = subs.add_parser("quotient", add_help=False, help="dimension and monomial basis of the hit quotient")
    _common(sp, degree=True)
    sp.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)

    sp = subs.add_parser("verify", add_help=False, help="check one of the claims over a finite range")
    sp.add_argument("claim", choices=("crossley", "thm24", "phi", "psi"))
    _common(sp)
    sp.add_argument("--nmax", type=int, default=60)
    sp.add_argument("--nmin", type=int, default=2)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--q", type=_int_list, default=None)
    sp.add_argument("--r", type=_int_list, default=())
    sp.add_argument("--i", type=int, default=None)
    sp.add_argument("--allow-zero-q", action="store_true")
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-polydeg", type=int, default=None)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", help="report file (default: <claim>-p<p>-h<h>.json)")

    sp = subs.add_parser("recheck", add_help=False, help="re-verify certificates in a file")
    sp.add_argument("--help", action="help")
    sp.add_argument("file")

    sp = subs.add_parser("invariants", add_help=False, help="GL(h,F_p)-fixed classes of the quotient")
    _common(sp, degree=True)
    sp.add_argument("--method", choices=("generators", "full-group"), default="generators")
    sp.add_argument("--budget", type=int, default=FULL_GROUP_BUDGET)
    return parser


def _emit(args, text, doc):
    if args.format == "json":
        sys.stdout.write(certificates.dumps(doc))
    else:
        print(text)


def _write_atomic(path, text):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent if str(path.parent) else ".", suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _document(kind, payload):
    return {"schema": certificates.SCHEMA, "schema_version": certificates.SCHEMA_VERSION, "type": kind,
            "report": payload}


def cmd_apply(args):
    f = parse_polynomial(args.poly, args.p, args.h)
    out = p_k(f, args.k)
    _emit(args, render(out), _document("apply", {"p": args.p, "h": args.h, "k": args.k,
                                                 "input": f.serialize(), "result": out.serialize()}))
    return EXIT_OK


def cmd_hit(args):
    f = parse_polynomial(args.poly, args.p, args.h)
    if not f.is_homogeneous():
        raise UsageError("hit needs a homogeneous polynomial")
    q = quotient(args.p, args.h, f.degree) if not f.is_zero() else None
    if q is None:
        from .hit import HitReport
        from .steenrod import HitDecomposition

        rep = HitReport(f, "hit", HitDecomposition(f, {}), None)
    else:
        rep = is_hit(f, q)
    doc = _document("hit_report", rep.to_json())
    if args.out:
        _write_atomic(args.out, certificates.dumps(doc))
    if rep.is_hit:
        parts = ", ".join(f"f_{k} = {render(fk)}" for k, fk in rep.witness.parts.items()) or "empty witness"
        text = f"hit: {parts}"
    else:
        text = f"not hit: residue {list(rep.residue)} on {[render(Polynomial.monomial(f.p, f.h, m)) for m in q.quotient_monomials]}"
    _emit(args, text, doc)
    return EXIT_OK


def cmd_quotient(args):
    n = _degree(args)
    q = quotient(args.p, args.h, n, order=args.order, budget=args.budget)
    names = [render(Polynomial.monomial(args.p, args.h, m)) for m in q.quotient_monomials]
    text = f"degree {n}: ambient {len(q.ambient)}, hit rank {q.rank}, dim {q.dim}\nbasis: {' '.join(names) or '(none)'}"
    _emit(args, text, _document("quotient", q.to_json()))
    return EXIT_OK


def _map_params(args, kind):
    if args.t is None or args.q is None:
        raise UsageError(f"verify {kind} needs --t and --q")
    i = args.i if args.i is not None else len(args.r)
    return MapParams(args.t, tuple(args.q), tuple(args.r), i if kind == "psi" else 0, args.allow_zero_q)


def cmd_verify(args):
    if args.claim == "crossley":
        report = verify_crossley(args.p, args.h, args.nmax, jobs=args.jobs)
    elif args.claim == "thm24":
        report = thm24_search(args.p, args.h, args.nmax, n_min=args.nmin, jobs=args.jobs)
    elif args.claim == "phi":
        report = phi_always_hit(args.p, args.h, _map_params(args, "phi"), args.samples, args.seed,
                                args.max_polydeg if args.max_polydeg is not None else 3, args.budget)
    else:
        report = psi_preserves_hit_probe(args.p, args.h, _map_params(args, "psi"), args.samples, args.seed,
                                         args.max_polydeg, args.budget)
    out = args.out or f"{args.claim}-p{args.p}-h{args.h}.json"
    text = report.dumps()
    _write_atomic(out, text)
    if args.format == "json":
        sys.stdout.write(text)
    else:
        print(f"{report.claim}: {report.verdict} ({len(report.details)} checks, "
              f"{len(report.certificates)} certificates) -> {out}")
        if report.claim == "thm24":
            for row in report.details:
                flag = "  counterexample" if row["counterexample"] else ""
                print(f"  n={row['n']:4d} ker={row['kernel_dim']} im={row['image_dim']} "
                      f"ker&im={row['kernel_in_image_dim']}{flag}")
    if report.verdict == VERIFIED:
        return EXIT_OK
    if report.verdict == REFUTED:
        return EXIT_REFUTED
    return EXIT_UNDETERMINED


def cmd_recheck(args):
    try:
        doc = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from None
    results = certificates.recheck_document(doc)
    ok = True
    for kind, passed, msg in results:
        print(f"{'PASS' if passed else 'FAIL'} {kind}: {msg}")
        ok &= passed
    if not results:
        print("no certificates to check")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_invariants(args):
    n = _degree(args)
    rep = invariant_subspace(args.p, args.h, n, args.method, args.budget)
    polys = [render(f) for f in rep.polynomials()]
    text = f"degree {n}: invariant dim {rep.dim} ({rep.method}, {len(rep.elements)} elements)"
    if polys:
        text += "\n" + "\n".join(f"  {s}" for s in polys)
    _emit(args, text, _document("invariants", rep.to_json()))
    return EXIT_OK


COMMANDS = {
    "apply": cmd_apply,
    "hit": cmd_hit,
    "quotient": cmd_quotient,
    "verify": cmd_verify,
    "recheck": cmd_recheck,
    "invariants": cmd_invariants,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except (UsageError, SteenhitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
