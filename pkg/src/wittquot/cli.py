"""Command-line harness: ``wittquot run | inspect | list``.

Exit status: 0 when every check passes (anomalies allowed), 1 when a check
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .autgrp import Automorphism, is_special, jacobian_det
from .derlie import Derivation, centralizer_dim, constants_dim
from .invariants import is_nilpotent, phi_vector, quotient_s, regularity_classify
from .serialize import ElementFormatError, invariant_to_json, load_element
from .special import Membership, sn_context
from .suites import SUITES, UsageError, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_run(args) -> int:
    names = list(SUITES) if args.suite == ["all"] else args.suite
    reports = []
    for name in names:
        rep = run_suite(name, p=args.p, n=args.n, seed=args.seed, trials=args.trials, jobs=args.jobs)
        print(rep.summary(), file=sys.stderr)
        for c in rep.failures:
            print(f"  FAIL {c.name} [{c.anchor}]", file=sys.stderr)
        for c in rep.anomalies:
            print(f"  ANOMALY {c.name} [{c.anchor}]", file=sys.stderr)
        reports.append(rep)
    if args.out:
        out = Path(args.out)
        if len(reports) == 1 and out.suffix == ".json":
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(_dump(reports[0].as_dict()))
        else:
            out.mkdir(parents=True, exist_ok=True)
            for rep in reports:
                (out / f"{rep.suite}.json").write_text(_dump(rep.as_dict()))
    else:
        docs = [r.as_dict() for r in reports]
        sys.stdout.write(_dump(docs[0] if len(docs) == 1 else docs))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def analyse(x: Derivation) -> dict:
    """Invariants and regularity data of one derivation."""
    out = {"p": x.amb.p, "n": x.amb.n, "invariants": invariant_to_json(phi_vector(x))}
    out["nilpotent"] = is_nilpotent(x)
    flags = regularity_classify(x, strict=False)
    out["regularity"] = {"U1": flags.u1, "U2": flags.u2, "U3": flags.u3}
    out["constants_dim"] = constants_dim(x)
    out["centralizer_dim"] = centralizer_dim(x)
    if x.amb.n >= 2:
        m = sn_context(x.amb).contains(x)
        out["membership"] = m.value
        if m is Membership.IN_S:
            out["quotient_s"] = invariant_to_json(quotient_s(x, check_membership=False))
    return out


def cmd_inspect(args) -> int:
    try:
        text = sys.stdin.read() if args.file == "-" else Path(args.file).read_text()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        el = load_element(text)
    except ElementFormatError as e:
        print(f"error: {args.file}: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(el, Derivation):
        sys.stdout.write(_dump(analyse(el)))
    elif isinstance(el, Automorphism):
        det = jacobian_det(el)
        sys.stdout.write(_dump({"special": is_special(el), "jacobian_constant_term": det.constant_term()}))
    else:
        print("error: inspect expects a derivation, slice or automorphism document", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_list(args) -> int:
    for s in SUITES.values():
        print(f"{s.name:22s} {s.algebra}_n (default n={s.default_n}, n>={s.min_n})  {s.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wittquot", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run verification suites and emit JSON reports")
    run.add_argument("--suite", action="append", required=True, help="suite id (repeatable) or 'all'")
    run.add_argument("--p", type=int, default=5)
    run.add_argument("--n", type=int, default=None, help="rank; defaults to 2 for W-suites, 3 for S-suites")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--trials", type=int, default=100)
    run.add_argument("--out", help="report file (.json) or directory")
    run.add_argument("--jobs", type=int, default=1)
    run.set_defaults(func=cmd_run)
    ins = sub.add_parser("inspect", help="analyse a JSON element ('-' for stdin)")
    ins.add_argument("file")
    ins.set_defaults(func=cmd_inspect)
    ls = sub.add_parser("list", help="list suites")
    ls.set_defaults(func=cmd_list)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
