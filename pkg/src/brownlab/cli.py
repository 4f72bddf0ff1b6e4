"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 bad input (group spec or
prime), 3 group order above the cap, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import reports
from .analysis import Analysis
from .catalog import CATALOG, catalog_pairs, spec_slug
from .errors import InvariantViolation, OrderCapExceeded, ParseError
from .verify import run_suite

EXIT_VERIFY, EXIT_INPUT, EXIT_CAP, EXIT_INVARIANT = 1, 2, 3, 4


def _analysis(args):
    return Analysis(args.group, args.p)


def _write_json(path, doc):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        fh.write(reports.dumps(doc))
    return path


def cmd_analyze(args, out):
    a = _analysis(args)
    doc = reports.build_report(a, complex_detail=args.complex, quotient_detail=args.quotient,
                               variants=args.variants, timing=not args.no_timing)
    if args.export:
        stem = f"{spec_slug(a.spec)}_p{a.p}"
        doc["exports"] = [
            _write_json(os.path.join(args.export, f"{stem}_complex.json"),
                        reports.complex_export(a)),
            _write_json(os.path.join(args.export, f"{stem}_bundle.json"),
                        reports.bundle_export(a)),
        ]
    if args.figures:
        # matplotlib is only imported when figures are requested
        from .plotting import write_figures
        doc["figures"] = write_figures(a, args.figures)
    if "timing" in doc:
        # keep timing last so that the rest of the document is a stable prefix
        doc["timing"] = doc.pop("timing")
    out.write(reports.dumps(doc))
    return 0


def cmd_weakhom(args, out):
    if args.modulus is not None and args.modulus < 1:
        raise ParseError("--modulus must be a positive integer")
    a = _analysis(args)
    doc = reports.weakhom_report(a, modulus=args.modulus, listing=args.list,
                                 oracle=args.oracle, timing=not args.no_timing)
    out.write(reports.dumps(doc))
    return 0


def cmd_export(args, out):
    a = _analysis(args)
    doc = reports.complex_export(a) if args.what == "complex" else reports.bundle_export(a)
    if args.out:
        _write_json(args.out, doc)
    else:
        out.write(reports.dumps(doc))
    return 0


def cmd_verify(args, out):
    pairs = catalog_pairs()
    if args.group:
        pairs = [(s, p) for s, p in pairs if s in args.group]
    if args.p:
        pairs = [(s, p) for s, p in pairs if p in args.p]
    results = run_suite(args.suite, pairs, echo=lambda line: out.write(line + "\n"))
    failed = [c for c in results if not c.passed]
    out.write(f"{len(results) - len(failed)} passed, {len(failed)} failed\n")
    if failed:
        first = failed[0]
        print(f"first failure: {first.name} on {first.subject}: witness={first.witness}",
              file=sys.stderr)
        return EXIT_VERIFY
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="brownlab",
        description="p-subgroup complexes, weak homomorphisms and their line bundles.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_args(p):
        p.add_argument("group", help="group spec, e.g. sym:4, alt:5, dihedral:8, q8, "
                                     "product:dihedral:8xcyclic:3, perm:4:(1 2);(1 2 3 4)")
        p.add_argument("--p", type=int, required=True, help="the prime")
        p.add_argument("--no-timing", action="store_true", help="omit the timing block")

    an = sub.add_parser("analyze", help="full JSON report for (G, p)")
    group_args(an)
    an.add_argument("--complex", action="store_true", help="list vertices and simplices")
    an.add_argument("--quotient", action="store_true", help="orbit-space cross-checks")
    an.add_argument("--variants", action="store_true", help="Quillen and Bouc homology")
    an.add_argument("--export", metavar="DIR", help="write complex and bundle JSON files")
    an.add_argument("--figures", metavar="DIR", help="write PNG figures")
    an.set_defaults(func=cmd_analyze)

    wh = sub.add_parser("weakhom", help="the group of weak homomorphisms")
    group_args(wh)
    wh.add_argument("--modulus", type=int, help="work with values in Z/m")
    wh.add_argument("--list", action="store_true", help="print generator value tables")
    wh.add_argument("--oracle", action="store_true", help="independent count and verdict")
    wh.set_defaults(func=cmd_weakhom)

    ex = sub.add_parser("export", help="complex or bundle JSON export")
    group_args(ex)
    ex.add_argument("--what", choices=("complex", "bundle"), default="complex")
    ex.add_argument("--out", metavar="FILE", help="write here instead of standard output")
    ex.set_defaults(func=cmd_export)

    ve = sub.add_parser("verify", help="property suites over the built-in catalog")
    ve.add_argument("suite", choices=("weakhom-oracle", "cocycle", "topology", "all"))
    ve.add_argument("--group", action="append", choices=[s for s, _ in CATALOG],
                    help="restrict to these catalog entries (repeatable)")
    ve.add_argument("--p", type=int, action="append", help="restrict to these primes")
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InvariantViolation as exc:
        print(json.dumps({"error": str(exc), "witness": repr(exc.witness)}), file=sys.stderr)
        return EXIT_INVARIANT
    except OrderCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
