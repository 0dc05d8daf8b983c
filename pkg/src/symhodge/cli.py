"""Thin command-line client over the analysis driver.

Exit codes: 0 success, 1 validation error (Jacobi, non-closed or degenerate
form), 2 parse error, 3 invariant-suite failure.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis, dsl
from .cohomology import Cohomology
from .errors import ValidationError
from .symplectic import build

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_SUITE = 3


def _read_document(path: str) -> dsl.AlgebraDocument:
    with open(path, encoding="utf-8") as fh:
        return dsl.parse(fh.read())


def _cmd_analyze(args) -> int:
    doc = _read_document(args.file)
    report = analysis.analyze(doc, run_invariants=args.invariants)
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(analysis.render_text(report))
        if args.witnesses:
            sys.stdout.write(_bijectivity_table(doc))
    return EXIT_OK


def _bijectivity_table(doc: dsl.AlgebraDocument) -> str:
    coh = Cohomology(build(doc.algebra(), doc.omega))
    lines = ["", "natural map per degree:"]
    for k in range(coh.dim + 1):
        info = coh.map_i(k)
        status = "bijective" if info.bijective else (
            f"kernel dim {len(info.kernel_forms)}, "
            f"{'surjective' if info.surjective else 'not surjective'}"
        )
        lines.append(f"  degree {k}: {status}")
    return "\n".join(lines) + "\n"


def _cmd_check(args) -> int:
    doc = _read_document(args.file)
    build(doc.algebra(), doc.omega)
    sys.stdout.write(f"ok: dim {doc.dim}, generators {' '.join(doc.names)}\n")
    return EXIT_OK


def _cmd_suite(args) -> int:
    doc = _read_document(args.file) if args.file else None
    result = analysis.run_invariant_suite(doc=doc, seed=args.seed, dim=args.dim,
                                          trials=args.trials)
    if result.passed:
        sys.stdout.write(f"invariant suite passed on {result.instances} instance(s)\n")
        return EXIT_OK
    sys.stdout.write(f"invariant suite FAILED after {result.instances} instance(s)\n")
    for failure in result.failures:
        sys.stdout.write(f"  ! {failure}\n")
    if result.counterexample:
        sys.stdout.write("counterexample document:\n")
        sys.stdout.write(result.counterexample)
    return EXIT_SUITE


def _cmd_search(args) -> int:
    found = analysis.search(args.dim, args.target_s, args.trials, args.seed,
                            non_abelian=args.non_abelian)
    for doc in found:
        sys.stdout.write(dsl.print_document(doc))
        sys.stdout.write("\n")
    sys.stderr.write(f"found {len(found)} instance(s) at level {args.target_s}\n")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symhodge",
        description="Exact symplectic Hodge analysis of Lie algebra descriptions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a .lie file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--witnesses", action="store_true",
                   help="also print the per-degree natural-map table")
    p.add_argument("--invariants", action="store_true",
                   help="also run the invariant suite on this document")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("check", help="parse and validate only")
    p.add_argument("file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("suite", help="run the invariant suite")
    p.add_argument("--file", default=None, help="restrict to one document")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=_cmd_suite)

    p = sub.add_parser("search", help="random instances with a prescribed Lefschetz level")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--target-s", type=int, required=True, dest="target_s")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--non-abelian", action="store_true", dest="non_abelian",
                   help="skip abelian instances")
    p.set_defaults(func=_cmd_search)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except dsl.ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except ValidationError as exc:
        sys.stderr.write(f"validation error: {exc}\n")
        return EXIT_VALIDATION
    except FileNotFoundError as exc:
        sys.stderr.write(f"cannot read {exc.filename}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
