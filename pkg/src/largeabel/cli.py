"""Command-line front end.

Exit codes: 0 success, 2 usage, 3 verification failure, 4 capacity.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .algebra import AbelianGroup, involutions
from .catalog import (
    classification_document,
    classification_latex,
    classification_table,
    build_catalog,
    kulkarni_document,
    kulkarni_latex,
    kulkarni_table,
)
from .curves import fixed_point_count
from .errors import CapacityError, StructuralError, VerificationError
from .kulkarni import enumerate_large_signatures
from .signatures import Signature
from .verify import run_verify

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAPACITY = 0, 2, 3, 4
FORMATS = ("json", "table", "latex")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="largeabel", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, genus: bool = True) -> None:
        if genus:
            p.add_argument("--max-genus", type=int, required=True)
            p.add_argument("--workers", type=_positive, default=1)
            p.add_argument("--brute-bound", type=_positive, default=None, help="largest group order searched")
        p.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")

    p = sub.add_parser("kulkarni", help="signatures admitting a large automorphism group")
    p.add_argument("--max-param", type=_positive, default=None, help="also expand families up to this parameter")
    p.add_argument("--format", choices=FORMATS, default="json")
    common(p, genus=False)

    p = sub.add_parser("classify", help="all large abelian actions up to a genus")
    p.add_argument("--format", choices=FORMATS, default="json")
    common(p)

    p = sub.add_parser("construct", help="building data and model for one genus and group")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--group", required=True, help="e.g. Z10 or Z2xZ6")
    p.add_argument("--signature", default=None, help="e.g. 2,5,10")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--brute-bound", type=_positive, default=None)
    p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("verify", help="run the invariant suite")
    common(p)

    p = sub.add_parser("hyperelliptic", help="hyperelliptic verdicts with fixed-point data")
    p.add_argument("--format", choices=("json", "table"), default="table")
    common(p)
    return parser


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_entries(command: str, params: dict, entries, fmt: str) -> str:
    if fmt == "table":
        return classification_table(entries)
    if fmt == "latex":
        return classification_latex(entries)
    return classification_document(command, params, entries).to_json()


def _cmd_kulkarni(args) -> int:
    found = enumerate_large_signatures()
    if args.format == "table":
        text = kulkarni_table(found)
    elif args.format == "latex":
        text = kulkarni_latex(found)
    else:
        text = kulkarni_document(found, args.max_param).to_json()
    _emit(text, args.output)
    return EXIT_OK


def _cmd_classify(args) -> int:
    entries = build_catalog(args.max_genus, workers=args.workers, bound=args.brute_bound)
    params = {"max_genus": args.max_genus}
    _emit(_render_entries("classify", params, entries, args.format), args.output)
    return EXIT_OK


def _cmd_construct(args, parser) -> int:
    try:
        group = AbelianGroup.parse(args.group)
        sig = Signature.parse(args.signature) if args.signature else None
    except StructuralError as exc:
        parser.error(str(exc))
    if args.genus < 2:
        parser.error("--genus must be >= 2")
    entries = [
        e
        for e in build_catalog(args.genus, bound=args.brute_bound)
        if e.genus == args.genus and e.group == group and (sig is None or e.signature == sig)
    ]
    if not entries:
        print(f"no large abelian action of {group.label} in genus {args.genus}", file=sys.stderr)
        return EXIT_USAGE
    params = {"genus": args.genus, "group": group.label, "signature": str(sig) if sig else None}
    _emit(_render_entries("construct", params, entries, args.format), args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    report = run_verify(args.max_genus, workers=args.workers, bound=args.brute_bound)
    _emit("\n".join(report.lines()) + "\n", args.output)
    return EXIT_OK if report.ok else EXIT_VERIFY


def _cmd_hyperelliptic(args) -> int:
    entries = build_catalog(args.max_genus, workers=args.workers, bound=args.brute_bound)
    rows = []
    for e in entries:
        counts = {",".join(map(str, t)): fixed_point_count(e, t) for t in involutions(e.group)}
        rows.append((e, counts))
    if args.format == "json":
        doc = [
            {
                "genus": e.genus,
                "group": e.group.label,
                "indices": list(e.signature.indices),
                "hyperelliptic": e.hyperelliptic,
                "involution_fixed_points": counts,
                "target": 2 * e.genus + 2,
            }
            for e, counts in rows
        ]
        text = json.dumps(doc, indent=2) + "\n"
    else:
        lines = [f"{'g':>3}  {'group':<12} {'indices':<16} {'hyp':<4} involution fixed points (target 2g+2)"]
        for e, counts in rows:
            detail = " ".join(f"({k}):{v}" for k, v in counts.items()) or "none"
            lines.append(
                f"{e.genus:>3}  {e.group.label:<12} {str(e.signature):<16} {'yes' if e.hyperelliptic else 'no':<4} "
                f"{detail} [{2 * e.genus + 2}]"
            )
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_genus", None) is not None and args.max_genus < 2:
        parser.error("--max-genus must be >= 2")
    try:
        if args.command == "kulkarni":
            return _cmd_kulkarni(args)
        if args.command == "classify":
            return _cmd_classify(args)
        if args.command == "construct":
            return _cmd_construct(args, parser)
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_hyperelliptic(args)
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
