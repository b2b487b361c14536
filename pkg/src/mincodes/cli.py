"""Command-line front end.

Exit status: 0 on success, 2 when ``check`` finds the code is not minimal,
1 on any error.  JSON output is key-sorted and contains no timings unless
``--timing`` is given, so repeated runs print identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .bounds import bounds_report
from .code import ColumnMultiset, LinearCode, is_minimal_code, is_minimal_codeword
from .config import THRESHOLD_ENV, default_threshold
from .constructions import RECIPES, construct
from .errors import MinCodesError
from .linalg import format_matrix_text, kernel, parse_matrix_text
from .perp import classify_root_word, count_root_words, double_perp, perp_basis, predicted_perp_cardinality
from .ring import divisors, factorize, units, zero_divisors
from .search import monotonicity_check, search_m_min


def parse_matrix(path) -> ColumnMultiset:
    """Load a matrix file; rows are the columns alpha_j in file order."""
    text = Path(path).read_text()
    n, k, rows = parse_matrix_text(text)
    return ColumnMultiset(factorize(n), k, tuple(rows))


def _vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a vector of integers: {text!r}") from None


def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_ring_info(args) -> int:
    ring = factorize(args.n)
    shape = type(ring.shape).__name__
    payload = {
        "n": ring.n,
        "factors": [list(f) for f in ring.factors],
        "shape": shape,
        "phi": ring.phi,
        "units": list(units(ring)),
        "zero_divisors": list(zero_divisors(ring)),
        "divisors": list(divisors(ring.n)),
    }
    lines = [
        f"n = {ring.n} = {ring}",
        f"shape: {shape}",
        f"units ({ring.phi}): {' '.join(map(str, units(ring)))}",
        f"zero divisors: {' '.join(map(str, zero_divisors(ring)))}",
        f"divisors: {' '.join(map(str, divisors(ring.n)))}",
    ]
    if args.k is not None:
        counted, formula = count_root_words(ring, args.k, args.threshold)
        payload["root_words"] = {"k": args.k, "enumerated": counted, "formula": formula}
        lines.append(f"root words in Z_{ring.n}^{args.k}: {counted} enumerated, closed form {formula}")
    _emit(args, payload, lines)
    return 0


def cmd_perp(args) -> int:
    ring = factorize(args.n)
    v = tuple(x % ring.n for x in args.vector)
    cls = classify_root_word(v, ring)
    basis = perp_basis(v, ring)
    ker = kernel([v], ring.n, len(v))
    dp = double_perp(v, ring)
    payload = {
        "n": ring.n,
        "vector": list(v),
        "root_word": cls.is_root,
        "annihilator_witness": cls.witness,
        "construction_tag": basis.construction_tag,
        "generators": [list(g) for g in basis.generators],
        "claimed_free": basis.claimed_free,
        "cardinality": ker.cardinality,
        "predicted_cardinality": predicted_perp_cardinality(v, ring),
        "span_matches_kernel": basis.span() == ker,
        "howell_form": [list(r) for r in ker.canon],
        "double_perp": [list(r) for r in dp.canon],
    }
    lines = [
        f"v = {v} over Z_{ring.n}: {'root word' if cls.is_root else 'not a root word'}",
        f"construction: {basis.construction_tag}",
        "generators:",
        *[f"  {g}" for g in basis.generators],
        f"free: {basis.claimed_free}",
        f"|v^perp| = {ker.cardinality} (predicted {payload['predicted_cardinality']})",
        f"span equals kernel: {payload['span_matches_kernel']}",
        f"double perp: {dp.canon}",
    ]
    _emit(args, payload, lines)
    return 0


def cmd_construct(args) -> int:
    recipe, lam = construct(args.recipe, args.n, args.k)
    matrix = format_matrix_text(lam.n, lam.k, lam.columns)
    if args.output:
        Path(args.output).write_text(matrix)
    payload = {
        "recipe": recipe.name,
        "n": recipe.n,
        "k": recipe.k,
        "length": lam.m,
        "predicted_length": recipe.predicted_length,
        "provenance": recipe.provenance,
        "columns": [list(c) for c in lam.columns],
    }
    if args.format == "json":
        _emit(args, payload, [])
    else:
        sys.stdout.write(f"# {recipe.name}: length {lam.m} = {recipe.provenance}\n")
        sys.stdout.write(matrix)
    return 0


def cmd_check(args) -> int:
    lam = parse_matrix(args.input)
    code = LinearCode(lam)
    report = is_minimal_code(code, method=args.method, full_sweep=args.full_sweep,
                             threshold=args.threshold, workers=args.workers)
    payload = {"n": lam.n, "k": lam.k, "m": lam.m, **report.to_dict()}
    lines = [
        f"[{lam.m},{lam.k}] code over Z_{lam.n}: {'minimal' if report.verdict else 'NOT minimal'}"
        f" ({report.messages_checked} messages, method {report.method})",
    ]
    if not report.verdict:
        first = report.per_message_failures[0]
        evidence = is_minimal_codeword(first, code).criterion_evidence
        payload["first_failure_evidence"] = {
            "message": list(first),
            "M": [list(r) for r in evidence[0]],
            "O": [list(r) for r in evidence[1]],
        }
        lines.append("failing messages: " + " ".join(str(v) for v in report.per_message_failures))
        if report.counterexample is not None:
            lines.append(f"counterexample: {report.counterexample.reason}")
        lines.append(f"at v={first}: span of orthogonal columns {evidence[0]} != v^perp {evidence[1]}")
    _emit(args, payload, lines)
    return 0 if report.verdict else 2


def cmd_bounds(args) -> int:
    reports = [
        bounds_report(n, k, verify=not args.no_verify, threshold=args.threshold)
        for n in args.n
        for k in args.k
    ]
    if args.format == "json":
        _emit(args, {"bounds": [r.to_dict() for r in reports]}, [])
        return 0
    if args.format == "csv":
        buf = io.StringIO()
        fields = ["n", "k", "lower_bound_exact", "lower_bound_closed_form", "upper_bound",
                  "projective_bound", "root_words", "root_words_formula", "notes"]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in reports:
            row = r.to_dict()
            row["notes"] = " | ".join(row["notes"])
            w.writerow(row)
        sys.stdout.write(buf.getvalue())
        return 0
    lines = []
    for r in reports:
        lines.append(
            f"Z_{r.n}, k={r.k}: {r.lower_bound_exact} <= m <= {r.upper_bound}"
            f"  (printed bound {r.lower_bound_closed_form}, root words mod units {r.projective_bound})"
        )
        lines.extend(f"  note: {note}" for note in r.notes)
    _emit(args, {}, lines)
    return 0


def cmd_search(args) -> int:
    unit = None if args.unit_constraint is None else args.unit_constraint == "on"
    report = search_m_min(args.n, args.k, args.m_cap, unit_constraint=unit,
                          root_only=args.root_only, threshold=args.threshold,
                          workers=args.workers)
    payload = report.to_dict(timing=args.timing)
    if args.extra and report.witness is not None:
        payload["monotonicity"] = {
            "extra": args.extra,
            "holds": monotonicity_check(args.n, args.k, report, args.extra, args.threshold),
        }
    if report.m_min is None:
        lines = [f"no minimal code with m <= {args.m_cap} over Z_{args.n}^{args.k}"]
    else:
        lines = [f"m({args.k};{args.n}) = {report.m_min}", "witness:"]
        lines.extend(f"  {c}" for c in report.witness)
    lines.append(
        f"examined {report.candidates_examined}, pruned {report.pruned},"
        f" {report.candidate_classes} column classes, range {report.searched_range}"
    )
    lines.append(f"unit constraint: {report.unit_constraint}, root words only: {report.root_only}")
    if "monotonicity" in payload:
        lines.append(f"extension to m_min+1..m_min+{args.extra}: {payload['monotonicity']['holds']}")
    if args.timing:
        lines.append(f"wall time: {report.wall_time:.3f}s")
    _emit(args, payload, lines)
    return 0


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    def command(name, help, formats=("text", "json")):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default="text")
        p.add_argument("--threshold", type=_positive, default=None,
                       help=f"enumeration cap (default from ${THRESHOLD_ENV} or 10^6)")
        p.add_argument("--workers", type=_positive, default=1)
        return p

    parser = argparse.ArgumentParser(prog="mincodes", description="Minimal linear codes over Z_n.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = command("ring-info", help="units, zero divisors, root-word counts")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=_positive)
    p.set_defaults(func=cmd_ring_info)

    p = command("perp", help="explicit basis of v^perp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--vector", type=_vector, required=True, help="e.g. 1,2,3")
    p.set_defaults(func=cmd_perp)

    p = command("construct", help="emit a construction as a matrix file")
    p.add_argument("--recipe", choices=RECIPES, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=_positive, default=1)
    p.add_argument("--output", help="also write the matrix file here")
    p.set_defaults(func=cmd_construct)

    p = command("check", help="decide minimality of a matrix file")
    p.add_argument("--input", required=True)
    p.add_argument("--method", choices=("criterion", "oracle", "both"), default="both")
    p.add_argument("--full-sweep", action="store_true", help="every message, not one per unit orbit")
    p.set_defaults(func=cmd_check)

    p = command("bounds", "lower and upper bounds on m(k;n)", ("text", "json", "csv"))
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.add_argument("--k", type=_positive, nargs="+", required=True)
    p.add_argument("--no-verify", action="store_true", help="skip checking the upper-bound construction")
    p.set_defaults(func=cmd_bounds)

    p = command("search-mmin", help="exhaustive search for m(k;n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m-cap", type=_positive, required=True)
    p.add_argument("--unit-constraint", choices=("on", "off"), default=None,
                   help="k=1 only; default on")
    p.add_argument("--root-only", action="store_true")
    p.add_argument("--extra", type=int, default=0, help="verify lengths m_min+1..m_min+EXTRA")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.threshold is None:
            args.threshold = default_threshold()
        return args.func(args)
    except (MinCodesError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
