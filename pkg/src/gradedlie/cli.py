"""Command line front end: check, prolong and free subcommands.

Exit codes: 0 success, 1 validation failure, 2 parse or usage error,
3 internal consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import diagnostics, prolongation, specfile
from .algebra import check_fundamental, check_validity
from .normalization import normalization_report
from .specfile import SpecError, format_rational

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_PARSE = 2
EXIT_INTERNAL = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedlie",
        description="Exact universal prolongation of fundamental graded nilpotent Lie algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="validate a specification file")
    check.add_argument("file", help="specification document (JSON)")
    check.set_defaults(func=cmd_check)

    prolong = sub.add_parser("prolong", help="compute the universal prolongation")
    prolong.add_argument("file", help="specification document (JSON)")
    prolong.add_argument("--max-degree", type=_positive_int, default=None,
                         help="cutoff degree (default: the file's option, else 10)")
    prolong.add_argument("--out", default=None, help="write the report to this path")
    prolong.add_argument("--format", choices=("structured", "table"), default="structured")
    prolong.set_defaults(func=cmd_prolong)

    free = sub.add_parser("free", help="emit a free nilpotent symbol specification")
    free.add_argument("r", type=_positive_int, help="number of generators")
    free.add_argument("mu", type=_positive_int, help="nilpotency step")
    free.add_argument("--out", default=None, help="write the document to this path")
    free.set_defaults(func=cmd_free)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SpecError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except prolongation.InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"validation failure: {exc}", file=sys.stderr)
        return EXIT_INVALID


def _load_validated(path: str):
    """Parse, build and validate (symbol, g0); ValueError on math failures."""
    spec = specfile.parse_spec(specfile.load_document(Path(path).read_text()))
    symbol = specfile.build_symbol(spec)
    report = check_validity(symbol)
    if not report.ok:
        raise ValueError(report.describe())
    if not check_fundamental(symbol):
        raise ValueError("symbol is not fundamental: degree -1 does not generate it")
    g0 = specfile.build_g0(spec, symbol)
    return spec, symbol, g0


def cmd_check(args) -> int:
    spec, symbol, g0 = _load_validated(args.file)
    dims = symbol.dims_by_degree()
    dim_text = ", ".join(f"dim g^{d} = {dims[d]}" for d in sorted(dims))
    print(f"{spec.name}: ok ({dim_text}; dim g0 = {g0.dim})")
    return EXIT_OK


def cmd_prolong(args) -> int:
    spec, symbol, g0 = _load_validated(args.file)
    max_degree = args.max_degree if args.max_degree is not None else spec.max_degree
    result = prolongation.universal_prolongation(symbol, g0, max_degree=max_degree)
    reports = [normalization_report(system) for system in result.spencer_systems]
    diag = diagnostics.fingerprint(result.algebra) if result.terminated else None
    document = _report_document(spec.name, g0, result, reports, diag)
    if args.format == "structured":
        text = specfile.dump_document(document)
    else:
        text = _report_table(document)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_free(args) -> int:
    text = specfile.dump_document(specfile.free_spec_document(args.r, args.mu))
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _report_document(name, g0, result, reports, diag) -> dict:
    algebra = result.algebra
    degrees = sorted(result.dims)
    constants = []
    for a, b in algebra.bracket_pairs():
        constants.append({
            "left": algebra.basis[a].name,
            "right": algebra.basis[b].name,
            "terms": [
                [algebra.basis[c].name, format_rational(v)]
                for c, v in sorted(algebra.bracket_basis(a, b).items())
            ],
        })
    return {
        "schema_version": specfile.SCHEMA_VERSION,
        "name": name,
        "validity": {
            "grading_ok": True,
            "jacobi_ok": True,
            "nilpotent_negative_ok": True,
            "fundamental": True,
            "g0_dimension": g0.dim,
        },
        "degrees": degrees,
        "dimensions": [result.dims[d] for d in degrees],
        "terminated": result.terminated,
        "vanishing_degree": result.vanishing_degree,
        "max_degree": result.max_degree,
        "total_dimension": result.total_dimension,
        "basis": [{"name": e.name, "degree": e.degree} for e in algebra.basis],
        "structure_constants": constants,
        "normalization": [
            {
                "k": rep.k,
                "dim_target": rep.dim_target,
                "dim_image": rep.dim_image,
                "dim_kernel": rep.dim_kernel,
                "dim_complement": rep.dim_complement,
                "complement_indices": list(rep.complement_indices),
            }
            for rep in reports
        ],
        "diagnostics": diag,
    }


def _report_table(doc: dict) -> str:
    lines = [f"name: {doc['name']}"]
    dims = "  ".join(f"{d}:{v}" for d, v in zip(doc["degrees"], doc["dimensions"]))
    lines.append(f"graded dimensions: {dims}")
    if doc["terminated"]:
        lines.append(f"terminated: yes (degree {doc['vanishing_degree']} vanishes)")
        lines.append(f"total dimension: {doc['total_dimension']}")
    else:
        lines.append(f"terminated: no (truncated at max degree {doc['max_degree']})")
    lines.append("normalization (k, dim target, dim image, dim kernel, dim complement):")
    for rep in doc["normalization"]:
        lines.append(
            f"  {rep['k']}  {rep['dim_target']}  {rep['dim_image']}"
            f"  {rep['dim_kernel']}  {rep['dim_complement']}"
        )
    diag = doc["diagnostics"]
    if diag is not None:
        sig = tuple(diag["killing_signature"])
        lines.append(
            f"diagnostics: killing rank {diag['killing_rank']}, signature {sig}, "
            f"semisimple {diag['semisimple']}, center dim {diag['center_dimension']}, "
            f"graded pairing {diag['graded_pairing_ok']}"
        )
    return "\n".join(lines) + "\n"


if __name__ == "__main__":
    sys.exit(main())
