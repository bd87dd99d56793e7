"""Command-line front end for hochproj.

Usage
-----
python cli.py hh algebras/triangle_zero_relation.json --max-degree 3
python cli.py hh algebras/cycle2_nakayama.json --module dual --reps
python cli.py phi algebras/triangle_path.json --module file:algebras/triangle_loop_split.json --degree 1
python cli.py relext algebras/triangle_zero_relation.json --output relext_B.json
python cli.py verify --only relation-extension

Reports are JSON on standard output.  Exit codes: 0 success, 1 failed
verification, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from algebra import Algebra, build_algebra
from algebra_files import load_algebra, load_split_extension, module_from_spec, presentation_from_file
from bimodule import regular_bimodule
from checks import BLOCKS, run_suite
from config import get_config
from errors import HochprojError
from exactlin import format_scalar
from extcohom import ext_dc_c
from extension import phi, trivial_extension
from hochschild import Cochain, CochainComplex
from minres import hh_via_minres
from relext import relation_extension_algebra, relation_extension_file
from reports import dump_report, input_hash, matrix_strings, summarize

logger = logging.getLogger("hochproj")


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(prog="hochproj", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Field tag (Q or Fp:<prime>); must match the algebra file")
    common.add_argument("--cap", type=int, help="Column cap for cochain spaces (overrides HOCHPROJ_BAR_CAP)")
    common.add_argument("--verbose", action="store_true", help="Debug logging and a summary on stderr")
    common.add_argument("--timing", action="store_true", help="Include wall-clock timing in the JSON report")
    commands = parser.add_subparsers(dest="command", required=True)

    hh_parser = commands.add_parser("hh", parents=[common], help="Hochschild cohomology dimensions")
    hh_parser.add_argument("algebra", help="Algebra file (JSON)")
    hh_parser.add_argument("--module", default="regular", help="regular | dual | ext:<m> | file:<split file>")
    hh_parser.add_argument("--max-degree", type=int, default=2, help="Highest degree to compute")
    hh_parser.add_argument("--reps", action="store_true", help="Include representative cocycles")
    hh_parser.add_argument("--method", choices=("normalized", "bar", "minres"), default="normalized",
                           help="Cochain model (minres: monomial algebras, regular module, degree <= 2)")

    phi_parser = commands.add_parser("phi", parents=[common], help="Hochschild projection morphism")
    phi_parser.add_argument("algebra", help="Algebra file of C (JSON)")
    phi_parser.add_argument("--module", "--bimodule", dest="module", default="dual",
                            help="E for B = C x E: regular | dual | ext:<m>, or file:<split file> for a split B")
    phi_parser.add_argument("--degree", type=int, default=1)

    relext_parser = commands.add_parser("relext", parents=[common], help="Relation extension of a triangular algebra")
    relext_parser.add_argument("algebra", help="Algebra file of C (JSON)")
    relext_parser.add_argument("--output", help="Write the algebra file of B here")
    relext_parser.add_argument("--names", nargs="*", help="Names of the new arrows, one per relation")

    verify_parser = commands.add_parser("verify", parents=[common], help="Run the replication suite")
    verify_parser.add_argument("--only", choices=sorted(BLOCKS), help="Run a single block")
    verify_parser.add_argument("--algebras", help="Directory of algebra files (default: bundled)")
    return parser.parse_args(argv)


def configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else getattr(logging, str(get_config().LOG_LEVEL).upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def apply_cap(cap: Optional[int]) -> dict:
    """Override the cochain caps; returns the previous values for restore_caps."""
    settings = get_config()
    previous = {"BAR_CAP": settings.BAR_CAP, "EXT_CAP": settings.EXT_CAP}
    if cap is not None:
        if cap <= 0:
            raise HochprojError("--cap must be positive")
        settings.BAR_CAP = cap
        settings.EXT_CAP = cap
    return previous


def restore_caps(previous: dict) -> None:
    settings = get_config()
    for name, value in previous.items():
        setattr(settings, name, value)


def _file_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def format_cochain(cochain: Cochain) -> dict:
    """{argument labels: {module label: scalar}} with exact scalars."""
    algebra, module = cochain.algebra, cochain.module
    out = {}
    for key in sorted(cochain.values):
        label = "⊗".join(algebra.labels[i] for i in key) or "()"
        out[label] = {module.labels[m]: format_scalar(algebra.field, v)
                      for m, v in sorted(cochain.values[key].items())}
    return out


# -------------------- Commands -------------------- #

def cmd_hh(args: argparse.Namespace) -> tuple[dict, int]:
    algebra = load_algebra(args.algebra, args.field)
    module = module_from_spec(args.module, algebra)
    if args.max_degree < 0:
        raise HochprojError("--max-degree must be non-negative")
    dims, representatives = [], {}
    if args.method == "minres":
        for n in range(args.max_degree + 1):
            result = hh_via_minres(algebra, n, module)
            dims.append(result.dim)
            if args.reps:
                representatives[str(n)] = [{str(k): format_scalar(algebra.field, v) for k, v in sorted(r.items())}
                                           for r in result.representatives]
    else:
        complex_ = CochainComplex(algebra, module, normalized=args.method == "normalized")
        for n in range(args.max_degree + 1):
            space = complex_.cohomology(n)
            dims.append(space.dim)
            if args.reps:
                representatives[str(n)] = [format_cochain(r) for r in space.representatives]
    results = {"dim_algebra": algebra.dim, "dim_module": module.dim, "module": args.module,
               "method": args.method, "dims": dims}
    if args.reps:
        results["representatives"] = representatives
    return results, 0


def _extension_for(C: Algebra, spec: str):
    if spec.startswith("file:"):
        return load_split_extension(spec[5:], C)
    return trivial_extension(C, module_from_spec(spec, C))


def cmd_phi(args: argparse.Namespace) -> tuple[dict, int]:
    C = load_algebra(args.algebra, args.field)
    ext = _extension_for(C, args.module)
    matrix = phi(ext, args.degree)
    results = {
        "degree": args.degree, "module": args.module, "dim_C": C.dim, "dim_E": ext.E.dim, "dim_B": ext.B.dim,
        "HH(B)": matrix.source.dim, "HH(C)": matrix.target.dim, "matrix": matrix_strings(matrix.matrix),
        "rank": matrix.rank, "surjective": matrix.surjective, "kernel_dim": matrix.kernel_dim,
    }
    return results, 0


def _hh_dims(algebra: Algebra, top: int = 1) -> list[int]:
    complex_ = CochainComplex(algebra, regular_bimodule(algebra))
    return [complex_.cohomology(n).dim for n in range(top + 1)]


def cmd_relext(args: argparse.Namespace) -> tuple[dict, int]:
    C = load_algebra(args.algebra, args.field)
    relext, B = relation_extension_algebra(C.presentation, names=args.names or None)
    emitted = relation_extension_file(relext)
    rebuilt = build_algebra(presentation_from_file(json.loads(json.dumps(emitted))))
    dims_b = _hh_dims(B)
    round_trip = rebuilt.dim == B.dim and _hh_dims(rebuilt) == dims_b
    e2 = ext_dc_c(C, 2)
    results = {
        "new_arrows": [{"name": arrow.name, "from": arrow.source, "to": arrow.target, "relation": str(relation)}
                       for arrow, relation in relext.new_arrows],
        "potential": str(relext.potential),
        "cyclic_derivatives": [str(d) for d in relext.cyclic_derivatives],
        "relations": [str(r) for r in relext.relations],
        "implied_generators": len(relext.implied),
        "dim_C": C.dim, "dim_E2": e2.dim, "dim_B": B.dim,
        "dimension_check": B.dim == C.dim + e2.dim,
        "hh_B": dims_b, "round_trip": round_trip, "global_dimension": "assumed at most 2",
        "algebra_file": emitted,
    }
    if args.output:
        Path(args.output).write_text(json.dumps(emitted, indent=2) + "\n", encoding="utf-8")
        logger.info(f"Wrote {args.output}")
    passed = results["dimension_check"] and round_trip
    return results, 0 if passed else 1


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    blocks = run_suite(args.only, args.algebras)
    checks = [check for block in blocks.values() for check in block]
    results = {name: [c.to_dict() for c in block] for name, block in blocks.items()}
    results["summary"] = summarize(checks)
    return results, 0 if all(c.passed for c in checks) else 1


COMMANDS = {"hh": cmd_hh, "phi": cmd_phi, "relext": cmd_relext, "verify": cmd_verify}


def _summary_lines(results: dict) -> list[str]:
    summary = results.get("summary")
    if summary is not None:
        lines = [f"{summary['passed']}/{summary['total']} checks passed"]
        lines.extend(f"FAILED: {name}" for name in summary["failed"])
        return lines
    return [f"{key}: {value}" for key, value in results.items()
            if not isinstance(value, (dict, list)) or key in ("dims", "hh_B", "relations")]


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = parse_args(argv)
    configure_logging(args.verbose)
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.perf_counter()
    previous: dict = {}
    try:
        previous = apply_cap(args.cap)
        texts = [_file_text(args.algebra)] if getattr(args, "algebra", None) else []
        results, code = COMMANDS[args.command](args)
    except (HochprojError, OSError, json.JSONDecodeError) as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        return 2
    finally:
        restore_caps(previous)
    elapsed = time.perf_counter() - started
    report = {"command": argv, "input_hash": input_hash(*texts), "results": results}
    if args.timing:
        report["timing"] = {"seconds": round(elapsed, 3)}
    print(dump_report(report))
    if args.verbose:
        for line in _summary_lines(results):
            print(line, file=sys.stderr)
        print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
