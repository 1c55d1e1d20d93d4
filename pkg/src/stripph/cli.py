"""Command-line driver: generate, reduce, diagram, bench, fit, realize, verify.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 numeric
guard refusal.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from . import complexes, generators
from .f2 import boundary_matrix, boundary_submatrix
from .realization import (DeltaUnderflowError, flag_check, one_skeleton,
                          realize, verify_realization)
from .reduction import ALGORITHMS, diagram, extract_pairs, reduce

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_GUARD = 3

SCOPES = ("full", "d2", "d1")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _load_complex(args) -> complexes.FilteredComplex:
    if getattr(args, "input", None):
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input) as fh:
                text = fh.read()
        stripped = text.lstrip()
        if stripped.startswith("["):
            return complexes.from_json(text)
        return complexes.parse(text)
    if args.variant is None or args.n is None:
        raise UsageError("provide either --input or --variant with --n")
    return _generate(args.variant, args.n)


def _generate(variant: str, n: int) -> complexes.FilteredComplex:
    if variant == "strip":
        return generators.strip(n)
    if variant == "modified":
        return generators.modified_strip(n)
    raise UsageError(f"unknown variant {variant!r}")


def _write(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _matrix_for_scope(complex, scope: str):
    if scope == "full":
        return boundary_matrix(complex)
    if scope == "d2":
        return boundary_submatrix(complex, 2)
    if scope == "d1":
        return boundary_submatrix(complex, 1)
    raise UsageError(f"unknown scope {scope!r}")


def cmd_generate(args) -> int:
    complex = _generate(args.variant, args.n)
    if args.format == "json":
        _write(complexes.to_json(complex) + "\n", args.output)
    else:
        header = f"{args.variant} complex, n={args.n}, {len(complex)} simplices"
        _write(complexes.serialize(complex, header=header), args.output)
    return EXIT_OK


def cmd_reduce(args) -> int:
    complex = _load_complex(args)
    matrix = _matrix_for_scope(complex, args.scope)
    result = reduce(matrix, args.algorithm, record_trace=args.trace)
    if args.trace and result.trace:
        running = 0
        for i, j, cost in result.trace:
            running += cost
            print(f"C{i}+C{j} -> C{j}  cost={cost} total={running}")
    print(f"algorithm={args.algorithm} scope={args.scope} "
          f"column_additions={result.counter.column_additions} "
          f"field_additions={result.counter.field_additions}")
    if result.counter.by_dimension:
        per_dim = " ".join(f"d{d}={c}" for d, c in
                           sorted(result.counter.by_dimension.items()))
        print(f"field_additions_by_dimension: {per_dim}")
    return EXIT_OK


def _fmt_death(d) -> str:
    return "inf" if math.isinf(d) else str(int(d))


def cmd_diagram(args) -> int:
    complex = _load_complex(args)
    result = reduce(boundary_matrix(complex), "twist")
    dgm = diagram(extract_pairs(result, complex))
    if args.format == "json":
        payload = {str(dim): [[b, None if math.isinf(d) else d] for b, d in pts]
                   for dim, pts in sorted(dgm.points.items())}
        _write(json.dumps(payload) + "\n", args.output)
    else:
        lines = []
        for dim, pts in sorted(dgm.points.items()):
            body = " ".join(f"({b},{_fmt_death(d)})" for b, d in pts)
            lines.append(f"dgm{dim}: {body}")
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    if not 1 <= args.min_n <= args.max_n:
        raise UsageError("need 1 <= min-n <= max-n")
    records = []
    for n in range(args.min_n, args.max_n + 1, args.step):
        complex = _generate(args.variant, n)
        matrix = _matrix_for_scope(complex, args.scope)
        for algorithm in algorithms:
            start = time.perf_counter_ns()
            result = reduce(matrix, algorithm)
            elapsed = time.perf_counter_ns() - start
            records.append({
                "n": n, "N": len(complex), "algorithm": algorithm,
                "scope": args.scope,
                "column_additions": result.counter.column_additions,
                "field_additions": result.counter.field_additions,
                "elapsed_ns": elapsed,
            })
    records.sort(key=lambda r: (r["n"], r["algorithm"]))
    if args.format == "json":
        _write(json.dumps(records) + "\n", args.output)
    else:
        header = "n,N,algorithm,scope,column_additions,field_additions,elapsed_ns"
        lines = [header] + [
            f"{r['n']},{r['N']},{r['algorithm']},{r['scope']},"
            f"{r['column_additions']},{r['field_additions']},{r['elapsed_ns']}"
            for r in records]
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_fit(args) -> int:
    import numpy as np

    if args.csv == "-":
        text = sys.stdin.read()
    else:
        with open(args.csv) as fh:
            text = fh.read()
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise UsageError("empty benchmark file")
    header = lines[0].split(",")
    idx = {name: k for k, name in enumerate(header)}
    groups: dict[tuple[str, str], list[tuple[int, int, int]]] = {}
    for ln in lines[1:]:
        parts = ln.split(",")
        key = (parts[idx["algorithm"]], parts[idx["scope"]])
        groups.setdefault(key, []).append(
            (int(parts[idx["n"]]), int(parts[idx["field_additions"]]),
             int(parts[idx["column_additions"]]) * int(parts[idx["N"]])))
    emitted = False
    for (algorithm, scope), rows in sorted(groups.items()):
        if len(rows) < 4:
            continue
        xs = np.log([n for n, _, _ in rows])
        ys = np.log([c for _, c, _ in rows])
        (slope, intercept), residuals, *_ = np.polyfit(xs, ys, 1, full=True)
        residual = float(residuals[0]) if len(residuals) else 0.0
        # Dense-model cost: every column addition touches a length-N column,
        # which is the quantity the cubic lower-bound argument counts.
        ops = np.log([c for _, _, c in rows])
        ops_slope = np.polyfit(xs, ops, 1)[0]
        print(f"algorithm={algorithm} scope={scope} "
              f"slope={slope:.4f} ops_slope={ops_slope:.4f} "
              f"residual={residual:.6f}")
        emitted = True
    if not emitted:
        print("need at least 4 rows per (algorithm, scope) group",
              file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_realize(args) -> int:
    complex = _load_complex(args)
    gate = flag_check(complex)
    if not gate.ok:
        print(f"refused: not a flag complex ({gate.counterexample})",
              file=sys.stderr)
        return EXIT_VERIFY
    realization = realize(one_skeleton(complex))
    if args.format == "json":
        payload = {
            "points": realization.points,
            "radii": realization.radii,
            "level_map": realization.level_map,
        }
        _write(json.dumps(payload) + "\n", args.output)
    else:
        lines = [f"{realization.n} {realization.m}",
                 " ".join(f"{r:.17g}" for r in realization.radii)]
        for p in realization.points:
            lines.append(" ".join(f"{x:.17g}" for x in p))
        _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    complex = _load_complex(args)
    gate = flag_check(complex)
    if not gate.ok:
        print(f"refused: not a flag complex ({gate.counterexample})",
              file=sys.stderr)
        return EXIT_VERIFY
    report = verify_realization(one_skeleton(complex))
    if report.ok:
        print(f"ok: n={report.n} m={report.m}, all {report.m} stages match, "
              f"H1 diagrams agree")
        return EXIT_OK
    for msg in report.edge_mismatches:
        print(msg, file=sys.stderr)
    if report.diagram_mismatch:
        print(report.diagram_mismatch, file=sys.stderr)
    return EXIT_VERIFY


def _add_instance_args(p, require_variant=False):
    p.add_argument("--input", help="complex file (text or JSON), '-' for stdin")
    p.add_argument("--variant", choices=("strip", "modified"),
                   help="generated instance family")
    p.add_argument("--n", type=int, help="instance size parameter")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stripph",
                     description="Worst-case strip complexes for persistent "
                                 "homology reduction")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a generated complex")
    p.add_argument("variant", choices=("strip", "modified"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="run a reduction and print counters")
    _add_instance_args(p)
    p.add_argument("--algorithm", choices=ALGORITHMS, default="standard")
    p.add_argument("--scope", choices=SCOPES, default="full")
    p.add_argument("--trace", action="store_true",
                   help="log each column addition")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("diagram", help="print persistence diagrams")
    _add_instance_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("bench", help="sweep instance sizes and count additions")
    p.add_argument("variant", choices=("strip", "modified"))
    p.add_argument("--min-n", type=int, dest="min_n", required=True)
    p.add_argument("--max-n", type=int, dest="max_n", required=True)
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--algorithms", default="standard,twist,lookahead")
    p.add_argument("--scope", choices=SCOPES, default="full")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("fit", help="log-log growth fit of a benchmark CSV")
    p.add_argument("csv", help="benchmark CSV file, '-' for stdin")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("realize", help="emit point cloud and threshold radii")
    _add_instance_args(p)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default="-")
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("verify", help="round-trip check of the realization")
    _add_instance_args(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DeltaUnderflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, complexes.ComplexFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
