"""Command-line front end.

Graphs and matrices travel between subcommands as JSON on stdin/stdout, so
``inertia-lab gen --family cycle:5 | inertia-lab inertia`` works.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import harness
from .errors import InertiaLabError, InvalidSpec
from .exact_linalg import RatMatrix, ldlt_inertia
from .graph_core import Graph, all_pairs_distance_squared, build_family, parse_family
from .numeric_spectra import DEFAULT_TOL, jacobi_eigenvalues
from .predictors import (
    null_witness_deg2_pair, null_witness_even_cycle_branch, null_witness_opposite_pendants,
    opposite_pendants_graph, predict_inertia, row_witness_deg2,
)

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from exc


def _write(obj, out: Optional[str] = None, *, pretty: bool = False) -> None:
    text = json.dumps(obj, indent=2 if pretty else None, ensure_ascii=False)
    if out and out != "-":
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _load_matrix(path: str):
    """A graph JSON becomes its Δ; a matrix JSON is used as is."""
    obj = _read_json(path)
    if isinstance(obj, dict) and "edges" in obj:
        return all_pairs_distance_squared(Graph.from_json(obj))
    if isinstance(obj, dict) and "data" in obj:
        return RatMatrix.from_json(obj)
    raise UsageError(f"{path}: expected graph JSON (n, edges) or matrix JSON (n, data)")


def _load_graph(path: str) -> Graph:
    obj = _read_json(path)
    if not isinstance(obj, dict) or "edges" not in obj:
        raise UsageError(f"{path}: expected graph JSON with 'n' and 'edges'")
    return Graph.from_json(obj)


def _parse_kv(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items:
        key, sep, val = item.partition("=")
        if not sep:
            raise UsageError(f"witness argument {item!r} is not key=value")
        try:
            out[key] = int(val)
        except ValueError:
            raise UsageError(f"witness argument {item!r} needs an integer value") from None
    return out


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        a, b = int(lo), int(hi)
    except ValueError:
        raise UsageError(f"range {text!r} must look like A..B") from None
    if not sep or a > b:
        raise UsageError(f"range {text!r} must look like A..B with A <= B")
    return a, b


# ---------------------------------------------------------------------------
# subcommands

def cmd_gen(args) -> int:
    _write(build_family(parse_family(args.family)).to_json(), args.out)
    return EXIT_OK


def cmd_delta(args) -> int:
    _write(_load_matrix(args.file).to_json())
    return EXIT_OK


def cmd_inertia(args) -> int:
    m = _load_matrix(args.file)
    if args.method == "exact":
        result = ldlt_inertia(m)
    else:
        result = jacobi_eigenvalues(m, args.tol).inertia()
    _write(result.to_json())
    return EXIT_OK


def cmd_spectrum(args) -> int:
    spec = jacobi_eigenvalues(_load_matrix(args.file), args.tol)
    _write({**spec.to_json(), "inertia": spec.inertia().to_json()})
    return EXIT_OK


def cmd_predict(args) -> int:
    _write(predict_inertia(_load_graph(args.file)).to_json())
    return EXIT_OK


def cmd_witness(args) -> int:
    kv = _parse_kv(args.args)

    def need(*keys):
        missing = [k for k in keys if k not in kv]
        if missing:
            raise UsageError(f"--kind {args.kind} needs --args {' '.join(k + '=...' for k in missing)}")
        return [kv[k] for k in keys]

    if args.kind == "opposite":
        (k,) = need("k")
        g = opposite_pendants_graph(k)
        w = null_witness_opposite_pendants(k)
        vector, ok, claim = w.vector, w.verify(g), "Δv = 0"
    else:
        g = _load_graph(args.file)
        if args.kind == "row":
            (v,) = need("v")
            vector = row_witness_deg2(g, v)
            delta = RatMatrix.of(all_pairs_distance_squared(g).rows)
            ok, claim = all(x == 2 for x in delta.matvec(vector)), "Δx = 2·1"
        elif args.kind == "pair":
            v1, v2 = need("v1", "v2")
            w = null_witness_deg2_pair(g, v1, v2)
            vector, ok, claim = w.vector, w.verify(g), "Δv = 0"
        else:
            (u,) = need("u")
            w = null_witness_even_cycle_branch(g, u)
            vector, ok, claim = w.vector, w.verify(g), "Δv = 0"
    status = f"verified: {claim}" if ok else f"FAILED: {claim} does not hold"
    _write({"kind": args.kind, "vector": [str(x) for x in vector], "verified": ok,
            "status": status})
    print(status, file=sys.stderr)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_verify(args) -> int:
    lo, hi = _parse_range(args.range)
    report = harness.verify_campaign(args.family, lo, hi, tree_max=args.tree_max,
                                     max_n=args.max_n, jobs=args.jobs)
    _write(report.to_json(), args.out, pretty=True)
    print(f"{report.family} {lo}..{hi}: {report.instance_count} instances, "
          f"{len(report.mismatches)} mismatches", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_scan(args) -> int:
    lines = harness.conjecture_scan(args.samples, args.max_n, args.seed, jobs=args.jobs)
    fh = open(args.out, "w", encoding="utf-8") if args.out and args.out != "-" else sys.stdout
    try:
        for rec in lines:
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
            if rec["type"] == "summary":
                print(f"{rec['samples']} samples, {rec['out_of_bounds']} out of bounds",
                      file=sys.stderr)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def cmd_props(args) -> int:
    report = harness.property_suite(args.seed, args.trials)
    _write(report, pretty=True)
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="inertia-lab",
                                 description="Inertia of distance-squared matrices of trees and unicyclic graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit graph JSON for a family")
    p.add_argument("--family", required=True,
                   help="e.g. cycle:5, tree:0,0, evencycle-tree:6+1,2@0, pendants:6x3, opposite:3")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("delta", help="emit the distance-squared matrix")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("inertia", help="emit the inertia triple of a graph or matrix")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--method", choices=("exact", "numeric"), default="exact")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_inertia)

    p = sub.add_parser("spectrum", help="emit the Jacobi spectrum")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("predict", help="emit the closed-form prediction")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("witness", help="build and verify a witness vector")
    p.add_argument("file", nargs="?", default="-", help="graph JSON (unused for --kind opposite)")
    p.add_argument("--kind", required=True, choices=("row", "pair", "branch", "opposite"))
    p.add_argument("--args", nargs="*", default=[], metavar="KEY=INT",
                   help="row: v=; pair: v1= v2=; branch: u=; opposite: k=")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="compare predictions with the exact oracle over a family")
    p.add_argument("--family", required=True, choices=harness.FAMILIES)
    p.add_argument("--range", required=True, help="A..B")
    p.add_argument("--tree-max", type=int, default=5)
    p.add_argument("--max-n", type=int, help="exact oracle cap (default 24 or $INERTIA_LAB_MAX_N)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="random scan of the leaf bounds on unicyclic graphs")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("props", help="seeded exact property checks")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.set_defaults(func=cmd_props)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, InvalidSpec, FileNotFoundError) as exc:
        print(f"inertia-lab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InertiaLabError as exc:
        print(f"inertia-lab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"inertia-lab: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
