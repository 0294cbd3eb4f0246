"""Command-line entry point: ``spectral-chroma {bound,table1,table2,figure2,catalog}``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from . import experiments as ex
from .bounds import (BoundError, BoundKind, classic_kappa_bound, hoffman_bound,
                     hoffman_type_bound, unified_kappa_bound, vector_r_bound)
from .catalog import CatalogError, catalog_names, named_graph
from .coloring import ColoringBudgetExceeded
from .graph import GraphError, power_graph
from .graph6 import Graph6Error, parse_graph6, read_graph6_file, write_graph6
from .optimizers import EncodingError, optimize
from .spectra import NumericalError, Polynomial, eigendecompose

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


def _polynomial(text: str) -> Polynomial:
    try:
        return Polynomial([float(c) for c in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma-separated coefficients a0,a1,...; got {text!r}") from None


def _n_range(text: str) -> list[int]:
    """``5`` or ``5-12`` or ``3,5,7``."""
    out = []
    try:
        for part in text.split(","):
            if "-" in part:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad n range {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty n range")
    return out


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _load_graphs(args) -> list[tuple[str, object]]:
    if args.graph:
        return [(args.graph, named_graph(args.graph))]
    if args.graph6:
        return [(args.graph6, parse_graph6(args.graph6))]
    return [(write_graph6(g), g) for g in read_graph6_file(args.graph6_file)]


def _bound_report(g, kind: BoundKind, k: int, poly, args):
    if kind in (BoundKind.HOFFMAN, BoundKind.CLASSIC_KAPPA):
        # the classical bounds act on chi(G^k) = chi_k(G)
        h = g if k == 1 else power_graph(g, k)
        spec = eigendecompose(h)
        rep = hoffman_bound(spec) if kind is BoundKind.HOFFMAN else classic_kappa_bound(h, spec)
        return dataclasses.replace(rep, k=k)
    spec = eigendecompose(g)
    if poly is None:
        kw = {"dump_dir": args.dump_dir}
        if kind is BoundKind.UNIFIED_KAPPA:
            kw["method"] = args.method
        return optimize(kind, g, spec, k, **kw)
    closed = {BoundKind.HOFFMAN_TYPE: hoffman_type_bound, BoundKind.VECTOR_R: vector_r_bound,
              BoundKind.UNIFIED_KAPPA: unified_kappa_bound}[kind]
    return closed(g, poly, spec, k)


def cmd_bound(args) -> int:
    kind = BoundKind(args.bound)
    results = []
    for gid, g in _load_graphs(args):
        rep = _bound_report(g, kind, args.k, args.poly, args)
        row = {"graph": gid, "n": g.n, **rep.as_dict()}
        results.append(row)
        if not args.json:
            print(f"graph: {gid} (n={g.n}, m={g.m})")
            print(f"bound: {kind.value}  k={rep.k}")
            print(f"raw: {rep.raw:.12g}")
            print(f"lower bound: {rep.lower_bound}")
            if rep.kappa is not None:
                print(f"kappa: {rep.kappa}")
            print("witness: " + ", ".join(f"{c:.12g}" for c in rep.witness.coefficients))
            if rep.note:
                print(f"note: {rep.note}")
    if args.json:
        print(json.dumps(results if len(results) > 1 else results[0], indent=2))
    return EXIT_OK


def cmd_table1(args) -> int:
    records = ex.run_table1(args.graphs, jobs=args.jobs, kappa_method=args.method)
    if args.output:
        ex.write_records(args.output, records, args.format)
    else:
        text = ex.records_to_csv(records) if args.format == "csv" else ex.records_to_json(records)
        sys.stdout.write(text)
    mismatches = ex.compare_table1(records)
    print(f"{len(records)} rows, {len(mismatches)} mismatches", file=sys.stderr)
    for mm in mismatches:
        print(f"MISMATCH {mm}", file=sys.stderr)
    return EXIT_MISMATCH if mismatches else EXIT_OK


def cmd_table2(args) -> int:
    rows = ex.run_table2(args.n, args.graph6_file, jobs=args.jobs)
    print("n,hoffman_sharp,kappa_sharp,total,matches_expected")
    bad = 0
    for r in rows:
        expected = ex.EXPECTED_TABLE2.get(r.n)
        ok = "" if expected is None else str(expected == r.as_tuple()).lower()
        bad += ok == "false"
        print(f"{r.n},{r.hoffman_sharp},{r.kappa_sharp},{r.total},{ok}")
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_figure2(args) -> int:
    rows = ex.run_figure2(args.n, args.samples, args.seed, jobs=args.jobs,
                          kappa_mode=args.kappa_on)
    text = ex.figure2_csv(rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_catalog(args) -> int:
    for name in catalog_names():
        g = named_graph(name)
        print(f"{name}\t{g.n}\t{g.m}\t{write_graph6(g)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spectral-chroma", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true", help="log solver diagnostics")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate or optimise one bound")
    src = b.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="catalog name (see `catalog`)")
    src.add_argument("--graph6", help="graph6 string")
    src.add_argument("--graph6-file", help="file with one graph6 string per line")
    b.add_argument("-k", type=_positive, default=1, help="distance parameter (default 1)")
    b.add_argument("--bound", required=True, choices=[k.value for k in BoundKind])
    mode = b.add_mutually_exclusive_group()
    mode.add_argument("--optimize", action="store_true",
                      help="optimise the polynomial (default when --poly is absent)")
    mode.add_argument("--poly", type=_polynomial, metavar="A0,A1,...",
                      help="fixed polynomial coefficients, constant term first")
    b.add_argument("--method", choices=["threshold", "bilp"], default="threshold",
                   help="unified-kappa optimiser (default threshold)")
    b.add_argument("--dump-dir", help="write every LP/BILP subproblem in LP format here")
    b.add_argument("--json", action="store_true", help="machine-readable output")
    b.set_defaults(func=cmd_bound)

    t1 = sub.add_parser("table1", help="named-graph table with exact chi_2")
    t1.add_argument("--output", "-o", help="output file (default stdout)")
    t1.add_argument("--format", choices=["csv", "json"], default="csv")
    t1.add_argument("--graphs", nargs="+", help="subset of catalog keys")
    t1.add_argument("--method", choices=["threshold", "bilp"], default="threshold",
                    help="unified-kappa optimiser; bilp takes up to about 3 min per 20-vertex graph")
    t1.add_argument("--jobs", type=_positive)
    t1.set_defaults(func=cmd_table1)

    t2 = sub.add_parser("table2", help="sharpness counts over connected graphs")
    t2.add_argument("--n", type=_n_range, default=list(range(3, 8)), help="e.g. 3-7 (default)")
    t2.add_argument("--graph6-file", help="all connected graphs for n > 7, e.g. from geng -c")
    t2.add_argument("--jobs", type=_positive)
    t2.set_defaults(func=cmd_table2)

    f2 = sub.add_parser("figure2", help="random-graph out-performance proportions (CSV)")
    f2.add_argument("--n", type=_n_range, default=list(range(5, 13)), help="e.g. 5-12 (default)")
    f2.add_argument("--samples", type=_positive, default=200)
    f2.add_argument("--seed", type=int, default=100)
    f2.add_argument("--kappa-on", choices=list(ex.KAPPA_MODES), default="p2",
                    help="evaluate kappa on the Hoffman-type witness (default) or optimise it")
    f2.add_argument("--output", "-o")
    f2.add_argument("--jobs", type=_positive)
    f2.set_defaults(func=cmd_figure2)

    c = sub.add_parser("catalog", help="list named graphs: key, n, m, graph6")
    c.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GraphError, Graph6Error, CatalogError, BoundError, EncodingError, NumericalError,
            ColoringBudgetExceeded, FileNotFoundError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
