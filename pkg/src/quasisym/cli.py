"""Command line front end: ``python3 -m quasisym {fit,scan,consensus,algebra}``.

Exit codes: 0 success, 1 bad input or arguments, 2 a fit did not converge.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
import tempfile
import time
from fractions import Fraction

import numpy as np

from .fit import FitConfig, constrained_residual, newton_fit
from .gof import gof_report
from .ideal import (
    GraphError,
    cycle_polynomial,
    enumerate_cycles,
    load_graph,
    markov_basis,
    monomial_ideal_components,
    spanning_trees,
)
from .model import ModelSpec
from .scan import consensus, default_grid, profile
from .tables import SymmetricTable, TableError, load_table

SCHEMA = 1
EXIT_OK, EXIT_INPUT, EXIT_NOT_CONVERGED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_t_exact(text: str) -> Fraction:
    """Accept ``0.5`` or an exact fraction such as ``2/3``."""
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"t must lie in [0, 1], got {text}")
    return value


def parse_t(text: str) -> float:
    return float(parse_t_exact(text))


def _sig(x):
    """Round floats to 10 significant digits, recursively; non-finite values become strings."""
    if isinstance(x, dict):
        return {k: _sig(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_sig(v) for v in x]
    if isinstance(x, np.ndarray):
        return _sig(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return str(x)
        return float(f"{x:.10g}") + 0.0  # + 0.0 turns -0.0 into 0.0
    return x


def dumps(report: dict) -> str:
    return json.dumps(_sig(report), indent=2, sort_keys=True) + "\n"


def write_atomic(path: str, text: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _digest(paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        with open(p, "rb") as fh:
            h.update(fh.read())
    return h.hexdigest()


def _fit_record(table, family: str, t: float, constraint: str, cfg: FitConfig) -> dict:
    res = newton_fit(table, ModelSpec(family, t, constraint), cfg)
    rep = gof_report(table, res.m_hat, family)
    s_hat = res.s_hat.values if isinstance(res.s_hat, SymmetricTable) else res.s_hat
    record = {
        "a_hat": res.a_hat,
        "s_hat": s_hat,
        "expected": res.m_hat,
        "loglik": res.loglik,
        "g2": rep.g2,
        "df": rep.df,
        "p_value": rep.p_value,
        "iterations": res.iterations,
        "converged": res.converged,
        "grad_norm": res.grad_norm,
        "hessian_negdef": res.hessian_negdef,
    }
    if table.dim >= 3:
        record["membership_residual"] = abs(constrained_residual(res.p_hat, t))
    return record


def _config(args) -> FitConfig:
    return FitConfig(max_iter=args.max_iter, tol=args.tol, method=args.method)


def cmd_fit(args) -> int:
    start = time.perf_counter()
    table = load_table(args.table)
    family = args.family.upper()
    constraint = {"last": "last_zero", "wmean": "weighted_mean_zero"}[args.constraint]
    record = _fit_record(table, family, args.t, constraint, _config(args))
    report = {
        "schema": SCHEMA,
        "command": "fit",
        "input": {"path": os.path.basename(args.table), "sha256": _digest([args.table])},
        "model": {"family": family, "t": args.t, "constraint": constraint},
        "fit": record,
    }
    if args.timing:
        report["timing_s"] = time.perf_counter() - start
    _emit(dumps(report), args.out)
    return EXIT_OK if record["converged"] else EXIT_NOT_CONVERGED


def cmd_scan(args) -> int:
    table = load_table(args.table)
    prof = profile(table, args.family.upper(), default_grid(args.grid), _config(args))
    _emit(prof.to_csv(), args.out)
    return EXIT_OK if bool(np.all(prof.converged)) else EXIT_NOT_CONVERGED


def cmd_consensus(args) -> int:
    start = time.perf_counter()
    tables = [load_table(p) for p in args.tables]
    family = args.family.upper()
    cfg = _config(args)
    res = consensus(tables, family, args.alpha, default_grid(args.grid), cfg, statistic=args.statistic)
    report = {
        "schema": SCHEMA,
        "command": "consensus",
        "inputs": [{"path": os.path.basename(p), "sha256": _digest([p])} for p in args.tables],
        "family": family,
        "alpha": args.alpha,
        "statistic": args.statistic,
        "interval": res.interval,
        "segments": res.segments,
        "crossing": res.crossing,
        "crossing_value": res.crossing_value,
        "flat": res.flat,
    }
    converged = all(bool(np.all(p.converged)) for p in res.profiles)
    if res.crossing is not None:
        fits = [_fit_record(tb, family, res.crossing, "last_zero", cfg) for tb in tables]
        report["fits_at_crossing"] = fits
        converged = converged and all(f["converged"] for f in fits)
    if args.timing:
        report["timing_s"] = time.perf_counter() - start
    _emit(dumps(report), args.out)
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def _edges_text(edges) -> str:
    return " ".join(f"{{{i},{j}}}" for i, j in sorted(edges))


def cmd_algebra(args) -> int:
    g = load_graph(args.graph)
    lines = []
    if args.op == "cycles":
        lines = ["-".join(map(str, c)) for c in enumerate_cycles(g)]
    elif args.op == "markov":
        lines = [str(b) for b in markov_basis(g)]
    elif args.op == "poly":
        for c in enumerate_cycles(g):
            poly = cycle_polynomial(c)
            if args.t_specialize is not None:
                poly = poly.specialize(args.t_specialize)
            lines.append(str(poly))
    elif args.op == "trees":
        trees = spanning_trees(g)
        lines = [str(len(trees))] + [_edges_text(tr) for tr in trees]
    elif args.op == "ideal":
        dec = monomial_ideal_components(g, args.order)
        lines = ["generators: " + ", ".join(dec.generator_strings())]
        lines += [
            f"{_edges_text(tr)} -> {comp}"
            for tr, comp in zip(dec.trees, dec.component_strings())
        ]
        if dec.verified is not None:
            lines.append(f"intersection check: {'ok' if dec.verified else 'FAILED'}")
    _emit("".join(line + "\n" for line in lines), args.out)
    return EXIT_OK


def _add_fit_controls(p):
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--method", choices=("coordinate", "full"), default="coordinate")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasisym", description="Fit and analyse quasisymmetry models QS_t and QSI_t.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fit", help="fit one model at a fixed t")
    p.add_argument("table")
    p.add_argument("--family", choices=("qs", "qsi", "QS", "QSI"), default="qs")
    p.add_argument("--t", type=parse_t, required=True)
    p.add_argument("--constraint", choices=("last", "wmean"), default="last")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true", help="add wall-clock time to the report")
    _add_fit_controls(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("scan", help="profile the fit over an equispaced t grid")
    p.add_argument("table")
    p.add_argument("--family", choices=("qs", "qsi", "QS", "QSI"), default="qs")
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--out")
    _add_fit_controls(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("consensus", help="common t for several tables")
    p.add_argument("tables", nargs="+")
    p.add_argument("--family", choices=("qs", "qsi", "QS", "QSI"), default="qs")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--statistic", choices=("p_value", "g2"), default="p_value")
    p.add_argument("--out")
    p.add_argument("--timing", action="store_true")
    _add_fit_controls(p)
    p.set_defaults(func=cmd_consensus)

    p = sub.add_parser("algebra", help="exact invariants of a graph")
    p.add_argument("graph")
    p.add_argument("--op", choices=("cycles", "markov", "ideal", "trees", "poly"), required=True)
    p.add_argument("--t-specialize", type=parse_t_exact, default=None)
    p.add_argument("--order", choices=("lex", "grevlex"), default="lex")
    p.add_argument("--out")
    p.set_defaults(func=cmd_algebra)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "consensus" and len(args.tables) < 2:
        parser.error("consensus needs at least two tables")
    if getattr(args, "grid", 2) < 2:
        parser.error("--grid must be at least 2")
    try:
        return args.func(args)
    except (TableError, GraphError, OSError, ValueError) as exc:
        print(f"quasisym: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
