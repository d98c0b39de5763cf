"""Command-line front end.

Every subcommand writes deterministic CSV files (comment header carrying the
run configuration, 10-significant-digit values, footer comments with summary
numbers) and, unless --no-plot is given, a companion PNG figure.

Subcommands: tables, compare, ai-ablation, integral-eq, variational, oracle.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .applications import (
    IntegralEquationProblem,
    VariationalProblem,
    solve_integral_equation,
    solve_variational,
)
from .decomposition import (
    ExpansionParams,
    GridResult,
    analytic_series_grid,
    coefficient_set,
    decomposition_grid,
    l2_error,
    tail_A,
    tail_B,
)
from .output import CsvTable, format_value
from .reference import FunctionSpec, Interval, rl_integral_oracle
from . import plotting

__all__ = ["main", "build_parser", "parse_function"]


def parse_function(spec: str) -> FunctionSpec:
    """t3 | t10 | exp | sin | zero | power:<exponent> | file:<csv-of-t,x-samples>"""
    if spec == "t3":
        return FunctionSpec.power(3.0)
    if spec == "zero":
        return FunctionSpec.constant(0.0)
    if spec == "t10":
        return FunctionSpec.power(10.0)
    if spec == "exp":
        return FunctionSpec.exp()
    if spec == "sin":
        return FunctionSpec.sin()
    if spec.startswith("power:"):
        return FunctionSpec.power(float(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        path = spec.split(":", 1)[1]
        data = np.loadtxt(path, delimiter=",", comments="#")
        if data.ndim != 2 or data.shape[1] < 2:
            raise ValueError(f"{path}: expected two CSV columns (t, x)")
        return FunctionSpec.from_samples(data[:, 0], data[:, 1],
                                         label=Path(path).name)
    raise ValueError(f"unknown function {spec!r}")


def _header(table: CsvTable, args: argparse.Namespace, keys: list[str]) -> None:
    table.header.append(f"fracdecomp {args.command}")
    for key in keys:
        value = getattr(args, key.replace("-", "_"))
        if isinstance(value, float):
            value = f"{value:g}"
        elif isinstance(value, list):
            value = " ".join(str(v) for v in value)
        table.add_header(key, value)


def cmd_tables(args: argparse.Namespace) -> None:
    out = Path(args.out)
    offsets = np.arange(args.cols)

    t1 = CsvTable()
    _header(t1, args, ["alpha"])
    t1.add_column("i", np.arange(args.rows))
    rows_by_i = {}
    for m in offsets:
        col = [tail_A(args.alpha, ExpansionParams(i + 1, i + 1 + m), i)
               for i in range(args.rows)]
        t1.add_column(f"N-n={m}", col)
    for i in range(args.rows):
        rows_by_i[f"i={i}"] = [tail_A(args.alpha, ExpansionParams(i + 1, i + 1 + m), i)
                               for m in offsets]
    t1.write(out / "table1.csv")

    t2 = CsvTable()
    _header(t2, args, ["alpha"])
    t2.add_column("N-n", offsets)
    tb = [tail_B(args.alpha, ExpansionParams(1, 1 + m)) for m in offsets]
    t2.add_column("tail_B", tb)
    t2.write(out / "table2.csv")

    if args.plot and args.alpha != int(args.alpha):
        rows_by_i["B"] = tb
        plotting.save_tail_table(out / "tables.png", offsets, rows_by_i,
                                 f"coefficient tails, alpha={args.alpha:g}")


def _compare_tables(args: argparse.Namespace) -> tuple[CsvTable, dict[str, np.ndarray], np.ndarray]:
    x = parse_function(args.function)
    interval = Interval(args.a, args.b)
    tgrid = interval.grid(args.grid)

    table = CsvTable()
    _header(table, args, ["function", "alpha", "n", "N", "a", "b", "grid"])
    table.add_column("t", tgrid)

    base = decomposition_grid(x, args.alpha, ExpansionParams(args.n[0], max(args.N)),
                              interval, points=args.grid)
    exact = base.exact
    table.add_column("exact", exact)

    curves: dict[str, np.ndarray] = {"exact": exact}
    results: list[GridResult] = []
    for n in args.n:
        for N in args.N:
            if N < n:
                continue
            g = decomposition_grid(x, args.alpha, ExpansionParams(n, N), interval,
                                   points=args.grid, exact=exact)
            name = f"decomp_n{n}_N{N}"
            table.add_column(name, g.approx)
            curves[name] = g.approx
            g.label = name
            results.append(g)
    for N in args.N:
        g = analytic_series_grid(x, args.alpha, N, interval, points=args.grid,
                                 exact=exact)
        name = f"series_N{N}"
        table.add_column(name, g.approx)
        curves[name] = g.approx
        g.label = name
        results.append(g)
    for g in results:
        table.add_footer(f"E[{g.label}]", l2_error(g))
    return table, curves, tgrid


def cmd_compare(args: argparse.Namespace) -> None:
    table, curves, tgrid = _compare_tables(args)
    out = Path(args.out)
    table.write(out / "compare.csv")
    if args.plot:
        plotting.save_curves(out / "compare.png", tgrid, curves,
                             f"I^{args.alpha:g} of {args.function}", "I^alpha x")


def cmd_ai_ablation(args: argparse.Namespace) -> None:
    x = parse_function(args.function)
    interval = Interval(args.a, args.b)
    tgrid = interval.grid(args.grid)
    n = args.n[0]

    table = CsvTable()
    _header(table, args, ["function", "alpha", "n", "N", "a", "b", "grid"])
    table.add_column("t", tgrid)
    exact = None
    curves: dict[str, np.ndarray] = {}
    worse: list[str] = []
    for N in args.N:
        params = ExpansionParams(n, N)
        coeffs = coefficient_set(args.alpha, params)
        with_a = decomposition_grid(x, args.alpha, params, interval,
                                    points=args.grid, coeffs=coeffs, exact=exact)
        exact = with_a.exact
        no_a = decomposition_grid(x, args.alpha, params, interval,
                                  points=args.grid, coeffs=coeffs.without_A(),
                                  exact=exact)
        if "exact" not in curves:
            table.add_column("exact", exact)
            curves["exact"] = exact
        table.add_column(f"withA_N{N}", with_a.approx)
        table.add_column(f"noA_N{N}", no_a.approx)
        curves[f"withA_N{N}"] = with_a.approx
        curves[f"noA_N{N}"] = no_a.approx
        ea, e0 = l2_error(with_a), l2_error(no_a)
        table.add_footer(f"E[withA_N{N}]", ea)
        table.add_footer(f"E[noA_N{N}]", e0)
        if not ea < e0:
            worse.append(f"N={N} (E_withA={format_value(ea)} >= E_noA={format_value(e0)})")

    out = Path(args.out)
    table.write(out / "ai_ablation.csv")
    if args.plot:
        plotting.save_curves(out / "ai_ablation.png", tgrid, curves,
                             f"A_i retention, {args.function}, n={n}", "I^alpha x")
    if worse:
        raise RuntimeError(
            "computed-A_i approximation not better than A_i=0 for "
            + "; ".join(worse)
        )


def cmd_integral_eq(args: argparse.Namespace) -> None:
    table = CsvTable()
    _header(table, args, ["alpha", "N", "grid", "steps"])

    series_problem = IntegralEquationProblem.power_benchmark(
        alpha=args.alpha, method="analytic_series", N=1)
    series = solve_integral_equation(series_problem, steps=args.steps,
                                     grid_points=args.grid)
    tgrid = series.grid.t
    table.add_column("t", tgrid)
    table.add_column("exact", series.grid.exact)
    table.add_column("series_N1", series.grid.approx)
    curves = {"exact": series.grid.exact, "series_N1": series.grid.approx}
    table.add_footer("c[series_N1]", series.fitted_coefficient)

    for N in args.N:
        problem = IntegralEquationProblem.power_benchmark(
            alpha=args.alpha, method="decomposition", N=N)
        res = solve_integral_equation(problem, steps=args.steps,
                                      grid_points=args.grid, start=args.start)
        name = f"decomp_N{N}"
        table.add_column(name, res.grid.approx)
        curves[name] = res.grid.approx
        table.add_footer(f"c[{name}]", res.fitted_coefficient)

    out = Path(args.out)
    table.write(out / "integral_equation.csv")
    if args.plot:
        plotting.save_curves(out / "integral_equation.png", tgrid, curves,
                             f"integral equation, alpha={args.alpha:g}", "x(t)")


def cmd_variational(args: argparse.Namespace) -> None:
    table = CsvTable()
    _header(table, args, ["alpha", "N", "grid", "steps"])
    curves: dict[str, np.ndarray] = {}
    tgrid = None
    for N in args.N:
        problem = VariationalProblem.tracking_benchmark(alpha=args.alpha, N=N)
        res = solve_variational(problem, steps=args.steps, grid_points=args.grid,
                                start=args.start)
        if tgrid is None:
            tgrid = res.grid.t
            table.add_column("t", tgrid)
            table.add_column("exact", res.grid.exact)
            curves["exact"] = res.grid.exact
        name = f"bvp_N{N}"
        table.add_column(name, res.grid.approx)
        curves[name] = res.grid.approx
        table.add_footer(f"Jtilde[{name}]", res.approx_cost)
        table.add_footer(f"J[{name}]", res.true_cost)

    out = Path(args.out)
    table.write(out / "variational.csv")
    if args.plot:
        plotting.save_curves(out / "variational.png", tgrid, curves,
                             f"variational problem, alpha={args.alpha:g}", "x(t)")


def cmd_oracle(args: argparse.Namespace) -> None:
    x = parse_function(args.function)
    interval = Interval(args.a, args.b)
    tgrid = interval.grid(args.grid)
    vals = np.array([
        rl_integral_oracle(x, args.alpha, args.a, float(t)) if t > args.a else 0.0
        for t in tgrid
    ])
    table = CsvTable()
    _header(table, args, ["function", "alpha", "a", "b", "grid"])
    table.add_column("t", tgrid)
    table.add_column("oracle", vals)
    out = Path(args.out)
    table.write(out / "oracle.csv")
    if args.plot:
        plotting.save_curves(out / "oracle.png", tgrid, {"oracle": vals},
                             f"I^{args.alpha:g} of {args.function} (quadrature)",
                             "I^alpha x", exact_key=None)


def _add_common(sub: argparse.ArgumentParser, *, function: bool = False,
                orders: bool = False, span: bool = False,
                steps: int | None = None, start: bool = False) -> None:
    sub.add_argument("--alpha", type=float, default=0.5,
                     help="fractional order (default 0.5)")
    if function:
        sub.add_argument("--function", default="t3",
                         help="t3|t10|exp|sin|zero|power:<g>|file:<path> (default t3)")
    if orders:
        sub.add_argument("--n", type=int, action="append",
                         help="smoothness order(s); repeatable")
        sub.add_argument("--N", type=int, action="append",
                         help="truncation order(s); repeatable")
    if span:
        sub.add_argument("--a", type=float, default=0.0, help="left endpoint")
        sub.add_argument("--b", type=float, default=1.0, help="right endpoint")
    sub.add_argument("--grid", type=int, default=101,
                     help="output grid points (default 101)")
    if steps is not None:
        sub.add_argument("--steps", type=int, default=steps,
                         help=f"solver steps (default {steps})")
    if start:
        sub.add_argument("--start", type=float, default=None,
                         help="start offset for the singular left endpoint")
    sub.add_argument("--out", default=".", help="output directory (default .)")
    sub.add_argument("--no-plot", dest="plot", action="store_false",
                     help="skip the companion PNG figure")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracdecomp",
        description="Fractional-integral decomposition toolkit: coefficient "
                    "tables, approximation comparisons, and the integral-equation "
                    "and variational application pipelines, as CSV + figures.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tables", help="coefficient tail tables (table1/table2)")
    p.add_argument("--rows", type=int, default=6, help="rows i = 0..rows-1")
    p.add_argument("--cols", type=int, default=5, help="columns N-n = 0..cols-1")
    _add_common(p)
    p.set_defaults(handler=cmd_tables)

    p = sub.add_parser("compare",
                       help="decomposition vs analytic series vs exact on a grid")
    _add_common(p, function=True, orders=True, span=True)
    p.set_defaults(handler=cmd_compare, default_n=[3], default_N=[3, 4, 5])

    p = sub.add_parser("ai-ablation",
                       help="approximation with computed A_i vs with A_i = 0")
    _add_common(p, function=True, orders=True, span=True)
    p.set_defaults(handler=cmd_ai_ablation, default_n=[3], default_N=[3, 4, 5])

    p = sub.add_parser("integral-eq",
                       help="fractional integral equation benchmark pipeline")
    _add_common(p, steps=8000, start=True)
    p.add_argument("--N", type=int, action="append",
                   help="decomposition truncation order(s); repeatable")
    p.set_defaults(handler=cmd_integral_eq, default_N=[2, 3])

    p = sub.add_parser("variational",
                       help="fractional variational problem benchmark pipeline")
    _add_common(p, steps=2000, start=True)
    p.add_argument("--N", type=int, action="append",
                   help="truncation order(s) >= 2; repeatable")
    p.set_defaults(handler=cmd_variational, default_N=[2])

    p = sub.add_parser("oracle", help="direct quadrature of a built-in function")
    _add_common(p, function=True, span=True)
    p.set_defaults(handler=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "default_N") and getattr(args, "N", None) is None:
        args.N = args.default_N
    if hasattr(args, "default_n") and getattr(args, "n", None) is None:
        args.n = args.default_n
    try:
        args.handler(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
