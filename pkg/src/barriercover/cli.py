"""Command line interface for the experiment harness.

Subcommands: identities, exact, convergence, threshold, alg1, claim1,
scaling, oracle.  Each writes a CSV report when --out is given and a
single-series figure when --svg is given.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .combinatorics import verify_identities
from .coverage import sample_deployment
from .expectation import (anchor_cost_per_sensor_exact,
                          expected_anchor_cost_numeric)
from .experiments import (ExperimentSpec, ResultTable, run_convergence,
                          run_occupancy_bound, run_partition,
                          run_scaling_check, run_threshold)
from .oracle import GridSpec, min_cost_coverage_dp
from .reporting import Series, emit_csv, emit_svg


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok)

def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok)


def _add_common(sub, *, n=False, n_list=False, trials=None, beta=False,
                f=None, grid=False, tol=False, x=False, m=False):
    sub.add_argument("--a", type=float, default=2.0, help="cost exponent")
    if n:
        sub.add_argument("--n", type=int, required=True, help="sensor count")
    if n_list:
        sub.add_argument("--n-list", type=_int_list, required=True,
                         help="comma separated sensor counts")
    if trials is not None:
        sub.add_argument("--trials", type=int, default=trials)
    sub.add_argument("--seed", type=int, default=2026, help="base seed")
    if beta:
        sub.add_argument("--beta-list", type=_float_list, default=(2.0,),
                         help="comma separated radius decay exponents")
    if f is not None:
        sub.add_argument("--f", type=float, default=f,
                         help="radius multiplier, r = f/(2n)")
    if grid:
        sub.add_argument("--grid", type=int, default=2048,
                         help="oracle grid resolution")
    if tol:
        sub.add_argument("--tol", type=float, default=1e-12,
                         help="quadrature tolerance")
    if x:
        sub.add_argument("--x", type=float, default=0.5,
                         help="scaled interval length")
    if m:
        sub.add_argument("--m", type=int, default=10,
                         help="sensors inside the scaled interval")
    sub.add_argument("--out", type=str, default=None, help="CSV output path")
    sub.add_argument("--svg", type=str, default=None, help="figure output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="barriercover",
        description="Displacement cost experiments for barrier coverage "
                    "by randomly placed sensors")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("identities", help="verify the exact identity suite")
    s.add_argument("--max-m", type=int, default=12)
    s.add_argument("--max-d", type=int, default=12)
    s.add_argument("--out", type=str, default=None)

    s = subs.add_parser("exact", help="expected anchor cost for one (n, a)")
    _add_common(s, n=True, tol=True)

    s = subs.add_parser("convergence",
                        help="normalized anchor cost against its limit")
    _add_common(s, n_list=True, trials=200, tol=True)

    s = subs.add_parser("threshold",
                        help="oracle minimum cost near the critical radius")
    _add_common(s, n_list=True, trials=100, beta=True, grid=True)

    s = subs.add_parser("alg1", help="randomized partition coverage strategy")
    _add_common(s, n_list=True, trials=500, f=7.0)

    s = subs.add_parser("claim1", help="exact occupancy tail bound check")
    _add_common(s, n=True)

    s = subs.add_parser("scaling", help="interval-length cost scaling check")
    _add_common(s, trials=2000, x=True, m=True, tol=True)

    s = subs.add_parser("oracle", help="minimum-cost placement for one deployment")
    _add_common(s, n=True, f=7.0, grid=True)

    return parser


def _finish(table: ResultTable, out: str | None, svg_spec=None) -> None:
    if out:
        emit_csv(table, out)
        print(f"wrote {out}")
    if svg_spec is not None:
        path, series, kwargs = svg_spec
        if path:
            emit_svg(series, path, **kwargs)
            print(f"wrote {path}")


def _column(table: ResultTable, name: str) -> tuple:
    pos = table.columns.index(name)
    return tuple(row[pos] for row in table.rows)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "identities":
        report = verify_identities(args.max_m, args.max_d)
        print(f"{len(report.checks)} checks, {len(report.failures)} failures")
        if args.out:
            table = ResultTable(("identity_id", "instance", "lhs", "rhs", "pass"),
                                report.csv_rows(),
                                {"max_m": str(args.max_m), "max_d": str(args.max_d)})
            emit_csv(table, args.out)
            print(f"wrote {args.out}")
        return 0 if report.all_passed else 1

    if args.command == "exact":
        n, a = args.n, args.a
        if float(a).is_integer():
            per = anchor_cost_per_sensor_exact(n, int(a))
            total = sum(per, start=Fraction(0))
            rows = [(i + 1, str(c), float(c)) for i, c in enumerate(per)]
            meta = {"n": str(n), "a": str(a), "method": "rational",
                    "total": str(total), "total_float": repr(float(total))}
        else:
            result = expected_anchor_cost_numeric(n, a, args.tol)
            rows = [(i + 1, "", c) for i, c in enumerate(result.per_sensor)]
            meta = {"n": str(n), "a": str(a), "method": "quadrature",
                    "total": "", "total_float": repr(result.total)}
        print(f"n={n} a={a} expected anchor cost = {meta['total_float']}")
        _finish(ResultTable(("i", "cost_exact", "cost_float"), rows, meta),
                args.out)
        return 0

    if args.command == "convergence":
        spec = ExperimentSpec(name="convergence", a=args.a, n_list=args.n_list,
                              trials=args.trials, base_seed=args.seed,
                              tol=args.tol, out_path=args.out)
        table = run_convergence(spec)
        for row in table.rows:
            print(f"n={row[0]:>6}  exact={row[1]:.9f}  mc={row[2]:.9f}  "
                  f"normalized={row[4]:.9f}")
        _finish(table, args.out,
                (args.svg, Series(_column(table, "n"), _column(table, "normalized"),
                                  "normalized cost"),
                 dict(title=f"normalized anchor cost, a={args.a}", xlabel="n",
                      ylabel="n^(a/2-1) S(n)", log_x=True)))
        return 0

    if args.command == "threshold":
        spec = ExperimentSpec(name="threshold", a=args.a, n_list=args.n_list,
                              trials=args.trials, base_seed=args.seed,
                              beta_list=args.beta_list, grid=args.grid,
                              out_path=args.out)
        table = run_threshold(spec)
        for row in table.rows:
            print(f"beta={row[0]:<4} n={row[1]:>4}  oracle={row[4]:.6f}  "
                  f"anchor={row[6]:.6f}  ratio={row[7]:.4f}")
        _finish(table, args.out,
                (args.svg, Series(_column(table, "n"), _column(table, "ratio"),
                                  f"beta={args.beta_list[0]}"),
                 dict(title=f"oracle/anchor cost ratio, a={args.a}", xlabel="n",
                      ylabel="ratio", log_x=True)))
        return 0

    if args.command == "alg1":
        spec = ExperimentSpec(name="alg1", a=args.a, n_list=args.n_list,
                              trials=args.trials, base_seed=args.seed,
                              f=args.f, out_path=args.out)
        table = run_partition(spec)
        for row in table.rows:
            print(f"n={row[0]:>6}  mean={row[1]:.6f}  predictor={row[3]:.6f}  "
                  f"ratio={row[4]:.3f}  case1_rate={row[5]:.2e}")
        if "fitted_slope" in table.meta:
            print(f"fitted slope = {float(table.meta['fitted_slope']):.4f}")
        _finish(table, args.out,
                (args.svg, Series(_column(table, "predictor"),
                                  _column(table, "mc_mean"), "mean cost"),
                 dict(title=f"partition strategy cost, a={args.a}, f={args.f}",
                      xlabel="(ln n / n)^(a/2) n^(1-a/2)", ylabel="mean cost",
                      log_x=True, log_y=True)))
        return 0

    if args.command == "claim1":
        report = run_occupancy_bound(args.n, args.a)
        table = report.table()
        for name, value in table.rows:
            print(f"{name:>28} = {value}")
        _finish(table, args.out)
        return 0 if report.all_passed else 1

    if args.command == "scaling":
        report = run_scaling_check(args.m, args.x, args.a, args.trials, args.seed)
        print(f"m={report.m} x={report.x} a={report.a}  mc={report.mc_mean:.8f}  "
              f"target={report.target:.8f}  z={report.z_score:+.3f}  "
              f"passed={report.passed}")
        _finish(report.table(), args.out)
        return 0 if report.passed else 1

    if args.command == "oracle":
        dep = sample_deployment(args.n, args.seed)
        r = args.f / (2.0 * args.n)
        result = min_cost_coverage_dp(dep, r, args.a, GridSpec(args.grid))
        print(f"n={args.n} r={r:.6g}  cost={result.cost:.8f}  "
              f"covered={result.covered}  effective_r={result.effective_r:.6g}")
        rows = [(i + 1, x, y, abs(x - y)) for i, (x, y) in
                enumerate(zip(dep.positions, result.optimal_positions))]
        meta = {"n": str(args.n), "a": str(args.a), "r": repr(r),
                "effective_r": repr(result.effective_r),
                "cost": repr(result.cost),
                "error_bound": repr(result.error_bound),
                "covered": str(result.covered).lower(),
                "seed": str(args.seed)}
        _finish(ResultTable(("i", "initial", "final", "displacement"), rows, meta),
                args.out)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
