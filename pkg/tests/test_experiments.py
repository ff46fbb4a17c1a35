"""Experiment runners, summary statistics, and CSV/figure emission."""

import math
from fractions import Fraction

import numpy as np
import pytest

from barriercover.experiments import (ExperimentSpec, ResultTable, mc_summary,
                                      exact_anchor_total, run_convergence,
                                      run_occupancy_bound, run_partition,
                                      run_scaling_check, run_threshold)
from barriercover.expectation import expected_anchor_cost_integer
from barriercover.reporting import (Series, emit_csv, emit_svg, parse_csv,
                                    render_cell)


class TestMcSummary:
    def test_constant_samples(self):
        s = mc_summary([1.0, 1.0, 1.0, 1.0])
        assert s.mean == 1.0 and s.stderr == 0.0
        assert s.ci95_low == s.ci95_high == 1.0

    def test_two_samples(self):
        s = mc_summary([0.0, 1.0])
        assert s.mean == 0.5
        assert s.stderr == pytest.approx(math.sqrt(0.5) / math.sqrt(2))

    def test_uniform_draws(self):
        rng = np.random.default_rng(17)
        s = mc_summary(rng.random(10_000))
        assert abs(s.mean - 0.5) <= 4 * s.stderr
        assert s.ci95_high - s.ci95_low == pytest.approx(2 * 1.96 * s.stderr)

    def test_rejects_short_input(self):
        with pytest.raises(ValueError):
            mc_summary([1.0])


class TestExperimentSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentSpec(name="x", a=2, n_list=())
        with pytest.raises(ValueError):
            ExperimentSpec(name="x", a=2, n_list=(4,), trials=0)

    def test_echo_covers_all_fields(self):
        spec = ExperimentSpec(name="x", a=2, n_list=(4,))
        echo = spec.echo()
        for key in ("name", "a", "n_list", "trials", "base_seed", "f",
                    "beta_list", "grid", "tol", "out_path"):
            assert key in echo


class TestExactAnchorTotal:
    def test_route_selection(self):
        assert exact_anchor_total(64, 2)[1] == "rational_even"
        assert exact_anchor_total(9, 3)[1] == "rational_piecewise"
        assert exact_anchor_total(2000, 3)[1] == "quadrature"
        assert exact_anchor_total(16, 2.5)[1] == "quadrature"

    def test_routes_agree(self):
        exact, _ = exact_anchor_total(20, 3)
        numeric = exact_anchor_total(20, 3.0 + 0.0)[0]
        assert exact == pytest.approx(numeric, abs=1e-10)


class TestRunConvergence:
    def test_single_sensor_exact_column(self):
        spec = ExperimentSpec(name="convergence", a=2, n_list=(1,), trials=5)
        table = run_convergence(spec)
        assert table.rows[0][1] == pytest.approx(1 / 12)
        assert table.rows[0][5] == pytest.approx(1 / 6)

    def test_normalized_monotone_toward_constant(self):
        spec = ExperimentSpec(name="convergence", a=2, n_list=(16, 64, 256),
                              trials=5)
        table = run_convergence(spec)
        normalized = [row[4] for row in table.rows]
        assert normalized == sorted(normalized)
        assert all(v < 1 / 6 for v in normalized)

    def test_deterministic_rows(self):
        spec = ExperimentSpec(name="convergence", a=1, n_list=(8, 16),
                              trials=50, base_seed=7)
        t1 = run_convergence(spec)
        t2 = run_convergence(spec)
        assert t1.rows == t2.rows


class TestRunThreshold:
    def test_degenerate_radius_matches_anchor(self):
        # aligned grid: anchors and the critical corridor live on grid points
        spec = ExperimentSpec(name="threshold", a=2, n_list=(10,), trials=10,
                              beta_list=(math.inf,), grid=2041, base_seed=3)
        table = run_threshold(spec)
        row = table.rows[0]
        ratio = row[7]
        assert row[2] == 0.05  # r = 1/(2n)
        assert ratio == pytest.approx(1.0, abs=0.15)

    def test_ratio_columns(self):
        spec = ExperimentSpec(name="threshold", a=2, n_list=(10, 20), trials=10,
                              beta_list=(2.0,), base_seed=5)
        table = run_threshold(spec)
        assert len(table.rows) == 2
        for row in table.rows:
            assert row[4] / row[6] == pytest.approx(row[7])
            assert 0 < row[7] <= 1 + 1e-9

    def test_large_n_rejected(self):
        spec = ExperimentSpec(name="threshold", a=2, n_list=(200,), trials=2,
                              beta_list=(2.0,))
        with pytest.raises(ValueError, match="n <= 100"):
            run_threshold(spec)

    def test_fractional_exponent_rejected(self):
        spec = ExperimentSpec(name="threshold", a=1.5, n_list=(10,), trials=2,
                              beta_list=(2.0,))
        with pytest.raises(ValueError):
            run_threshold(spec)


class TestRunPartition:
    def test_columns_and_coverage(self):
        spec = ExperimentSpec(name="alg1", a=2, n_list=(200, 400), trials=60,
                              base_seed=11, f=7.0)
        table = run_partition(spec)
        assert [row[0] for row in table.rows] == [200, 400]
        assert all(row[6] for row in table.rows)  # all covered
        assert "fitted_slope" in table.meta

    def test_slope_near_one_smoke(self):
        spec = ExperimentSpec(name="alg1", a=2, n_list=(200, 800, 3200),
                              trials=150, base_seed=5, f=7.0)
        table = run_partition(spec)
        slope = float(table.meta["fitted_slope"])
        assert 0.7 < slope < 1.3


class TestOccupancyBound:
    def test_n1000_a2_exact(self):
        rep = run_occupancy_bound(1000, 2)
        assert rep.subintervals == 16
        assert rep.cutoff == 21
        assert rep.claim_bound == Fraction(16, 1000 ** 2)
        assert rep.chernoff_value == Fraction(1, 1000 ** 2)
        assert isinstance(rep.exact_tail, Fraction)
        assert rep.tail_le_chernoff and rep.union_le_claim
        assert rep.threshold_inequality_holds
        assert rep.all_passed

    def test_tail_is_exact_binomial_sum(self):
        rep = run_occupancy_bound(1000, 2)
        p = Fraction(1, 16)
        direct = sum((math.comb(1000, j) * p ** j * (1 - p) ** (1000 - j)
                      for j in range(21)), start=Fraction(0))
        assert rep.exact_tail == direct

    def test_other_instances(self):
        for n, a in [(5000, 2), (1000, 4)]:
            rep = run_occupancy_bound(n, a)
            assert rep.all_passed


class TestRunScalingCheck:
    def test_full_interval_reduces_to_unit(self):
        rep = run_scaling_check(6, 1.0, 2, trials=4000, base_seed=10)
        assert rep.target == pytest.approx(float(expected_anchor_cost_integer(6, 2)))
        assert rep.passed

    def test_half_interval(self):
        rep = run_scaling_check(10, 0.5, 2, trials=4000, base_seed=20)
        assert rep.target == pytest.approx(
            0.25 * float(expected_anchor_cost_integer(10, 2)))
        assert rep.passed

    def test_shrinking_interval_cost_vanishes(self):
        rep = run_scaling_check(5, 1e-3, 2, trials=500, base_seed=30)
        assert rep.mc_mean < 1e-6

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            run_scaling_check(5, 0.0, 2)
        with pytest.raises(ValueError):
            run_scaling_check(5, 1.5, 2)


class TestReporting:
    def test_render_cell_roundtrip_floats(self):
        for v in (0.1, 1 / 3, 1e-17, 123456.789):
            assert float(render_cell(v)) == v

    def test_header_only_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        emit_csv(ResultTable(("x", "y"), [], {"note": "none"}), path)
        text = path.read_text()
        assert text == "# note = none\nx,y\n"

    def test_three_rows_stable_order(self, tmp_path):
        path = tmp_path / "t.csv"
        rows = [(1, 0.5), (2, 0.25), (3, 0.125)]
        emit_csv(ResultTable(("n", "v"), rows), path)
        lines = path.read_text().splitlines()
        assert lines[0] == "n,v"
        assert len(lines) == 4

    def test_round_trip(self, tmp_path):
        path = tmp_path / "r.csv"
        table = ResultTable(("n", "value", "flag"),
                            [(4, 1 / 3, "true"), (8, 2e-9, "false")],
                            {"a": "2.0", "seed": "7"})
        emit_csv(table, path)
        back = parse_csv(path)
        assert back.columns == table.columns
        assert back.meta == table.meta
        assert back.rows == table.rows

    def test_emitted_bytes_deterministic(self, tmp_path):
        spec = ExperimentSpec(name="convergence", a=2, n_list=(4,), trials=20,
                              base_seed=3)
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        emit_csv(run_convergence(spec), p1)
        emit_csv(run_convergence(spec), p2)
        assert p1.read_bytes() == p2.read_bytes()

    def test_emit_svg(self, tmp_path):
        path = tmp_path / "series.svg"
        emit_svg(Series((1, 2, 4), (0.1, 0.2, 0.4), "demo"), path,
                 title="t", xlabel="x", ylabel="y", log_x=True)
        content = path.read_text()
        assert content.lstrip().startswith("<?xml")
        assert "svg" in content[:400]
