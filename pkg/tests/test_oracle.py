"""Grid DP minimum-cost oracle validated against exhaustive search."""

import math

import numpy as np
import pytest

from barriercover.coverage import Deployment, is_covered, sample_deployment
from barriercover.expectation import expected_anchor_cost_integer
from barriercover.oracle import (GridSpec, brute_force_small,
                                 min_cost_coverage_dp)
from barriercover.coverage import anchor_strategy


class TestGridSpec:
    def test_points(self):
        g = GridSpec(5)
        assert list(g.points()) == [0.0, 0.25, 0.5, 0.75, 1.0]
        assert g.step == 0.25

    def test_too_coarse_rejected(self):
        with pytest.raises(ValueError):
            GridSpec(1)


class TestForcedInstances:
    def test_single_sensor_forced_center(self):
        dep = Deployment.from_positions([0.9])
        res = min_cost_coverage_dp(dep, 0.5, 2.0, GridSpec(101))
        assert res.optimal_positions == (0.5,)
        assert res.cost == pytest.approx(0.16, abs=1e-12)
        assert res.covered

    def test_two_sensors_forced(self):
        dep = Deployment.from_positions([0.1, 0.2])
        res = min_cost_coverage_dp(dep, 0.25, 1.0, GridSpec(101))
        assert res.optimal_positions == (0.25, 0.75)
        assert res.cost == pytest.approx(0.7, abs=1e-12)

    def test_brute_force_same_forced_instances(self):
        assert brute_force_small(Deployment.from_positions([0.9]), 0.5, 2.0,
                                 GridSpec(101)) == pytest.approx(0.16, abs=1e-12)
        assert brute_force_small(Deployment.from_positions([0.1, 0.2]), 0.25, 1.0,
                                 GridSpec(101)) == pytest.approx(0.7, abs=1e-12)


class TestDpAgainstBruteForce:
    def test_agreement_random_instances(self):
        rng = np.random.default_rng(2718)
        grid = GridSpec(48)
        for trial in range(30):
            n = int(rng.integers(1, 5))
            f = float(rng.uniform(1.05, 1.6))
            r = f / (2 * n)
            if 2 * r < grid.step:
                continue
            dep = Deployment.from_positions(np.sort(rng.random(n)))
            dp = min_cost_coverage_dp(dep, r, 2.0, grid)
            bf = brute_force_small(dep, r, 2.0, grid)
            assert dp.cost == bf

    def test_order_preserving_assignment_is_optimal(self):
        rng = np.random.default_rng(97)
        grid = GridSpec(40)
        for trial in range(20):
            n = int(rng.integers(2, 5))
            r = float(rng.uniform(1.1, 1.5)) / (2 * n)
            dep = Deployment.from_positions(np.sort(rng.random(n)))
            _, _, perm = brute_force_small(dep, r, 2.0, grid,
                                           return_assignment=True)
            assert perm == tuple(range(n))

    def test_a1_ties_within_tolerance(self):
        rng = np.random.default_rng(3)
        grid = GridSpec(64)
        for trial in range(10):
            n = int(rng.integers(1, 5))
            r = float(rng.uniform(1.1, 1.5)) / (2 * n)
            dep = Deployment.from_positions(np.sort(rng.random(n)))
            dp = min_cost_coverage_dp(dep, r, 1.0, grid)
            bf = brute_force_small(dep, r, 1.0, grid)
            assert dp.cost == pytest.approx(bf, abs=1e-12)


class TestDpProperties:
    def test_below_anchor_cost_plus_slack(self):
        rng = np.random.default_rng(12)
        grid = GridSpec(2048)
        for trial in range(25):
            n = int(rng.integers(2, 51))
            r = float(rng.uniform(1.1, 3.0)) / (2 * n)
            dep = Deployment.from_positions(np.sort(rng.random(n)))
            res = min_cost_coverage_dp(dep, r, 2.0, grid)
            anchor = anchor_strategy(dep, 2.0)
            assert res.cost <= anchor.total_cost + res.error_bound
            assert is_covered(res.optimal_positions, res.effective_r)
            assert res.covered

    def test_positions_satisfy_constraints(self):
        dep = sample_deployment(12, 6)
        r = 1.4 / 24
        res = min_cost_coverage_dp(dep, r, 2.0, GridSpec(512))
        ys = res.optimal_positions
        assert ys[0] <= r
        assert ys[-1] >= 1 - r
        assert all(b - a <= 2 * r for a, b in zip(ys, ys[1:]))

    def test_refining_grid_never_costs_more(self):
        dep = sample_deployment(8, 41)
        r = 1.3 / 16
        coarse = min_cost_coverage_dp(dep, r, 2.0, GridSpec(256))
        fine = min_cost_coverage_dp(dep, r, 2.0, GridSpec(511))  # superset grid
        assert fine.cost <= coarse.cost + 1e-12
        assert coarse.cost - fine.cost <= coarse.error_bound

    def test_radius_inflation_reported_when_corridor_quantizes_away(self):
        # tight corridor: slack below one grid step per gap
        n = 80
        r = 1 / (2 * n) + n ** -2.0 / 2
        dep = sample_deployment(n, 10)
        res = min_cost_coverage_dp(dep, r, 2.0, GridSpec(2048))
        assert res.effective_r > r
        assert res.effective_r - r < GridSpec(2048).step
        assert is_covered(res.optimal_positions, res.effective_r)

    def test_infeasible_rejected(self):
        dep = Deployment.from_positions([0.2, 0.6])
        with pytest.raises(ValueError, match="infeasible"):
            min_cost_coverage_dp(dep, 0.2, 2.0)

    def test_too_coarse_grid_rejected(self):
        dep = sample_deployment(100, 1)
        with pytest.raises(ValueError, match="coarse"):
            min_cost_coverage_dp(dep, 1 / 150, 2.0, GridSpec(64))

    def test_exponent_below_one_rejected(self):
        dep = sample_deployment(4, 1)
        with pytest.raises(ValueError):
            min_cost_coverage_dp(dep, 0.3, 0.5)


class TestBruteForceGuards:
    def test_size_guards(self):
        dep = sample_deployment(5, 1)
        with pytest.raises(ValueError, match="n <= 4"):
            brute_force_small(dep, 0.2, 2.0)
        with pytest.raises(ValueError, match="resolution"):
            brute_force_small(sample_deployment(2, 1), 0.3, 2.0, GridSpec(256))

    def test_infeasible_rejected(self):
        with pytest.raises(ValueError, match="infeasible"):
            brute_force_small(Deployment.from_positions([0.5]), 0.3, 2.0)
