"""Minimum-cost covering displacement on a uniform grid.

The optimizer restricts final positions to grid points k/(G-1) and finds
the cheapest sorted placement satisfying the coverage constraints
y_1 <= r, y_n >= 1-r, consecutive gaps <= 2r, with sensors assigned to
placements order-preservingly (optimal for convex costs, a >= 1).

Constraint quantization always rounds inward, so reported placements
genuinely cover.  When a near-critical radius leaves no inward-rounded
grid corridor at all, the radius is inflated by the smallest multiple of
1/64 grid step that restores feasibility; the effective radius is
reported alongside the cost.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import minimum_filter1d

from .coverage import Deployment, is_covered

__all__ = [
    "GridSpec",
    "OracleResult",
    "min_cost_coverage_dp",
    "brute_force_small",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of `resolution` points k/(resolution-1) on [0, 1]."""

    resolution: int = 2048

    def __post_init__(self) -> None:
        if self.resolution < 2:
            raise ValueError("grid resolution must be at least 2")

    @property
    def step(self) -> float:
        return 1.0 / (self.resolution - 1)

    def points(self) -> np.ndarray:
        return np.arange(self.resolution) / (self.resolution - 1)


@dataclass(frozen=True)
class OracleResult:
    optimal_positions: tuple[float, ...]
    cost: float
    covered: bool
    error_bound: float
    effective_r: float


def _corridor(n: int, r: float, G: int) -> tuple[int, int, int]:
    """Inward-rounded index bounds: (max first cell, min last cell, gap window)."""
    first_max = math.floor(r * (G - 1))
    last_min = math.ceil((1.0 - r) * (G - 1))
    delta = math.floor(2.0 * r * (G - 1))
    return first_max, last_min, delta


def _feasible(n: int, r: float, G: int) -> bool:
    first_max, last_min, delta = _corridor(n, r, G)
    return delta >= 1 and first_max >= 0 and first_max + (n - 1) * delta >= last_min


def _effective_radius(n: int, r: float, grid: GridSpec) -> float:
    if _feasible(n, r, grid.resolution):
        return r
    bump = grid.step / 64.0
    for j in range(1, 64 * grid.resolution):
        if _feasible(n, r + j * bump, grid.resolution):
            return r + j * bump
    raise ValueError("no feasible grid corridor even after radius inflation")


def _cost_matrix(xs: np.ndarray, pts: np.ndarray, a: float) -> np.ndarray:
    return np.abs(xs[:, None] - pts[None, :]) ** a


def min_cost_coverage_dp(dep: Deployment, r: float, a: float,
                         grid: GridSpec = GridSpec()) -> OracleResult:
    """Cheapest covering placement on the grid, by dynamic programming.

    States are (sensor index, grid cell); each transition takes the
    minimum over the trailing gap window.  The optimality gap versus the
    continuous optimum is at most n * a * step for a >= 1 (unit-interval
    gradient bound), reported as ``error_bound``.
    """
    n = dep.n
    if a < 1:
        raise ValueError("oracle requires cost exponent a >= 1")
    if 2.0 * n * r < 1.0:
        raise ValueError(f"coverage infeasible: n*2r = {2 * n * r:.6g} < 1")
    if 2.0 * r < grid.step:
        raise ValueError("grid too coarse: need 2r >= one grid step")

    r_eff = _effective_radius(n, r, grid)
    G = grid.resolution
    first_max, last_min, delta = _corridor(n, r_eff, G)
    pts = grid.points()
    C = _cost_matrix(np.asarray(dep.positions), pts, a)

    window = delta + 1
    origin = window - 1 - window // 2  # trailing window [g-delta, g]
    rows = np.empty((n, G))
    rows[0] = np.where(np.arange(G) <= first_max, C[0], np.inf)
    for i in range(1, n):
        reach = minimum_filter1d(rows[i - 1], size=window, mode="constant",
                                 cval=np.inf, origin=origin)
        rows[i] = C[i] + reach

    final = rows[n - 1].copy()
    final[:last_min] = np.inf
    g = int(np.argmin(final))
    if not np.isfinite(final[g]):
        raise ValueError("no feasible grid corridor")
    cost = float(final[g])

    cells = [g]
    for i in range(n - 2, -1, -1):
        lo = max(0, cells[-1] - delta)
        window_vals = rows[i][lo:cells[-1] + 1]
        cells.append(lo + int(np.argmin(window_vals)))
    cells.reverse()
    positions = tuple(float(pts[c]) for c in cells)

    return OracleResult(
        optimal_positions=positions,
        cost=cost,
        covered=is_covered(positions, r_eff),
        error_bound=n * max(a, 1.0) * grid.step,
        effective_r=r_eff,
    )


def brute_force_small(dep: Deployment, r: float, a: float,
                      grid: GridSpec = GridSpec(64),
                      return_assignment: bool = False):
    """Exhaustive minimum over sorted grid placements and all assignments.

    Size-guarded oracle for validating the DP: n <= 4 sensors, grid
    resolution <= 200.  Enumerates every sorted feasible grid tuple and
    evaluates every one of the n! sensor-to-placement assignments.
    """
    n = dep.n
    G = grid.resolution
    if n > 4:
        raise ValueError("brute force limited to n <= 4")
    if G > 200:
        raise ValueError("brute force limited to resolution <= 200")
    if 2.0 * n * r < 1.0:
        raise ValueError(f"coverage infeasible: n*2r = {2 * n * r:.6g} < 1")

    first_max, last_min, delta = _corridor(n, r, G)
    pts = grid.points()
    M = _cost_matrix(np.asarray(dep.positions), pts, a).tolist()
    perms = list(itertools.permutations(range(n)))

    best_cost = math.inf
    best_cells: tuple[int, ...] | None = None
    best_perm: tuple[int, ...] | None = None

    def extend(cells: list[int]) -> None:
        nonlocal best_cost, best_cells, best_perm
        k = len(cells)
        if k == n:
            if cells[-1] < last_min:
                return
            for perm in perms:
                total = 0.0
                for i, c in enumerate(cells):
                    total += M[perm[i]][c]
                if total < best_cost:
                    best_cost = total
                    best_cells = tuple(cells)
                    best_perm = perm
            return
        if k == 0:
            lo, hi = 0, first_max
        else:
            lo, hi = cells[-1], min(cells[-1] + delta, G - 1)
        # prune: remaining hops must be able to reach the right edge
        lo = max(lo, last_min - (n - 1 - k) * delta)
        for c in range(lo, hi + 1):
            cells.append(c)
            extend(cells)
            cells.pop()

    extend([])
    if best_cells is None:
        raise ValueError("no feasible grid corridor")
    if return_assignment:
        positions = tuple(float(pts[c]) for c in best_cells)
        return best_cost, positions, best_perm
    return best_cost
