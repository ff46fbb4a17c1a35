"""Random deployments, the coverage predicate, and displacement strategies.

A deployment is n sorted uniform positions on [0, 1].  A placement covers
the barrier at sensing radius r when the first sensor reaches the left
end, the last reaches the right end, and consecutive gaps never exceed 2r.

Strategies:

* anchor: move the i-th smallest sensor to t_i = (2i-1)/(2n), the unique
  exact cover at the critical radius 1/(2n);
* stretched anchor: anchors spread by an extra margin so consecutive
  spacing equals 2r for r slightly above critical, capped at 1;
* partition: split [0, 1] into K subintervals, locally re-anchor a small
  random subset per subinterval when every subinterval is well occupied,
  falling back to the global anchors otherwise.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "Deployment",
    "CoverageParams",
    "StrategyOutcome",
    "PartitionParams",
    "sample_deployment",
    "is_covered",
    "anchor_targets",
    "anchor_strategy",
    "stretched_anchor_strategy",
    "partition_params",
    "partition_strategy",
    "displacement_cost",
    "derive_pick_seed",
    "deployment_rows",
    "outcome_rows",
]

# Absolute slack absorbing IEEE rounding of ideal placements; meaningful
# radius perturbations in experiments are >= 1e-9.
COVER_SLACK = 1e-12


@dataclass(frozen=True)
class Deployment:
    """Sorted sensor positions on [0, 1] plus the seed that generated them."""

    n: int
    positions: tuple[float, ...]
    seed: int

    def __post_init__(self) -> None:
        if self.n != len(self.positions):
            raise ValueError("n does not match number of positions")
        if self.n < 1:
            raise ValueError("deployment needs at least one sensor")
        xs = self.positions
        if any(b < a for a, b in zip(xs, xs[1:])):
            raise ValueError("positions must be sorted ascending")
        if xs[0] < 0.0 or xs[-1] > 1.0:
            raise ValueError("positions must lie in [0, 1]")

    @classmethod
    def from_positions(cls, positions, seed: int = 0) -> "Deployment":
        xs = tuple(float(x) for x in positions)
        return cls(n=len(xs), positions=xs, seed=seed)


@dataclass(frozen=True)
class CoverageParams:
    """Sensing radius and cost exponent."""

    r: float
    a: float

    def __post_init__(self) -> None:
        if self.r <= 0:
            raise ValueError("radius must be positive")
        if self.a <= 0:
            raise ValueError("cost exponent must be positive")


@dataclass(frozen=True)
class StrategyOutcome:
    """Final placement, per-sensor displacements, total cost, coverage flag."""

    final_positions: tuple[float, ...]
    displacements: tuple[float, ...]
    total_cost: float
    covered: bool
    case: int | None = None


@dataclass(frozen=True)
class PartitionParams:
    """Derived constants of the partition strategy for a given (n, a).

    p and q control the subinterval count K = floor(n / (p ln n)) and the
    per-subinterval pick count m = floor(q ln n); x0 is the larger root of
    x = 3 p ln x, the smallest admissible n.  The occupancy threshold
    n / (3K) is kept exact; m never exceeds it.
    """

    n: int
    a: float
    p: float
    q: float
    x0: float
    min_n: int
    subintervals: int
    picks_per_subinterval: int
    occupancy_threshold: Fraction

    @property
    def subinterval_length(self) -> float:
        return 1.0 / self.subintervals


def sample_deployment(n: int, seed: int) -> Deployment:
    """n sorted uniform draws from a deterministic seeded generator."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    xs = np.sort(rng.random(n))
    return Deployment(n=n, positions=tuple(float(x) for x in xs), seed=seed)


def is_covered(positions, r: float, slack: float = COVER_SLACK) -> bool:
    """True iff the sorted positions cover [0, 1] at radius r."""
    xs = [float(x) for x in positions]
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise ValueError("positions must be sorted ascending")
    if not xs:
        return False
    if xs[0] > r + slack or 1.0 - xs[-1] > r + slack:
        return False
    return all(b - a <= 2 * r + 2 * slack for a, b in zip(xs, xs[1:]))


def anchor_targets(n: int) -> np.ndarray:
    """The n evenly spaced anchors (2i-1)/(2n)."""
    return (2.0 * np.arange(1, n + 1) - 1.0) / (2.0 * n)


def _outcome(initial: np.ndarray, final: np.ndarray, a: float, r: float,
             case: int | None = None) -> StrategyOutcome:
    disp = np.abs(initial - final)
    total = float(np.sum(disp ** a))
    return StrategyOutcome(
        final_positions=tuple(float(y) for y in final),
        displacements=tuple(float(d) for d in disp),
        total_cost=total,
        covered=is_covered(sorted(final), r),
        case=case,
    )


def anchor_strategy(dep: Deployment, a: float) -> StrategyOutcome:
    """Move the i-th smallest sensor to t_i; covers at r = 1/(2n)."""
    xs = np.asarray(dep.positions)
    targets = anchor_targets(dep.n)
    return _outcome(xs, targets, a, 1.0 / (2 * dep.n))


def stretched_anchor_strategy(dep: Deployment, a: float,
                              fn_value: float) -> StrategyOutcome:
    """Anchors spread to spacing 1/n + fn_value, capped at 1.

    With r = 1/(2n) + fn_value/2, the uncapped prefix has consecutive
    gaps exactly 2r, so the placement always covers.
    """
    if fn_value <= 0:
        raise ValueError("fn_value must be positive")
    n = dep.n
    xs = np.asarray(dep.positions)
    i = np.arange(1, n + 1)
    targets = np.minimum((i - 1) * (1.0 / n + fn_value)
                         + 1.0 / (2 * n) + fn_value / 2, 1.0)
    return _outcome(xs, targets, a, 1.0 / (2 * n) + fn_value / 2)


def _root_of_occupancy_equation(p: float) -> float:
    """Larger root of x = 3 p ln x, bracketed upward from x = 3p."""
    lo, hi = 3.0 * p, 1e8
    if lo - 3.0 * p * math.log(lo) >= 0:
        raise ValueError("lower bracket does not straddle the root")
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if mid - 3.0 * p * math.log(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def partition_params(n: int, a: float) -> PartitionParams:
    """Derive the partition strategy constants; rejects n below minimum."""
    if a <= 0:
        raise ValueError("cost exponent must be positive")
    p = 9.0 * (2.0 + a) / 4.0
    q = 3.0 * (2.0 + a) / 4.0
    x0 = _root_of_occupancy_equation(p)
    min_n = math.ceil(x0)
    if n < min_n:
        raise ValueError(f"n={n} below the minimum {min_n} for exponent {a}")
    subintervals = math.floor(n / (p * math.log(n)))
    picks = math.floor(q * math.log(n))
    threshold = Fraction(n, 3 * subintervals)
    if subintervals < 1:
        raise AssertionError("subinterval count must be at least 1")
    if picks > threshold:
        raise AssertionError("picks exceed the occupancy threshold")
    return PartitionParams(
        n=n, a=a, p=p, q=q, x0=x0, min_n=min_n,
        subintervals=subintervals, picks_per_subinterval=picks,
        occupancy_threshold=threshold,
    )


def partition_strategy(dep: Deployment, params: PartitionParams, r: float,
                       pick_seed: int) -> StrategyOutcome:
    """Two-case partition strategy at radius r = f/(2n), f > 6.

    Splits [0, 1] into K half-open subintervals (the last one closed).
    Case 1: some subinterval holds strictly fewer than n/(3K) sensors;
    every sensor moves to its global anchor.  Case 2: in each subinterval
    m sensors are chosen uniformly without replacement (seeded) and moved
    order-preservingly onto local evenly spaced anchors; unchosen sensors
    stay put.
    """
    n = dep.n
    if n != params.n:
        raise ValueError("params were derived for a different n")
    f = 2.0 * n * r
    if not f > 6.0:
        raise ValueError(f"radius multiplier f = {f:.6g} must exceed 6")
    K = params.subintervals
    m = params.picks_per_subinterval
    length = params.subinterval_length
    # Case 2 feasibility: the m local anchors at spacing L/m cover the
    # subinterval whenever 2mr >= L.
    if not 2.0 * m * r >= length:
        raise AssertionError("local anchors cannot cover a subinterval")

    xs = np.asarray(dep.positions)
    idx = np.minimum((xs * K).astype(int), K - 1)
    counts = np.bincount(idx, minlength=K)
    if any(int(c) < params.occupancy_threshold for c in counts):
        out = _outcome(xs, anchor_targets(n), params.a, r, case=1)
        return out

    rng = np.random.default_rng(pick_seed)
    final = xs.copy()
    start = 0
    for k in range(K):
        c = int(counts[k])
        chosen = np.sort(rng.choice(c, size=m, replace=False))
        local = k * length + (2.0 * np.arange(1, m + 1) - 1.0) * length / (2.0 * m)
        final[start + chosen] = local
        start += c
    return _outcome(xs, final, params.a, r, case=2)


def displacement_cost(initial, final, a: float) -> float:
    """Order-preserving pairing cost sum |x_i - y_i|^a of two sorted lists."""
    xs = [float(x) for x in initial]
    ys = [float(y) for y in final]
    if len(xs) != len(ys):
        raise ValueError("position lists differ in length")
    for seq in (xs, ys):
        if any(b < a_ for a_, b in zip(seq, seq[1:])):
            raise ValueError("positions must be sorted ascending")
    return math.fsum(abs(x - y) ** a for x, y in zip(xs, ys))


def derive_pick_seed(base_seed: int, trial: int, tag: str = "pick") -> int:
    """Stable 64-bit seed for the strategy's internal randomness."""
    digest = hashlib.sha256(f"{base_seed}:{trial}:{tag}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def deployment_rows(dep: Deployment) -> list[tuple[int, float]]:
    """CSV-ready (index, position) rows."""
    return [(i + 1, x) for i, x in enumerate(dep.positions)]


def outcome_rows(dep: Deployment,
                 outcome: StrategyOutcome) -> list[tuple[int, float, float, float]]:
    """CSV-ready (index, initial, final, displacement) rows."""
    return [(i + 1, x, y, d) for i, (x, y, d) in enumerate(
        zip(dep.positions, outcome.final_positions, outcome.displacements))]
