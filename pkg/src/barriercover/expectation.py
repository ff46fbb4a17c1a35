"""Expected displacement-to-anchor costs for sorted uniform positions.

The i-th smallest of n uniform points has a Beta(i, n-i+1) distribution;
its target anchor is t_i = (2i-1)/(2n).  Three routes to the expected
cost sum S(n, a) = sum_i E|X_i - t_i|^a are provided:

* an even-exponent double sum in exact rationals,
* piecewise polynomial integration in exact rationals for any integer
  exponent (the two must agree exactly for even exponents),
* adaptive quadrature for arbitrary real exponents.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from scipy import integrate

from .combinatorics import rising_factorial

__all__ = [
    "OrderStatSpec",
    "AnchorCostResult",
    "QuadratureError",
    "anchor_position",
    "orderstat_moment",
    "expected_anchor_cost_even",
    "expected_anchor_cost_integer",
    "anchor_cost_per_sensor_exact",
    "expected_anchor_cost_numeric",
    "leading_constant",
    "holder_chain_check",
]


@dataclass(frozen=True)
class OrderStatSpec:
    """Index i of n sorted uniform positions, 1-based."""

    i: int
    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"index {self.i} outside 1..{self.n}")


@dataclass(frozen=True)
class AnchorCostResult:
    """Per-sensor and total expected costs from the numeric path."""

    n: int
    a: float
    per_sensor: tuple[float, ...]
    total: float


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to reach the requested tolerance."""

    def __init__(self, index: int, achieved: float, requested: float):
        super().__init__(
            f"sensor {index}: quadrature error estimate {achieved:.3e} "
            f"exceeds tolerance {requested:.3e}")
        self.index = index


def anchor_position(i: int, n: int) -> Fraction:
    """Anchor t_i = (2i-1)/(2n): evenly spaced, gap 1/n, half-gap margins."""
    OrderStatSpec(i, n)
    return Fraction(2 * i - 1, 2 * n)


def orderstat_moment(i: int, n: int, j: int) -> Fraction:
    """E[X_i^j] for the i-th of n sorted uniforms (rising-factorial ratio)."""
    OrderStatSpec(i, n)
    if j < 0:
        raise ValueError("moment order must be nonnegative")
    return Fraction(rising_factorial(i, j), rising_factorial(n + 1, j))


def expected_anchor_cost_even(n: int, a: int) -> Fraction:
    """Exact S(n, a) for even a via the alternating moment double sum.

    Expands (t_i - X_i)^a binomially; the inner sums reduce to the
    rising-factorial moments of the order statistics.
    """
    if a <= 0 or a % 2 != 0:
        raise ValueError("exponent must be a positive even integer")
    if n < 1:
        raise ValueError("n must be at least 1")
    total = Fraction(0)
    for j in range(a + 1):
        coeff = math.comb(a, j) * (-1) ** j
        inner = Fraction(0)
        for i in range(1, n + 1):
            inner += (Fraction(2 * i - 1, 2) ** (a - j)
                      * Fraction(rising_factorial(i, j), rising_factorial(n + 1, j)))
        total += coeff * inner / Fraction(n) ** (a - j)
    return total


@lru_cache(maxsize=256)
def anchor_cost_per_sensor_exact(n: int, a: int) -> tuple[Fraction, ...]:
    """Exact E|X_i - t_i|^a for every i, by piecewise polynomial integration.

    |t_i - x|^a times the Beta kernel is a polynomial on each side of t_i,
    so both pieces integrate to closed rational forms.  Costs are symmetric
    under i -> n+1-i; only the lower half is computed.
    """
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    if n < 1:
        raise ValueError("n must be at least 1")
    half: list[Fraction] = []
    for i in range(1, (n + 1) // 2 + 1):
        t = Fraction(2 * i - 1, 2 * n)
        tpow = [t ** e for e in range(n + a + 1)]
        left = Fraction(0)
        right = Fraction(0)
        for j in range(a + 1):
            for k in range(n - i + 1):
                c = math.comb(a, j) * math.comb(n - i, k) * (-1) ** (j + k)
                left += c * tpow[a - j] * Fraction(tpow[i + j + k], i + j + k)
                e = a - j + i + k
                right += c * tpow[j] * Fraction(1 - tpow[e], e)
        half.append(i * math.comb(n, i) * (left + right))
    costs = [half[i - 1] if 2 * i <= n + 1 else half[n - i] for i in range(1, n + 1)]
    return tuple(costs)


def expected_anchor_cost_integer(n: int, a: int) -> Fraction:
    """Exact S(n, a) for any positive integer a (split-integral route)."""
    return sum(anchor_cost_per_sensor_exact(n, a), start=Fraction(0))


def _beta_kernel_cost(i: int, n: int, a: float):
    """Integrand |t_i - x|^a * Beta(i, n-i+1) density, in log space."""
    ti = (2 * i - 1) / (2 * n)
    lgb = math.lgamma(i) + math.lgamma(n - i + 1) - math.lgamma(n + 1)
    c1, c2 = i - 1, n - i

    def f(x: float) -> float:
        if x <= 0.0 or x >= 1.0:
            return 0.0
        s = -lgb
        if c1:
            s += c1 * math.log(x)
        if c2:
            s += c2 * math.log1p(-x)
        return math.exp(s) * abs(ti - x) ** a

    return ti, f


def _sensor_cost_numeric(i: int, n: int, a: float, tol: float) -> float:
    ti, f = _beta_kernel_cost(i, n, a)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        v1, e1 = integrate.quad(f, 0.0, ti, epsabs=tol / 2, epsrel=0.0, limit=200)
        v2, e2 = integrate.quad(f, ti, 1.0, epsabs=tol / 2, epsrel=0.0, limit=200)
    if e1 + e2 > tol:
        raise QuadratureError(i, e1 + e2, tol)
    return v1 + v2


def expected_anchor_cost_numeric(n: int, a: float, tol: float = 1e-12) -> AnchorCostResult:
    """S(n, a) for real a > 0 by adaptive quadrature split at each kink t_i.

    Each per-sensor integral is resolved to within ``tol``; the total uses
    compensated summation.  The cost is symmetric under i -> n+1-i, so only
    the lower half is integrated.
    """
    if a <= 0:
        raise ValueError("exponent must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if n < 1:
        raise ValueError("n must be at least 1")
    half = [_sensor_cost_numeric(i, n, a, tol) for i in range(1, (n + 1) // 2 + 1)]
    per = [half[i - 1] if 2 * i <= n + 1 else half[n - i] for i in range(1, n + 1)]
    return AnchorCostResult(n=n, a=a, per_sensor=tuple(per), total=math.fsum(per))


def leading_constant(a: int) -> Fraction:
    """Limit constant of n^(a/2-1) S(n, a) for even a: (a/2)! / (2^(a/2) (1+a))."""
    if a <= 0 or a % 2 != 0:
        raise ValueError("exponent must be a positive even integer")
    return Fraction(math.factorial(a // 2), 2 ** (a // 2) * (1 + a))


def holder_chain_check(i: int, n: int, a: int, rel_slack: float = 1e-12) -> bool:
    """Check the moment inequality (D_i^(a))^((a+1)/a) <= D_i^(a+1)."""
    OrderStatSpec(i, n)
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    da = float(anchor_cost_per_sensor_exact(n, a)[i - 1])
    da1 = float(anchor_cost_per_sensor_exact(n, a + 1)[i - 1])
    return da ** ((a + 1) / a) <= da1 * (1 + rel_slack)
