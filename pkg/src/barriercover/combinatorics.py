"""Exact integer/rational special numbers and identity verification.

Everything in this module is computed in exact arithmetic: plain Python
integers for the combinatorial tables and ``fractions.Fraction`` for
rational quantities.  Out-of-range table indices return 0 so that
unrestricted sums over a free index can be written exactly as the
classical identities state them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

# Exact rational scalar used throughout the package.
ExactScalar = Fraction

Rational = int | Fraction


@dataclass(frozen=True)
class CombTable:
    """Immutable tables of special numbers up to row ``max_m``.

    Rows are indexed by (m, k): unsigned Stirling numbers of the first
    kind, Stirling numbers of the second kind, second-order Eulerian
    numbers, and factorials.  Entry (0, 0) of every table is 1 and
    indices outside 0 <= k <= m are 0 by convention.
    """

    max_m: int
    stirling1_rows: tuple[tuple[int, ...], ...]
    stirling2_rows: tuple[tuple[int, ...], ...]
    eulerian2_rows: tuple[tuple[int, ...], ...]
    factorials: tuple[int, ...]

    @classmethod
    def build(cls, max_m: int) -> "CombTable":
        if max_m < 0:
            raise ValueError("max_m must be nonnegative")
        s1: list[tuple[int, ...]] = [(1,)]
        s2: list[tuple[int, ...]] = [(1,)]
        e2: list[tuple[int, ...]] = [(1,)]
        for m in range(1, max_m + 1):
            p1, p2, pe = s1[m - 1], s2[m - 1], e2[m - 1]

            def at(row: tuple[int, ...], k: int) -> int:
                return row[k] if 0 <= k < len(row) else 0

            s1.append(tuple(at(p1, k - 1) + (m - 1) * at(p1, k) for k in range(m + 1)))
            s2.append(tuple(at(p2, k - 1) + k * at(p2, k) for k in range(m + 1)))
            e2.append(tuple((k + 1) * at(pe, k) + (2 * m - 1 - k) * at(pe, k - 1)
                            for k in range(m + 1)))
        facts = tuple(math.factorial(m) for m in range(max_m + 1))
        return cls(max_m, tuple(s1), tuple(s2), tuple(e2), facts)

    def _entry(self, rows: tuple[tuple[int, ...], ...], m: int, k: int) -> int:
        if m < 0 or m > self.max_m:
            raise ValueError(f"row {m} outside built range 0..{self.max_m}")
        if k < 0 or k > m:
            return 0
        return rows[m][k]

    def stirling1_unsigned(self, m: int, k: int) -> int:
        return self._entry(self.stirling1_rows, m, k)

    def stirling2(self, m: int, k: int) -> int:
        return self._entry(self.stirling2_rows, m, k)

    def eulerian2(self, m: int, k: int) -> int:
        return self._entry(self.eulerian2_rows, m, k)

    def factorial(self, m: int) -> int:
        if m < 0 or m > self.max_m:
            raise ValueError(f"factorial index {m} outside built range")
        return self.factorials[m]


_shared_table: CombTable = CombTable.build(8)


def _table(upto: int) -> CombTable:
    """Shared table, rebuilt (and re-frozen) when a larger row is requested."""
    global _shared_table
    if upto > _shared_table.max_m:
        _shared_table = CombTable.build(upto)
    return _shared_table


def binomial(n: int, k: int) -> int:
    """C(n, k); 0 when k < 0 or k > n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def rising_factorial(x: Rational, k: int) -> Rational:
    """x (x+1) ... (x+k-1); 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result: Rational = 1
    for t in range(k):
        result = result * (x + t)
    return result


def falling_factorial(x: Rational, k: int) -> Rational:
    """x (x-1) ... (x-k+1); 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    result: Rational = 1
    for t in range(k):
        result = result * (x - t)
    return result


def stirling1_unsigned(m: int, k: int) -> int:
    """Unsigned Stirling number of the first kind (cycle counts)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _table(m).stirling1_unsigned(m, k)


def stirling2(m: int, k: int) -> int:
    """Stirling number of the second kind (set-partition counts)."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _table(m).stirling2(m, k)


def eulerian2(m: int, k: int) -> int:
    """Second-order Eulerian number."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return _table(m).eulerian2(m, k)


def beta_exact(c: int, d: int) -> Fraction:
    """Beta function B(c, d) = (c-1)! (d-1)! / (c+d-1)! at integer arguments."""
    if c < 1 or d < 1:
        raise ValueError("beta_exact requires c >= 1 and d >= 1")
    return Fraction(1, math.comb(c + d - 1, c) * c)


def finite_difference_power(a: int, m: int) -> int:
    """Alternating binomial sum of j^m: 0 for m < a and (-1)^a a! at m = a."""
    if a < 0 or m < 0:
        raise ValueError("a and m must be nonnegative")
    return sum(math.comb(a, j) * (-1) ** j * j ** m for j in range(a + 1))


@dataclass(frozen=True)
class IdentityCheck:
    identity_id: str
    instance: str
    lhs: str
    rhs: str
    passed: bool


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...]

    @property
    def failures(self) -> tuple[IdentityCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    @property
    def all_passed(self) -> bool:
        return not self.failures

    def csv_rows(self) -> list[tuple[str, str, str, str, str]]:
        return [(c.identity_id, c.instance, c.lhs, c.rhs, str(c.passed).lower())
                for c in self.checks]


def _check(out: list[IdentityCheck], identity_id: str, instance: str,
           lhs: Rational, rhs: Rational) -> None:
    out.append(IdentityCheck(identity_id, instance, str(lhs), str(rhs), lhs == rhs))


def _gbinom(n: int, k: int) -> Fraction:
    """Generalized binomial (upper index may be negative), 0 for k < 0."""
    if k < 0:
        return Fraction(0)
    return Fraction(falling_factorial(Fraction(n), k), math.factorial(k))


def verify_identities(max_m: int, max_d: int) -> IdentityReport:
    """Machine-check the classical identities used by the exact cost analysis.

    Checks, in exact arithmetic, for all instances within the given bounds:

    1. power-to-falling-factorial expansion through Stirling-2 numbers,
    2. falling-factorial-to-power expansion through signed Stirling-1 numbers,
    3. second-order Eulerian row sums (2m)! / (m! 2^m),
    4. Stirling-2 near-diagonal expansion through second-order Eulerian numbers,
    5. Stirling-1 near-diagonal expansion through second-order Eulerian numbers,
    6. the alternating reciprocal sum  sum_l C(d,l)(-1)^l/(d+1+l) = d!d!/(2d+1)!,
    7. the telescoping sum of falling*rising factorial products.

    Failures are reported, not raised.
    """
    if max_m > 20:
        raise ValueError("max_m > 20 exceeds the runtime guard")
    table = _table(max(2 * max_m, max_m + 1, 2))
    out: list[IdentityCheck] = []

    for m in range(max_m + 1):
        for x in range(-max_m, max_m + 1):
            lhs = Fraction(x) ** m
            rhs = sum((table.stirling2(m, l) * falling_factorial(Fraction(x), l)
                       for l in range(m + 1)), start=Fraction(0))
            _check(out, "power_to_falling", f"m={m},x={x}", lhs, rhs)

    for m in range(max_m + 1):
        for x in range(-max_m, max_m + 1):
            lhs = falling_factorial(Fraction(x), m)
            rhs = sum((table.stirling1_unsigned(m, l) * (-1) ** (m - l) * Fraction(x) ** l
                       for l in range(m + 1)), start=Fraction(0))
            _check(out, "falling_to_power", f"m={m},x={x}", lhs, rhs)

    for m in range(max_m + 1):
        lhs = sum(table.eulerian2(m, l) for l in range(m + 1))
        rhs = math.factorial(2 * m) // (math.factorial(m) * 2 ** m)
        _check(out, "eulerian2_row_sum", f"m={m}", lhs, rhs)

    for m in range(max_m + 1):
        for b in range(m + 1):
            lhs = table.stirling2(m, m - b)
            rhs = sum((table.eulerian2(b, l) * _gbinom(m + b - 1 - l, 2 * b)
                       for l in range(b + 1)), start=Fraction(0))
            _check(out, "stirling2_eulerian2", f"m={m},b={b}", lhs, rhs)
            lhs = table.stirling1_unsigned(m, m - b)
            rhs = sum((table.eulerian2(b, l) * _gbinom(m + l, 2 * b)
                       for l in range(b + 1)), start=Fraction(0))
            _check(out, "stirling1_eulerian2", f"m={m},b={b}", lhs, rhs)

    for d in range(max_d + 1):
        lhs = sum((Fraction(math.comb(d, l) * (-1) ** l, d + 1 + l)
                   for l in range(d + 1)), start=Fraction(0))
        rhs = Fraction(math.factorial(d) ** 2, math.factorial(2 * d + 1))
        _check(out, "alternating_reciprocal_sum", f"d={d}", lhs, rhs)

    for d in range(max_d + 1):
        for f in range(max_d + 1):
            for n in range(1, max_m + 1):
                lhs = sum(falling_factorial(i - 1, d) * rising_factorial(i, f)
                          for i in range(1, n + 1))
                rhs = Fraction(falling_factorial(n - 1, d) * rising_factorial(n, f + 1),
                               f + d + 1)
                _check(out, "telescoping_sum", f"d={d},f={f},n={n}", lhs, rhs)

    return IdentityReport(tuple(out))
