"""Exact arithmetic for integer combinations of roots of unity.

The kernel of every orthogonality check: a sum ``sum_k counts[k] * zeta_L^k``
vanishes iff the counts polynomial is divisible by the L-th cyclotomic
polynomial. Since ``Phi_L`` is monic, the remainder stays in the integers and
the zero test is exact. Coefficients are Python ints throughout, so nothing
can silently wrap.
"""

from __future__ import annotations

import cmath
from functools import lru_cache
from typing import Iterable

from .groups import BudgetExceededError

MAX_CYCLOTOMIC_INDEX = 10**6


class IntPolynomial:
    """Integer polynomial, coefficients ascending, trailing zeros stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_power_minus_one(cls, n: int) -> IntPolynomial:
        return cls([-1] + [0] * (n - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero or other.is_zero:
            return IntPolynomial([])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """School division by a monic divisor; exact over the integers."""
        if not divisor.is_monic:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        quot = [0] * max(len(rem) - dd, 0)
        for top in range(len(rem) - 1, dd - 1, -1):
            c = rem[top]
            if c:
                quot[top - dd] = c
                for j, b in enumerate(divisor.coeffs):
                    rem[top - dd + j] -= c * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)!r})"


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> IntPolynomial:
    """The n-th cyclotomic polynomial Phi_n, monic of degree phi(n).

    Computed by exact division of ``x^n - 1`` by the product of Phi_d over the
    proper divisors d of n; results are memoized for the process lifetime.
    """
    if n < 1:
        raise ValueError("cyclotomic index must be a positive integer")
    if n > MAX_CYCLOTOMIC_INDEX:
        raise BudgetExceededError(
            f"cyclotomic index {n} exceeds {MAX_CYCLOTOMIC_INDEX}"
        )
    if n == 1:
        return IntPolynomial([-1, 1])
    den = IntPolynomial([1])
    for d in range(1, n // 2 + 1):
        if n % d == 0:
            den = den * cyclotomic_poly(d)
    quot, rem = IntPolynomial.x_power_minus_one(n).divmod_monic(den)
    if not rem.is_zero:
        raise AssertionError(f"x^{n}-1 not divisible by product of lower Phi_d")
    return quot


@lru_cache(maxsize=None)
def _reduction_rows(L: int) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """x^j mod Phi_L for deg <= j < L, as coefficient rows of length deg."""
    phi = cyclotomic_poly(L)
    deg = phi.degree
    base = tuple(-c for c in phi.coeffs[:deg])  # x^deg mod Phi_L
    rows: list[tuple[int, ...]] = []
    row = base
    for _ in range(deg, L):
        rows.append(row)
        top = row[deg - 1]
        row = tuple((row[i - 1] if i else 0) + top * base[i] for i in range(deg))
    return deg, tuple(rows)


@lru_cache(maxsize=1 << 16)
def _is_zero_cached(L: int, counts: tuple[int, ...]) -> bool:
    deg, rows = _reduction_rows(L)
    rem = list(counts[:deg])
    for j in range(deg, L):
        c = counts[j]
        if c:
            row = rows[j - deg]
            for i in range(deg):
                rem[i] += c * row[i]
    return not any(rem)


class CyclotomicSum:
    """An exact integer combination of the L-th roots of unity.

    ``counts[k]`` is the coefficient of ``zeta_L^k``; entries may be negative,
    so differences of character sums live in the same type.
    """

    __slots__ = ("order", "counts")

    def __init__(self, order: int, counts: Iterable[int]):
        if order < 1:
            raise ValueError("root order must be a positive integer")
        cs = tuple(int(c) for c in counts)
        if len(cs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(cs)}")
        self.order = order
        self.counts = cs

    @classmethod
    def from_exponents(cls, order: int, exponents: Iterable[int]) -> CyclotomicSum:
        counts = [0] * order
        for e in exponents:
            counts[e % order] += 1
        return cls(order, counts)

    def _require_same_order(self, other: CyclotomicSum) -> None:
        if self.order != other.order:
            raise ValueError(f"root order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: CyclotomicSum) -> CyclotomicSum:
        self._require_same_order(other)
        return CyclotomicSum(self.order, [a + b for a, b in zip(self.counts, other.counts)])

    def __sub__(self, other: CyclotomicSum) -> CyclotomicSum:
        self._require_same_order(other)
        return CyclotomicSum(self.order, [a - b for a, b in zip(self.counts, other.counts)])

    def rotated(self, r: int) -> CyclotomicSum:
        """Multiply by the unit zeta_L^r (cyclic shift of the exponents)."""
        L = self.order
        r %= L
        return CyclotomicSum(L, self.counts[-r:] + self.counts[:-r] if r else self.counts)

    def is_zero(self) -> bool:
        """Exact test: does the sum equal 0 as an algebraic number?"""
        return _is_zero_cached(self.order, self.counts)

    def approx_complex(self) -> complex:
        """Double-precision value; cross-validation oracle, never the decider."""
        L = self.order
        return sum(
            (c * cmath.exp(2j * cmath.pi * k / L) for k, c in enumerate(self.counts) if c),
            complex(0.0),
        )

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CyclotomicSum)
            and self.order == other.order
            and self.counts == other.counts
        )

    def __hash__(self) -> int:
        return hash((self.order, self.counts))

    def __repr__(self) -> str:
        support = {k: c for k, c in enumerate(self.counts) if c}
        return f"CyclotomicSum(L={self.order}, {support!r})"


def is_zero(s: CyclotomicSum) -> bool:
    """Module-level alias for :meth:`CyclotomicSum.is_zero`."""
    return s.is_zero()


def approx_complex(s: CyclotomicSum) -> complex:
    """Module-level alias for :meth:`CyclotomicSum.approx_complex`."""
    return s.approx_complex()
