"""Exact arithmetic kernel: Bernoulli numbers and polynomials, valuations,
residue classes, unit groups.

Everything here is exact.  Rationals are ``fractions.Fraction`` (always in
lowest terms, positive denominator), big integers are Python ints.

Convention: B_1 = -1/2.  This is the convention under which

    zeta_H(0, x) = 1/2 - x  and  zeta_H(-n, x) = -B_{n+1}(x)/(n+1)

for the Hurwitz zeta function, which is how partial zeta values at
nonpositive integers are computed downstream.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

Rational = Fraction

_bernoulli_lock = threading.Lock()
_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """The n-th Bernoulli number, with B_1 = -1/2.

    Computed by the defining recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0
    and memoized; the cache grows to the largest n requested.
    """
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= n:
            m = len(_bernoulli_cache)
            acc = sum(
                comb(m + 1, j) * _bernoulli_cache[j] for j in range(m)
            )
            _bernoulli_cache.append(Fraction(-acc, m + 1))
        return _bernoulli_cache[n]


def bernoulli_polynomial(n: int, x: Fraction | int) -> Fraction:
    """B_n(x) = sum_{k=0}^{n} C(n, k) B_k x^{n-k}, exactly."""
    if n < 0:
        raise ValueError(f"Bernoulli index must be >= 0, got {n}")
    x = Fraction(x)
    bernoulli_number(n)  # fill the cache once
    total = Fraction(0)
    xp = Fraction(1)
    for k in range(n, -1, -1):
        total += comb(n, k) * _bernoulli_cache[k] * xp
        xp *= x
    return total


def l_valuation(q: Fraction | int, l: int) -> int:
    """Exponent of the prime l in the nonzero rational q.

    Negative values account for denominators: l_valuation(1/9, 3) == -2.
    """
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of 0 is undefined")
    if l < 2:
        raise ValueError(f"modulus {l} is not a prime")
    return _int_valuation(q.numerator, l) - _int_valuation(q.denominator, l)


def _int_valuation(n: int, l: int) -> int:
    n = abs(n)
    v = 0
    while n % l == 0:
        n //= l
        v += 1
    return v


def unit_group(f: int) -> list[int]:
    """All a with 1 <= a <= f and gcd(a, f) = 1, ascending; [1] for f = 1."""
    if f < 1:
        raise ValueError(f"modulus must be >= 1, got {f}")
    if f == 1:
        return [1]
    return [a for a in range(1, f + 1) if gcd(a, f) == 1]


@dataclass(frozen=True)
class Residue:
    """A residue class value mod modulus, stored with 0 <= value < modulus."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _check(self, other: "Residue") -> None:
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus} != {other.modulus}"
            )

    def __add__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value + other.value, self.modulus)

    def __sub__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value - other.value, self.modulus)

    def __mul__(self, other: "Residue") -> "Residue":
        self._check(other)
        return Residue(self.value * other.value, self.modulus)

    def __neg__(self) -> "Residue":
        return Residue(-self.value, self.modulus)

    def __pow__(self, e: int) -> "Residue":
        if e < 0:
            return self.inverse() ** (-e)
        return Residue(pow(self.value, e, self.modulus), self.modulus)

    def inverse(self) -> "Residue":
        if gcd(self.value, self.modulus) != 1:
            raise ValueError(
                f"{self.value} is not invertible mod {self.modulus}"
            )
        return Residue(pow(self.value, -1, self.modulus), self.modulus)

    def is_unit(self) -> bool:
        return gcd(self.value, self.modulus) == 1


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a mod m; raises if gcd(a, m) != 1."""
    if gcd(a % m, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def reduce_fraction_mod(q: Fraction, m: int) -> int:
    """Image of the rational q in Z/m when its denominator is a unit mod m."""
    return q.numerator * mod_inverse(q.denominator, m) % m
