"""Exact cyclotomic arithmetic Q[x]/(Phi_d) and characters of finite abelian
groups, used as an independent oracle for the group-ring calculus.

A character of G with values in the d-th roots of unity is stored through a
cyclic decomposition of G; its values are CyclotomicNumber instances, i.e.
polynomials in a fixed primitive d-th root reduced mod the d-th cyclotomic
polynomial.  Equality in the quotient ring is structural, so every identity
checked here is an exact ring identity.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from sympy import Poly, Symbol, cyclotomic_poly

from stickelberger.galois import GaloisGroup, Label


@lru_cache(maxsize=None)
def _phi_coeffs(d: int) -> tuple[int, ...]:
    """Coefficients of the d-th cyclotomic polynomial, ascending degree."""
    x = Symbol("x")
    poly = Poly(cyclotomic_poly(d, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


class CyclotomicNumber:
    """An element of Q[x]/(Phi_d(x)), x a primitive d-th root of unity."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs):
        self.d = d
        deg = len(_phi_coeffs(d)) - 1
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > deg:
            cs = _reduce(cs, d)
        cs += [Fraction(0)] * (deg - len(cs))
        self.coeffs = tuple(cs[:deg])

    @classmethod
    def zero(cls, d: int) -> "CyclotomicNumber":
        return cls(d, [])

    @classmethod
    def from_rational(cls, d: int, c) -> "CyclotomicNumber":
        return cls(d, [Fraction(c)])

    @classmethod
    def root_power(cls, d: int, j: int) -> "CyclotomicNumber":
        """zeta_d^j, reduced."""
        j %= d
        coeffs = [Fraction(0)] * j + [Fraction(1)]
        return cls(d, coeffs)

    def _compat(self, other: "CyclotomicNumber") -> None:
        if self.d != other.d:
            raise ValueError(f"cyclotomic order mismatch: {self.d} != {other.d}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.d, other)
        self._compat(other)
        return CyclotomicNumber(
            self.d, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.d, [-a for a in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.d, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.d, [a * other for a in self.coeffs])
        self._compat(other)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CyclotomicNumber(self.d, prod)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.from_rational(self.d, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.d, self.coeffs))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __repr__(self) -> str:
        return f"CyclotomicNumber(d={self.d}, {list(self.coeffs)})"


def _reduce(cs: list[Fraction], d: int) -> list[Fraction]:
    """Polynomial remainder mod Phi_d (monic), ascending coefficients."""
    phi = _phi_coeffs(d)
    deg = len(phi) - 1
    cs = list(cs)
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if not c:
            continue
        for k in range(deg + 1):
            cs[i - deg + k] -= c * phi[k]
    return cs[:deg]


class Character:
    """A character chi: G -> mu_d, stored via a cyclic decomposition of G.

    exponents[i] maps the i-th decomposition generator g_i (of order o_i) to
    zeta_d^{(d/o_i) * exponents[i]}.
    """

    def __init__(
        self,
        group: GaloisGroup,
        decomposition: list[tuple[Label, int]],
        dlog: dict[Label, tuple[int, ...]],
        exponents: tuple[int, ...],
        d: int,
    ):
        self.group = group
        self.decomposition = decomposition
        self._dlog = dlog
        self.exponents = exponents
        self.d = d

    def __call__(self, lbl: Label) -> CyclotomicNumber:
        js = self._dlog[lbl]
        total = 0
        for (gen, order), e, j in zip(self.decomposition, self.exponents, js):
            total += (self.d // order) * e * j
        return CyclotomicNumber.root_power(self.d, total % self.d)

    def order(self) -> int:
        from math import gcd, lcm

        o = 1
        for (_, order), e in zip(self.decomposition, self.exponents):
            o = lcm(o, order // gcd(order, e))
        return o

    def inverse(self) -> "Character":
        exps = tuple(
            (-e) % order for (_, order), e in zip(self.decomposition, self.exponents)
        )
        return Character(self.group, self.decomposition, self._dlog, exps, self.d)

    def is_trivial(self) -> bool:
        return all(
            e % order == 0
            for (_, order), e in zip(self.decomposition, self.exponents)
        )

    def apply_group_ring(self, elem) -> CyclotomicNumber:
        """chi extended linearly to the group ring (rational coefficients)."""
        total = CyclotomicNumber.zero(self.d)
        for lbl, c in elem.coeffs.items():
            total = total + self(lbl) * c
        return total


def character_group(group: GaloisGroup, d: int | None = None) -> list[Character]:
    """All characters of G with order dividing d (default: all characters,
    d = exponent of G)."""
    from itertools import product
    from math import gcd

    exp = group.exponent()
    if d is None:
        d = exp
    decomposition = group.cyclic_decomposition()
    dlog = _full_dlog(group, decomposition)
    chars = []
    ranges = []
    for _, order in decomposition:
        # chi(g_i) must be an (order, d)-th root: exponent multiple of order/gcd
        g = gcd(order, d)
        step = order // g
        ranges.append(range(0, order, step))
    for exps in product(*ranges):
        chars.append(Character(group, decomposition, dlog, tuple(exps), d))
    return chars


def _full_dlog(
    group: GaloisGroup, decomposition: list[tuple[Label, int]]
) -> dict[Label, tuple[int, ...]]:
    """Write every element as a product of decomposition-generator powers."""
    from itertools import product

    table: dict[Label, tuple[int, ...]] = {}
    gens = [g for g, _ in decomposition]
    orders = [o for _, o in decomposition]
    for js in product(*[range(o) for o in orders]):
        x = group.identity
        for g, j in zip(gens, js):
            x = group.mult(x, group.power(g, j))
        if x not in table:
            table[x] = js
    if len(table) != group.order:
        raise ValueError("decomposition does not span the group")
    return table
