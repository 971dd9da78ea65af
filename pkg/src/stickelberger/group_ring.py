"""Group-ring elements over a finite abelian Galois group.

Coefficients are exact rationals, or integers mod m when a modulus is set.
Absent labels mean coefficient zero.  Elements are immutable; all arithmetic
is exact, and restriction along a group homomorphism is the linear
pushforward (which is a ring homomorphism).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from stickelberger.exact import mod_inverse, reduce_fraction_mod
from stickelberger.galois import GaloisGroup, GroupHom, Label


class GroupRingElement:
    """An element of Q[G], or of (Z/m)[G] when ``modulus`` is not None."""

    __slots__ = ("group", "coeffs", "modulus")

    def __init__(
        self,
        group: GaloisGroup,
        coeffs: Mapping[Label, Fraction | int],
        modulus: int | None = None,
    ):
        self.group = group
        self.modulus = modulus
        clean: dict[Label, Fraction | int] = {}
        for lbl, c in coeffs.items():
            if lbl not in group.inverse_table:
                raise ValueError(f"{lbl!r} is not an element of the group")
            if modulus is None:
                c = Fraction(c)
            else:
                if isinstance(c, Fraction):
                    c = reduce_fraction_mod(c, modulus)
                c %= modulus
            if c:
                clean[lbl] = c
        self.coeffs = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, group: GaloisGroup, modulus: int | None = None) -> "GroupRingElement":
        return cls(group, {}, modulus)

    @classmethod
    def one(cls, group: GaloisGroup, modulus: int | None = None) -> "GroupRingElement":
        return cls(group, {group.identity: 1}, modulus)

    @classmethod
    def basis(
        cls, group: GaloisGroup, lbl: Label, modulus: int | None = None
    ) -> "GroupRingElement":
        return cls(group, {lbl: 1}, modulus)

    @classmethod
    def scalar(
        cls, group: GaloisGroup, c: Fraction | int, modulus: int | None = None
    ) -> "GroupRingElement":
        return cls(group, {group.identity: c}, modulus)

    # -- arithmetic --------------------------------------------------------

    def _compat(self, other: "GroupRingElement") -> None:
        if self.group != other.group:
            raise ValueError("group mismatch")
        if self.modulus != other.modulus:
            raise ValueError(f"modulus mismatch: {self.modulus} != {other.modulus}")

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        self._compat(other)
        out = dict(self.coeffs)
        for lbl, c in other.coeffs.items():
            out[lbl] = out.get(lbl, 0) + c
        return GroupRingElement(self.group, out, self.modulus)

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement(
            self.group, {lbl: -c for lbl, c in self.coeffs.items()}, self.modulus
        )

    def __mul__(self, other: "GroupRingElement | int | Fraction") -> "GroupRingElement":
        if isinstance(other, (int, Fraction)):
            return GroupRingElement(
                self.group,
                {lbl: c * other for lbl, c in self.coeffs.items()},
                self.modulus,
            )
        self._compat(other)
        out: dict[Label, Fraction | int] = {}
        g = self.group
        for a, ca in self.coeffs.items():
            for b, cb in other.coeffs.items():
                ab = g.mult(a, b)
                out[ab] = out.get(ab, 0) + ca * cb
        return GroupRingElement(g, out, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "GroupRingElement":
        if e < 0:
            raise ValueError("negative group-ring powers are not defined here")
        result = GroupRingElement.one(self.group, self.modulus)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return (
            self.group == other.group
            and self.modulus == other.modulus
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash(
            (self.group, self.modulus, tuple(sorted(self.coeffs.items(), key=str)))
        )

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- structure ----------------------------------------------------------

    def coefficient(self, lbl: Label) -> Fraction | int:
        zero = Fraction(0) if self.modulus is None else 0
        return self.coeffs.get(lbl, zero)

    def augmentation(self) -> Fraction | int:
        """Sum of coefficients (image under the trivial character)."""
        total = sum(self.coeffs.values())
        if self.modulus is not None:
            total %= self.modulus
        return total if self.coeffs else (Fraction(0) if self.modulus is None else 0)

    def support(self) -> tuple[Label, ...]:
        return tuple(sorted(self.coeffs, key=str))

    def is_integral(self) -> bool:
        """Membership in Z[G] (always true for modular coefficients)."""
        if self.modulus is not None:
            return True
        return all(c.denominator == 1 for c in self.coeffs.values())

    def denominator_lcm(self) -> int:
        if self.modulus is not None:
            return 1
        d = 1
        for c in self.coeffs.values():
            d = d * c.denominator // _gcd(d, c.denominator)
        return d

    def reduce_mod(self, m: int) -> "GroupRingElement":
        """Image in (Z/m)[G]; rational coefficients need unit denominators."""
        if self.modulus is not None:
            if self.modulus % m != 0:
                raise ValueError(f"cannot reduce mod {m} from mod {self.modulus}")
            return GroupRingElement(self.group, self.coeffs, m)
        coeffs = {
            lbl: reduce_fraction_mod(Fraction(c), m) for lbl, c in self.coeffs.items()
        }
        return GroupRingElement(self.group, coeffs, m)

    def involution(self) -> "GroupRingElement":
        """sigma -> sigma^{-1} applied to the support."""
        g = self.group
        return GroupRingElement(
            g, {g.inv(lbl): c for lbl, c in self.coeffs.items()}, self.modulus
        )

    def restrict(self, hom: GroupHom) -> "GroupRingElement":
        """Pushforward along hom: sum coefficients over the fibers."""
        if hom.source != self.group:
            raise ValueError("homomorphism source does not match the group")
        out: dict[Label, Fraction | int] = {}
        for lbl, c in self.coeffs.items():
            tgt = hom(lbl)
            out[tgt] = out.get(tgt, 0) + c
        return GroupRingElement(hom.target, out, self.modulus)

    def act(self, module, x):
        """Apply sum c_g * g to an element of any additive G-module exposing
        act(label, x), add(x, y), scale(c, x), zero()."""
        result = module.zero()
        for lbl, c in self.coeffs.items():
            result = module.add(result, module.scale(c, module.act(lbl, x)))
        return result

    def inverse_mod(self) -> "GroupRingElement":
        """Inverse in (Z/m)[G] for modular elements of the form unit + nilpotent
        over Z/l^k, computed by the finite geometric series."""
        if self.modulus is None:
            raise ValueError("inverse_mod is defined for modular elements only")
        one = GroupRingElement.one(self.group, self.modulus)
        u = self.coefficient(self.group.identity)
        # split off the identity coefficient: self = u*(1 - t)
        try:
            u_inv = mod_inverse(u, self.modulus)
        except ValueError:
            raise ValueError("identity coefficient is not a unit") from None
        t = one - self * u_inv
        acc = one
        term = one
        for _ in range(64):
            term = term * t
            if not term:
                break
            acc = acc + term
        else:
            raise ValueError("element is not unit-plus-nilpotent")
        inv = acc * u_inv
        if inv * self != one:
            raise ValueError("inverse computation failed: element not invertible")
        return inv

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"{c}*s{lbl}" for lbl, c in sorted(self.coeffs.items(), key=str)]
        tag = f" (mod {self.modulus})" if self.modulus is not None else ""
        return " + ".join(parts) + tag


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def format_element(elem: GroupRingElement, sigma: str = "σ") -> str:
    """Human-readable rendering: 'σ1: 2, σ3: 2' style, labels in order."""
    g = elem.group
    parts = []
    for lbl in g.labels:
        c = elem.coefficient(lbl)
        if c:
            parts.append(f"{sigma}{lbl}: {c}")
    return ", ".join(parts) if parts else "0"


def elements_product(factors: Iterable[GroupRingElement]) -> GroupRingElement:
    factors = list(factors)
    if not factors:
        raise ValueError("empty product needs an explicit ring")
    out = GroupRingElement.one(factors[0].group, factors[0].modulus)
    for f in factors:
        out = out * f
    return out
