"""Abelian extensions of Q and abstract finite abelian Galois groups.

A field is a pair (modulus f, unit subgroup H <= (Z/f)^x): semantically the
fixed field of H acting on the f-th cyclotomic field.  Every field carries a
canonical conductor-normalized form, and Galois-group element labels are the
minimal positive residues of the cosets at the *normalized* modulus, so two
presentations of the same field agree label-for-label.

General totally real base fields are supported only through ``GaloisGroup``
objects constructed from ingested multiplication tables (see ``zeta``); no
field arithmetic is done for them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd, lcm

from sympy import primerange

from stickelberger.exact import unit_group

Label = int | str


class GaloisGroup:
    """A finite abelian group with explicit labels and multiplication table.

    For K = Q fields the labels are minimal positive coset representatives;
    for ingested ray-class data they are opaque strings.  Construction from
    an explicit table checks all the group axioms, including commutativity.
    """

    def __init__(
        self,
        labels: tuple[Label, ...],
        mult: dict[tuple[Label, Label], Label],
        identity: Label,
        check: bool = True,
    ):
        self.labels = tuple(labels)
        self.mult_table = dict(mult)
        self.identity = identity
        if check:
            self._validate()
        self.inverse_table = {a: self._find_inverse(a) for a in self.labels}

    def _validate(self) -> None:
        labels = set(self.labels)
        if len(labels) != len(self.labels):
            raise ValueError("duplicate group labels")
        if self.identity not in labels:
            raise ValueError(f"identity {self.identity!r} not among labels")
        for a in self.labels:
            for b in self.labels:
                c = self.mult_table.get((a, b))
                if c is None:
                    raise ValueError(f"multiplication table missing {a!r}*{b!r}")
                if c not in labels:
                    raise ValueError(f"{a!r}*{b!r} = {c!r} is not a label")
                if self.mult_table[(b, a)] != c:
                    raise ValueError(f"group is not abelian at {a!r}, {b!r}")
        for a in self.labels:
            if self.mult_table[(self.identity, a)] != a:
                raise ValueError(f"identity axiom fails at {a!r}")
        for a in self.labels:
            for b in self.labels:
                for c in self.labels:
                    if self.mult_table[(self.mult_table[(a, b)], c)] != self.mult_table[
                        (a, self.mult_table[(b, c)])
                    ]:
                        raise ValueError(
                            f"associativity fails at {a!r}, {b!r}, {c!r}"
                        )
        for a in self.labels:
            if not any(
                self.mult_table[(a, b)] == self.identity for b in self.labels
            ):
                raise ValueError(f"no inverse for {a!r}")

    def _find_inverse(self, a: Label) -> Label:
        for b in self.labels:
            if self.mult_table[(a, b)] == self.identity:
                return b
        raise ValueError(f"no inverse for {a!r}")

    @property
    def order(self) -> int:
        return len(self.labels)

    def mult(self, a: Label, b: Label) -> Label:
        return self.mult_table[(a, b)]

    def inv(self, a: Label) -> Label:
        return self.inverse_table[a]

    def power(self, a: Label, e: int) -> Label:
        if e < 0:
            return self.power(self.inv(a), -e)
        result = self.identity
        base = a
        while e:
            if e & 1:
                result = self.mult(result, base)
            base = self.mult(base, base)
            e >>= 1
        return result

    def element_order(self, a: Label) -> int:
        n = 1
        x = a
        while x != self.identity:
            x = self.mult(x, a)
            n += 1
        return n

    def exponent(self) -> int:
        e = 1
        for a in self.labels:
            e = lcm(e, self.element_order(a))
        return e

    def subgroup_closure(self, gens: set[Label] | frozenset[Label]) -> frozenset[Label]:
        closed = {self.identity}
        frontier = set(gens)
        while frontier:
            x = frontier.pop()
            if x in closed:
                continue
            closed.add(x)
            frontier.update(self.mult(x, y) for y in list(closed))
        return frozenset(closed)

    def cosets(self, subgroup: frozenset[Label]) -> list[frozenset[Label]]:
        seen: set[Label] = set()
        out = []
        for a in sorted(self.labels, key=_label_key):
            if a in seen:
                continue
            coset = frozenset(self.mult(a, h) for h in subgroup)
            seen.update(coset)
            out.append(coset)
        return out

    def coset_reps(self, subgroup: frozenset[Label]) -> list[Label]:
        """Deterministic representatives with the identity's coset first."""
        reps = [min(c, key=_label_key) for c in self.cosets(subgroup)]
        id_rep = next(
            r for r, c in zip(reps, self.cosets(subgroup)) if self.identity in c
        )
        reps.remove(id_rep)
        return [id_rep] + reps

    def cyclic_decomposition(self) -> list[tuple[Label, int]]:
        """Generators g_i with orders d_i such that G = prod <g_i>, d_1 the
        exponent.  Standard peeling argument: a maximal-order element spans a
        direct summand; lift generators of the quotient to same-order elements.
        """
        if self.order == 1:
            return []
        exp = self.exponent()
        g1 = next(a for a in self.labels if self.element_order(a) == exp)
        sub = self.subgroup_closure({g1})
        if len(sub) == self.order:
            return [(g1, exp)]
        quot, proj = self.quotient(sub)
        out = [(g1, exp)]
        for qgen, qord in quot.cyclic_decomposition():
            # lift to an element of the same order: adjust by a power of g1
            x = next(a for a in self.labels if proj[a] == qgen)
            xr = self.power(x, qord)
            # xr lies in <g1>; xr = g1^t with qord | t, so divide out
            t = 0
            y = self.identity
            while y != xr:
                y = self.mult(y, g1)
                t += 1
            assert t % qord == 0, "lifting invariant violated"
            x = self.mult(x, self.power(self.inv(g1), t // qord))
            assert self.element_order(x) == qord
            out.append((x, qord))
        return out

    def quotient(
        self, subgroup: frozenset[Label]
    ) -> tuple["GaloisGroup", dict[Label, Label]]:
        """Quotient group with min-label coset labels and the projection."""
        cosets = self.cosets(subgroup)
        rep = {}
        for c in cosets:
            r = min(c, key=_label_key)
            for a in c:
                rep[a] = r
        labels = tuple(sorted({rep[a] for a in self.labels}, key=_label_key))
        mult = {
            (a, b): rep[self.mult(a, b)] for a in labels for b in labels
        }
        return GaloisGroup(labels, mult, rep[self.identity], check=False), rep

    def dlog(self, base: Label, x: Label) -> int:
        """Discrete log of x in <base>; raises if x is outside."""
        y = self.identity
        for e in range(self.element_order(base)):
            if y == x:
                return e
            y = self.mult(y, base)
        raise ValueError(f"{x!r} not in the cyclic group generated by {base!r}")

    def __repr__(self) -> str:
        return f"GaloisGroup(order={self.order}, labels={self.labels!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GaloisGroup):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.identity == other.identity
            and self.mult_table == other.mult_table
        )

    def __hash__(self) -> int:
        return hash((self.labels, self.identity))


def _label_key(a: Label) -> tuple[int, int | str]:
    return (0, a) if isinstance(a, int) else (1, a)


def trivial_group() -> GaloisGroup:
    return GaloisGroup((1,), {(1, 1): 1}, 1, check=False)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism between labeled abelian groups, given element-wise."""

    source: GaloisGroup
    target: GaloisGroup
    mapping: dict[Label, Label] = field(hash=False)

    def __call__(self, a: Label) -> Label:
        return self.mapping[a]

    def verify(self) -> None:
        for a in self.source.labels:
            if self.mapping[a] not in set(self.target.labels):
                raise ValueError(f"image of {a!r} is not a target label")
        for a in self.source.labels:
            for b in self.source.labels:
                lhs = self.mapping[self.source.mult(a, b)]
                rhs = self.target.mult(self.mapping[a], self.mapping[b])
                if lhs != rhs:
                    raise ValueError(f"not a homomorphism at {a!r}, {b!r}")

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise ValueError("homomorphisms do not compose")
        return GroupHom(
            inner.source,
            self.target,
            {a: self.mapping[inner.mapping[a]] for a in inner.source.labels},
        )

    def kernel_labels(self) -> frozenset[Label]:
        return frozenset(
            a for a in self.source.labels
            if self.mapping[a] == self.target.identity
        )

    def is_surjective(self) -> bool:
        return set(self.mapping.values()) == set(self.target.labels)


def identity_hom(g: GaloisGroup) -> GroupHom:
    return GroupHom(g, g, {a: a for a in g.labels})


# ---------------------------------------------------------------------------
# Abelian extensions of Q


def _closure_mod(f: int, gens: tuple[int, ...]) -> frozenset[int]:
    closed = {1 % f if f > 1 else 1}
    frontier = {g % f for g in gens}
    while frontier:
        x = frontier.pop()
        if x in closed:
            continue
        closed.add(x)
        frontier.update(x * y % f for y in list(closed))
    return frozenset(closed)


class AbelianFieldQ:
    """An abelian extension of Q given by a modulus and a unit subgroup.

    The field is the fixed field of H <= (Z/f)^x inside Q(mu_f).  Instances
    are immutable; the conductor-normalized form is computed eagerly and two
    fields are equal iff their normalized forms coincide.
    """

    def __init__(self, modulus: int, generators: tuple[int, ...] = ()):
        if modulus < 1:
            raise ValueError(f"modulus must be >= 1, got {modulus}")
        for g in generators:
            if gcd(g, modulus) != 1:
                raise ValueError(f"generator {g} is not coprime to {modulus}")
        self.modulus = modulus
        self.subgroup = _closure_mod(modulus, generators)
        self._conductor, self._norm_subgroup = self._normalize()
        self._group, self._label_of = self._build_group()

    # -- normalization ------------------------------------------------

    def _normalize(self) -> tuple[int, frozenset[int]]:
        f = self.modulus
        units = unit_group(f)
        for f0 in sorted(_divisors(f)):
            kernel = {a for a in units if a % f0 == 1 % max(f0, 1)}
            if kernel <= self.subgroup:
                h0 = frozenset(a % f0 if f0 > 1 else 1 for a in self.subgroup)
                return f0, h0
        raise AssertionError("unreachable: f itself always works")

    def _build_group(self) -> tuple[GaloisGroup, dict[int, int]]:
        f0, h0 = self._conductor, self._norm_subgroup
        if f0 == 1:
            return trivial_group(), {1: 1}
        units = unit_group(f0)
        label_of: dict[int, int] = {}
        labels = []
        for a in units:
            if a in label_of:
                continue
            coset = sorted(a * h % f0 for h in h0)
            rep = coset[0]
            for x in coset:
                label_of[x] = rep
            labels.append(rep)
        labels.sort()
        mult = {
            (a, b): label_of[a * b % f0] for a in labels for b in labels
        }
        return GaloisGroup(tuple(labels), mult, label_of[1], check=False), label_of

    # -- public surface -------------------------------------------------

    @property
    def conductor(self) -> int:
        """Smallest defining modulus: f0 | f with ker((Z/f)^x -> (Z/f0)^x) <= H."""
        return self._conductor

    @property
    def group(self) -> GaloisGroup:
        """Galois group over Q, with minimal-residue coset labels mod the
        conductor."""
        return self._group

    @property
    def degree(self) -> int:
        return self._group.order

    def normalized(self) -> "AbelianFieldQ":
        if self._conductor == self.modulus:
            return self
        return AbelianFieldQ(self._conductor, tuple(self._norm_subgroup))

    def artin_symbol(self, a: int) -> int:
        """The coset label of the Frobenius attached to a; gcd(a, conductor)=1."""
        f0 = self._conductor
        if f0 == 1:
            return 1
        a = a % f0
        if gcd(a, f0) != 1:
            raise ValueError(f"{a} is not coprime to the conductor {f0}")
        return self._label_of[a]

    def is_subfield_of(self, other: "AbelianFieldQ") -> bool:
        f0, g0 = self._conductor, other._conductor
        if g0 % f0 != 0:
            return False
        lifted = {
            a for a in unit_group(g0)
            if (a % f0 if f0 > 1 else 1) in self._norm_subgroup
        }
        return other._norm_subgroup <= lifted

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AbelianFieldQ):
            return NotImplemented
        return (
            self._conductor == other._conductor
            and self._norm_subgroup == other._norm_subgroup
        )

    def __hash__(self) -> int:
        return hash((self._conductor, self._norm_subgroup))

    def __repr__(self) -> str:
        return (
            f"AbelianFieldQ(modulus={self.modulus}, conductor={self._conductor}, "
            f"degree={self.degree})"
        )


def make_field(f: int, generators: tuple[int, ...] | list[int] = ()) -> AbelianFieldQ:
    """Field given by modulus f and subgroup generators (closure is computed)."""
    return AbelianFieldQ(f, tuple(generators))


def rational_field() -> AbelianFieldQ:
    return AbelianFieldQ(1)


def cyclotomic_field(f: int) -> AbelianFieldQ:
    """Q(mu_f)."""
    return AbelianFieldQ(f)


def conductor(field_: AbelianFieldQ) -> int:
    return field_.conductor


def artin_symbol(field_: AbelianFieldQ, a: int) -> int:
    return field_.artin_symbol(a)


def restriction_map(e: AbelianFieldQ, f: AbelianFieldQ) -> GroupHom:
    """The surjection G(E/Q) -> G(F/Q) on coset labels, for F a subfield of E."""
    if not f.is_subfield_of(e):
        raise ValueError(f"{f!r} is not a subfield of {e!r}")
    mapping = {a: f.artin_symbol(a) for a in e.group.labels}
    hom = GroupHom(e.group, f.group, mapping)
    return hom


@dataclass(frozen=True)
class TowerLevel:
    """Level k of the cyclotomic tower F(mu_{l^k}) over a base field."""

    base: AbelianFieldQ
    l: int
    k: int
    field_k: AbelianFieldQ
    conductor_k: int


def adjoin_roots_of_unity(field_: AbelianFieldQ, l: int, k: int) -> TowerLevel:
    """F(mu_{l^k}), realized at modulus lcm(f, l^k) with unit subgroup
    H-preimage intersected with the kernel of reduction to (Z/l^k)^x."""
    if k < 0:
        raise ValueError(f"tower level must be >= 0, got {k}")
    if k == 0 or l**k <= 2:
        return TowerLevel(field_, l, k, field_, field_.conductor)
    f0 = field_.conductor
    m = lcm(f0, l**k)
    lk = l**k
    gens = tuple(
        a
        for a in unit_group(m)
        if (a % f0 if f0 > 1 else 1) in field_._norm_subgroup and a % lk == 1
    )
    field_k = AbelianFieldQ(m, gens)
    return TowerLevel(field_, l, k, field_k, field_k.conductor)


# ---------------------------------------------------------------------------
# w_n: the largest m such that Gal(F(mu_m)/F) has exponent dividing n.


def _padic_unit_exponent_dividing(p: int, n: int) -> int:
    """Largest j >= 0 with the exponent of (Z/p^j)^x dividing n (closed form)."""
    if p == 2:
        # lambda(2) = 1, lambda(4) = 2, lambda(2^j) = 2^{j-2}
        if n % 2 != 0:
            return 1
        return _v(n, 2) + 2
    if n % (p - 1) != 0:
        return 0
    return _v(n, p) + 1


def _v(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _tower_exponent_divides(field_: AbelianFieldQ, p: int, j: int, n: int) -> bool:
    """Does the exponent of Gal(F(mu_{p^j})/F) divide n?  (p | conductor case.)

    The Galois group is the image inside (Z/p^j)^x of the preimage of H,
    i.e. the units z with z mod p^{min(s,j)} in the p-part projection of H,
    where p^s exactly divides the conductor.  Exponent | n iff z^n = 1 for
    every such z; the scan exits on the first violation.
    """
    if j == 0:
        return True
    f0 = field_.conductor
    s = _v(f0, p)
    pj = p**j
    proj_mod = p ** min(s, j)
    allowed = {h % proj_mod for h in field_._norm_subgroup}
    for z in range(1, pj):
        if z % p == 0 or z % proj_mod not in allowed:
            continue
        if pow(z, n, pj) != 1:
            return False
    return True


def w_n(field_: AbelianFieldQ, n: int) -> int:
    """Largest m with Gal(F(mu_m)/F) of exponent dividing n.

    Computed prime by prime.  For p not dividing the conductor the Galois
    group of F(mu_{p^j})/F is the full (Z/p^j)^x, handled by closed form;
    for p | conductor the image subgroup is enumerated with the
    nondecreasing-exponent early exit.  The prime scan is cut off at the
    conservative bound p <= 2 n phi(f) + 2: an order-p contribution forces
    a cyclic subgroup of (Z/p)^x of order dividing n and index at most
    [F:Q], so p - 1 <= n [F:Q] <= n phi(f).
    """
    if n < 1:
        raise ValueError(f"twist must be >= 1, got {n}")
    f0 = field_.conductor
    phi = len(unit_group(f0))
    bound = 2 * n * phi + 2
    total = 1
    for p in primerange(2, bound + 1):
        if f0 % p != 0:
            total *= p ** _padic_unit_exponent_dividing(p, n)
        else:
            j = 0
            while _tower_exponent_divides(field_, p, j + 1, n):
                j += 1
            total *= p**j
    return total


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def units_group_mod(f: int) -> GaloisGroup:
    """(Z/f)^x as a GaloisGroup with residue labels (the ray class group of
    conductor f over Q, narrow classes)."""
    if f <= 2:
        return trivial_group()
    units = unit_group(f)
    mult = {(a, b): a * b % f for a in units for b in units}
    return GaloisGroup(tuple(units), mult, 1, check=False)
