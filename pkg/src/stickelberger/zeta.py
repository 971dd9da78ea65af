"""Partial zeta values at negative integers, exactly.

For the base field Q the ray classes mod f are the units a of Z/f (narrow
classes, totally positive representatives) and

    zeta_f(a, -n) = -f^n B_{n+1}(a/f) / (n+1),

the Hurwitz-zeta closed form.  For a general totally real base field no
evaluation is attempted: tables of exact values are ingested from a
structured text document together with the ray-class group itself, and all
downstream operations consume only the table.

The continuation values are *defined* by the Bernoulli closed form; the
distribution relation

    zeta_f(a, s) - Nl^{-s} zeta_f(l^{-1} a, s) = sum_{a' = a (f)} zeta_{lf}(a', s)

at s = -n serves as the independent internal consistency check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from stickelberger.exact import bernoulli_polynomial, unit_group
from stickelberger.galois import GaloisGroup, Label, units_group_mod, w_n
from stickelberger.galois import cyclotomic_field


def zeta_q(f: int, a: int, n: int) -> Fraction:
    """zeta_f(a, -n) over Q: the partial zeta value of the class a mod f,
    meromorphically continued to s = -n.

    f = 1 is the degenerate full Riemann zeta (single class, no Euler factors
    removed), supported so that towers over Q itself have a level 0.
    """
    if f < 1:
        raise ValueError(f"modulus must be >= 1, got {f}")
    if n < 0:
        raise ValueError(f"twist must be >= 0, got {n}")
    if f == 1:
        return -bernoulli_polynomial(n + 1, 1) / (n + 1)
    a %= f
    if gcd(a, f) != 1:
        raise ValueError(f"class {a} is not coprime to {f}")
    return -(f**n) * bernoulli_polynomial(n + 1, Fraction(a, f)) / (n + 1)


class ZetaTableError(ValueError):
    """Raised on malformed, incomplete, or axiom-violating table documents."""


@dataclass
class PartialZetaTable:
    """Exact partial zeta values over a labeled ray-class group.

    entries maps (class label, twist n) -> exact rational; norm maps every
    class label to the norm of a chosen representative ideal (needed for
    Euler factors); w_values holds w_n of the ray class field, per twist;
    prime_classes names auxiliary primes as (class label, norm) pairs.
    """

    base_group: GaloisGroup
    modulus_label: str
    entries: dict[tuple[Label, int], Fraction]
    norm: dict[Label, int]
    w_values: dict[int, int] = field(default_factory=dict)
    prime_classes: dict[str, tuple[Label, int]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.twists = tuple(sorted({n for _, n in self.entries}))
        self._check_complete()

    def _check_complete(self) -> None:
        for lbl in self.base_group.labels:
            if lbl not in self.norm:
                raise ZetaTableError(f"missing norm for class {lbl!r}")
            if self.norm[lbl] < 1:
                raise ZetaTableError(f"norm of class {lbl!r} must be positive")
            for n in self.twists:
                if (lbl, n) not in self.entries:
                    raise ZetaTableError(
                        f"missing zeta entry for class {lbl!r} at twist {n}"
                    )

    def value(self, lbl: Label, n: int) -> Fraction:
        try:
            return self.entries[(lbl, n)]
        except KeyError:
            raise ZetaTableError(
                f"no zeta entry for class {lbl!r} at twist {n}"
            ) from None

    def w(self, n: int) -> int:
        try:
            return self.w_values[n]
        except KeyError:
            raise ZetaTableError(f"no w value supplied for twist {n}") from None


def build_table_q(f: int, n_max: int) -> PartialZetaTable:
    """Closed-form table for the base field Q at modulus f, twists 0..n_max.

    Norms are the minimal positive representatives; w values are those of
    Q(mu_f) for twists 1..max(n_max, 1).
    """
    if f < 1:
        raise ValueError(f"modulus must be >= 1, got {f}")
    group = units_group_mod(f) if f > 1 else units_group_mod(1)
    entries = {
        (a, n): zeta_q(f, a, n) for a in group.labels for n in range(n_max + 1)
    }
    field_f = cyclotomic_field(f)
    w_values = {n: w_n(field_f, n) for n in range(1, max(n_max, 1) + 1)}
    norm = {a: a for a in group.labels}
    return PartialZetaTable(
        base_group=group,
        modulus_label=str(f),
        entries=entries,
        norm=norm,
        w_values=w_values,
    )


def verify_distribution(f: int, l_prime: int, n: int, a: int) -> bool:
    """Check zeta_f(a,-n) - Nl^n zeta_f(l^{-1}a,-n) = sum_{a'=a (f)} zeta_{lf}(a',-n)
    exactly, for a prime l_prime not dividing f (base field Q)."""
    if f % l_prime == 0:
        raise ValueError(f"{l_prime} must not divide {f}")
    lf = l_prime * f
    l_inv_a = pow(l_prime, -1, f) * a % f
    lhs = zeta_q(f, a, n) - l_prime**n * zeta_q(f, l_inv_a, n)
    rhs = sum(
        zeta_q(lf, ap, n)
        for ap in unit_group(lf)
        if ap % f == a % f
    )
    return lhs == rhs


# ---------------------------------------------------------------------------
# Structured text format.
#
# Line-oriented, UTF-8, '#' starts a comment.  Header lines:
#
#   field | <free text describing the base field>
#   order | <group order>
#   classes | <label> <label> ...
#   identity | <label>
#
# Body lines:
#
#   <label>*<label>=<label>       multiplication triples (all pairs required)
#   inv | <label> | <label>
#   norm | <label> | <positive integer>
#   entry | <label> | <n> | <p/q or p>
#   w | <n> | <integer>
#   prime | <name> | <label> | <norm>        (optional auxiliary primes)
#
# All integers base 10; duplicate keys are errors.  Labels match [A-Za-z0-9_.+-]+.


_LABEL_OK = set(
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.+-"
)


def _check_label(tok: str, lineno: int) -> str:
    if not tok or not set(tok) <= _LABEL_OK:
        raise ZetaTableError(f"line {lineno}: bad label {tok!r}")
    return tok


def _parse_rational(tok: str, lineno: int) -> Fraction:
    try:
        if "/" in tok:
            p, q = tok.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ZetaTableError(f"line {lineno}: bad rational {tok!r}") from None


def load_zeta_table(document: str) -> PartialZetaTable:
    """Parse and validate a zeta-table document.

    Validation covers: well-formedness of every line, duplicate keys,
    group axioms of the ingested multiplication table (associativity,
    commutativity, identity, inverses), agreement of the inversion pairs
    with the table, and completeness of entries and norms.
    """
    header: dict[str, str] = {}
    mult: dict[tuple[str, str], str] = {}
    inv: dict[str, str] = {}
    norm: dict[str, int] = {}
    entries: dict[tuple[Label, int], Fraction] = {}
    w_values: dict[int, int] = {}
    prime_classes: dict[str, tuple[Label, int]] = {}

    for lineno, raw in enumerate(document.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "|" not in line and "*" in line and "=" in line:
            left, rhs = line.split("=", 1)
            try:
                a, b = left.split("*")
            except ValueError:
                raise ZetaTableError(f"line {lineno}: bad product {line!r}") from None
            key = (_check_label(a.strip(), lineno), _check_label(b.strip(), lineno))
            if key in mult:
                raise ZetaTableError(f"line {lineno}: duplicate product {key}")
            mult[key] = _check_label(rhs.strip(), lineno)
            continue
        parts = [p.strip() for p in line.split("|")]
        kind = parts[0]
        if kind in ("field", "order", "classes", "identity"):
            if len(parts) != 2:
                raise ZetaTableError(f"line {lineno}: bad header {line!r}")
            if kind in header:
                raise ZetaTableError(f"line {lineno}: duplicate header {kind!r}")
            header[kind] = parts[1]
        elif kind == "inv":
            if len(parts) != 3:
                raise ZetaTableError(f"line {lineno}: bad inv line {line!r}")
            a = _check_label(parts[1], lineno)
            if a in inv:
                raise ZetaTableError(f"line {lineno}: duplicate inverse for {a!r}")
            inv[a] = _check_label(parts[2], lineno)
        elif kind == "norm":
            if len(parts) != 3:
                raise ZetaTableError(f"line {lineno}: bad norm line {line!r}")
            a = _check_label(parts[1], lineno)
            if a in norm:
                raise ZetaTableError(f"line {lineno}: duplicate norm for {a!r}")
            try:
                norm[a] = int(parts[2])
            except ValueError:
                raise ZetaTableError(f"line {lineno}: bad norm {parts[2]!r}") from None
        elif kind == "entry":
            if len(parts) != 4:
                raise ZetaTableError(f"line {lineno}: bad entry line {line!r}")
            a = _check_label(parts[1], lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ZetaTableError(f"line {lineno}: bad twist {parts[2]!r}") from None
            if (a, n) in entries:
                raise ZetaTableError(f"line {lineno}: duplicate entry {(a, n)}")
            entries[(a, n)] = _parse_rational(parts[3], lineno)
        elif kind == "w":
            if len(parts) != 3:
                raise ZetaTableError(f"line {lineno}: bad w line {line!r}")
            try:
                n, val = int(parts[1]), int(parts[2])
            except ValueError:
                raise ZetaTableError(f"line {lineno}: bad w line {line!r}") from None
            if n in w_values:
                raise ZetaTableError(f"line {lineno}: duplicate w for twist {n}")
            w_values[n] = val
        elif kind == "prime":
            if len(parts) != 4:
                raise ZetaTableError(f"line {lineno}: bad prime line {line!r}")
            name = _check_label(parts[1], lineno)
            if name in prime_classes:
                raise ZetaTableError(f"line {lineno}: duplicate prime {name!r}")
            try:
                prime_classes[name] = (_check_label(parts[2], lineno), int(parts[3]))
            except ValueError:
                raise ZetaTableError(f"line {lineno}: bad prime norm") from None
        else:
            raise ZetaTableError(f"line {lineno}: unrecognized line {line!r}")

    for key in ("order", "classes", "identity"):
        if key not in header:
            raise ZetaTableError(f"missing header line {key!r}")
    labels = tuple(header["classes"].split())
    try:
        declared_order = int(header["order"])
    except ValueError:
        raise ZetaTableError(f"bad order {header['order']!r}") from None
    if len(labels) != declared_order:
        raise ZetaTableError(
            f"declared order {declared_order} but {len(labels)} class labels"
        )
    identity = header["identity"]
    if identity not in labels:
        raise ZetaTableError(f"identity {identity!r} is not a class label")

    label_set = set(labels)
    for (a, b), c in mult.items():
        if not {a, b, c} <= label_set:
            raise ZetaTableError(f"product {a!r}*{b!r}={c!r} uses unknown labels")
    for a, b in inv.items():
        if not {a, b} <= label_set:
            raise ZetaTableError(f"inversion pair {a!r} -> {b!r} uses unknown labels")
    for a in norm:
        if a not in label_set:
            raise ZetaTableError(f"norm names unknown class {a!r}")
    for a, n in entries:
        if a not in label_set:
            raise ZetaTableError(f"entry names unknown class {a!r}")
    for name, (lbl, nrm) in prime_classes.items():
        if lbl not in label_set:
            raise ZetaTableError(f"prime {name!r} names unknown class {lbl!r}")
        if nrm < 2:
            raise ZetaTableError(f"prime {name!r} has norm {nrm} < 2")

    if all(lbl.isdigit() for lbl in labels):
        # canonicalize numeric labels to ints so K=Q tables round-trip
        relabel = {lbl: int(lbl) for lbl in labels}
        labels = tuple(relabel[lbl] for lbl in labels)
        identity = relabel[identity]
        mult = {(relabel[a], relabel[b]): relabel[c] for (a, b), c in mult.items()}
        inv = {relabel[a]: relabel[b] for a, b in inv.items()}
        norm = {relabel[a]: v for a, v in norm.items()}
        entries = {(relabel[a], n): v for (a, n), v in entries.items()}
        prime_classes = {
            name: (relabel[lbl], nrm) for name, (lbl, nrm) in prime_classes.items()
        }

    try:
        group = GaloisGroup(labels, mult, identity, check=True)
    except ValueError as exc:
        raise ZetaTableError(f"group axiom violation: {exc}") from None
    for a, b in inv.items():
        if group.inv(a) != b:
            raise ZetaTableError(f"inversion pair {a!r} -> {b!r} contradicts table")
    for a in labels:
        if a not in inv:
            raise ZetaTableError(f"missing inversion pair for {a!r}")

    return PartialZetaTable(
        base_group=group,
        modulus_label=header.get("field", ""),
        entries=entries,
        norm=norm,
        w_values=w_values,
        prime_classes=prime_classes,
    )


def dump_zeta_table(table: PartialZetaTable) -> str:
    """Serialize a table to the document format (canonical line order)."""
    g = table.base_group
    lines = [
        f"field | {table.modulus_label}",
        f"order | {g.order}",
        "classes | " + " ".join(str(a) for a in g.labels),
        f"identity | {g.identity}",
    ]
    for a in g.labels:
        for b in g.labels:
            lines.append(f"{a}*{b}={g.mult(a, b)}")
    for a in g.labels:
        lines.append(f"inv | {a} | {g.inv(a)}")
    for a in g.labels:
        lines.append(f"norm | {a} | {table.norm[a]}")
    for (a, n), val in sorted(
        table.entries.items(), key=lambda kv: (kv[0][1], str(kv[0][0]))
    ):
        lines.append(f"entry | {a} | {n} | {val}")
    for n in sorted(table.w_values):
        lines.append(f"w | {n} | {table.w_values[n]}")
    for name in sorted(table.prime_classes):
        lbl, nrm = table.prime_classes[name]
        lines.append(f"prime | {name} | {lbl} | {nrm}")
    return "\n".join(lines) + "\n"
