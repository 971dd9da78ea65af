from fractions import Fraction
from math import gcd

import pytest
from sympy import primerange

from stickelberger.exact import bernoulli_number, unit_group
from stickelberger.zeta import (
    PartialZetaTable,
    ZetaTableError,
    build_table_q,
    dump_zeta_table,
    load_zeta_table,
    verify_distribution,
    zeta_q,
)


def riemann_zeta_neg(n: int) -> Fraction:
    """zeta(-n) = -B_{n+1}/(n+1), the independent Dirichlet-series oracle."""
    return -bernoulli_number(n + 1) / (n + 1)


class TestZetaQ:
    @pytest.mark.parametrize(
        "f,a,n,expected",
        [
            (4, 1, 1, Fraction(1, 24)),
            (4, 3, 1, Fraction(1, 24)),
            (5, 1, 0, Fraction(3, 10)),
            (12, 1, 1, Fraction(-13, 24)),
        ],
    )
    def test_worked_values(self, f, a, n, expected):
        assert zeta_q(f, a, n) == expected

    def test_class_sum_oracle(self):
        # sum over classes equals zeta(-n) with Euler factors at p | f removed
        for f in range(2, 121):
            primes = [p for p in primerange(2, f + 1) if f % p == 0]
            for n in range(0, 7):
                total = sum(zeta_q(f, a, n) for a in unit_group(f))
                expected = riemann_zeta_neg(n)
                for p in primes:
                    expected *= 1 - p**n
                assert total == expected, (f, n)

    def test_reflection_symmetry(self):
        for f in range(3, 61):
            for a in unit_group(f):
                if a == f - a:
                    continue
                for n in range(1, 5):
                    assert zeta_q(f, a, n) == (-1) ** (n + 1) * zeta_q(f, f - a, n)

    def test_not_coprime_rejected(self):
        with pytest.raises(ValueError):
            zeta_q(4, 2, 1)


class TestBuildTable:
    def test_shape(self):
        t = build_table_q(4, 1)
        assert set(t.base_group.labels) == {1, 3}
        assert t.twists == (0, 1)

    def test_f12_row(self):
        t = build_table_q(12, 1)
        values = [t.value(a, 1) for a in (1, 5, 7, 11)]
        assert values == [
            Fraction(-13, 24),
            Fraction(11, 24),
            Fraction(11, 24),
            Fraction(-13, 24),
        ]

    def test_class_sum_at_f4(self):
        t = build_table_q(4, 1)
        assert sum(t.value(a, 1) for a in t.base_group.labels) == Fraction(1, 12)

    def test_norms_and_w(self):
        t = build_table_q(5, 2)
        assert t.norm == {1: 1, 2: 2, 3: 3, 4: 4}
        assert t.w(1) == 10


class TestDistribution:
    def test_worked_example(self):
        assert verify_distribution(4, 3, 1, 1)

    def test_sweep(self):
        for f in [3, 4, 5, 8, 12]:
            for l in [3, 5, 7]:
                if f % l == 0:
                    continue
                for n in range(0, 4):
                    for a in unit_group(f):
                        assert verify_distribution(f, l, n, a), (f, l, n, a)

    def test_corrupted_table_detected(self):
        # negative control: perturbing one side breaks the exact identity
        f, l, n, a = 4, 3, 1, 1
        lf = l * f
        l_inv_a = pow(l, -1, f) * a % f
        lhs = zeta_q(f, a, n) - l**n * zeta_q(f, l_inv_a, n)
        rhs = sum(
            zeta_q(lf, ap, n) + Fraction(1, 7)  # corruption
            for ap in unit_group(lf)
            if ap % f == a % f
        )
        assert lhs != rhs


class TestDocumentFormat:
    def test_round_trip(self):
        t = build_table_q(4, 2)
        doc = dump_zeta_table(t)
        t2 = load_zeta_table(doc)
        assert t2 == t

    def test_round_trip_with_primes(self):
        t = build_table_q(5, 1)
        t.prime_classes["l7"] = (2, 7)
        doc = dump_zeta_table(t)
        assert load_zeta_table(doc) == t

    def test_missing_entry_is_completeness_error(self):
        t = build_table_q(4, 1)
        doc = dump_zeta_table(t)
        doc = "\n".join(
            line for line in doc.splitlines() if not line.startswith("entry | 3 | 1")
        )
        with pytest.raises(ZetaTableError, match="missing zeta entry"):
            load_zeta_table(doc)

    def test_nonassociative_table_is_axiom_error(self):
        doc = "\n".join(
            [
                "field | bogus",
                "order | 3",
                "classes | e a b",
                "identity | e",
                "e*e=e", "e*a=a", "e*b=b",
                "a*e=a", "a*a=b", "a*b=e",
                "b*e=b", "b*a=e", "b*b=b",  # b*b should be a
                "inv | e | e", "inv | a | b", "inv | b | a",
                "norm | e | 1", "norm | a | 2", "norm | b | 3",
                "entry | e | 0 | 1/2",
                "entry | a | 0 | 1/3",
                "entry | b | 0 | 1/6",
            ]
        )
        with pytest.raises(ZetaTableError, match="axiom"):
            load_zeta_table(doc)

    def test_duplicate_key_rejected(self):
        t = build_table_q(4, 1)
        doc = dump_zeta_table(t) + "norm | 1 | 1\n"
        with pytest.raises(ZetaTableError, match="duplicate"):
            load_zeta_table(doc)

    def test_opaque_string_labels_survive(self):
        doc = "\n".join(
            [
                "field | fake real quadratic data",
                "order | 2",
                "classes | c1 c2",
                "identity | c1",
                "c1*c1=c1", "c1*c2=c2", "c2*c1=c2", "c2*c2=c1",
                "inv | c1 | c1", "inv | c2 | c2",
                "norm | c1 | 1", "norm | c2 | 3",
                "entry | c1 | 1 | -1/12",
                "entry | c2 | 1 | 5/12",
                "w | 1 | 2",
                "prime | p3 | c2 | 3",
            ]
        )
        t = load_zeta_table(doc)
        assert t.base_group.labels == ("c1", "c2")
        assert t.value("c2", 1) == Fraction(5, 12)
        assert t.prime_classes["p3"] == ("c2", 3)
