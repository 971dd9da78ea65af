import random

from stickelberger.snf import (
    mat_identity,
    mat_inverse_unimodular,
    mat_mul,
    quotient_presentation,
    smith_normal_form,
)


def is_unimodular(u):
    det = _det(u)
    return det in (1, -1)


def _det(a):
    n = len(a)
    a = [row[:] for row in a]
    det = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        for i in range(col + 1, n):
            while a[i][col] != 0:
                q = a[col][col] // a[i][col]
                a[col] = [x - q * y for x, y in zip(a[col], a[i])]
                a[col], a[i] = a[i], a[col]
                det = -det
        det *= a[col][col]
    return det // abs(det) * abs(det) if det else 0


class TestSmithNormalForm:
    def test_small_example(self):
        a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
        d, u, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == d
        diag = [d[i][i] for i in range(3)]
        assert diag == [2, 2, 156]  # invariant chain for this classic example
        assert is_unimodular(u) and is_unimodular(v)

    def test_random_matrices(self):
        rng = random.Random(7)
        for _ in range(60):
            m, n = rng.randint(1, 4), rng.randint(1, 4)
            a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
            d, u, v = smith_normal_form(a)
            assert mat_mul(mat_mul(u, a), v) == d
            diag = [d[i][i] for i in range(min(m, n))]
            for x, y in zip(diag, diag[1:]):
                if y != 0:
                    assert x != 0 and y % x == 0
                else:
                    assert True
            for i in range(m):
                for j in range(n):
                    if i != j:
                        assert d[i][j] == 0

    def test_unimodular_inverse(self):
        rng = random.Random(3)
        for _ in range(30):
            n = rng.randint(1, 4)
            a = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
            _d, u, v = smith_normal_form(a)
            for w in (u, v):
                winv = mat_inverse_unimodular(w)
                assert mat_mul(w, winv) == mat_identity(n)


class TestQuotientPresentation:
    def test_cokernel_of_multiplication_by_3_on_z9(self):
        orders, proj, lift = quotient_presentation([9], [[3]])
        assert orders == (3,)
        assert proj[0][0] % 3 in (1, 2)

    def test_trivial_quotient(self):
        orders, _, _ = quotient_presentation([5], [[1]])
        assert orders == ()

    def test_projection_lift_roundtrip(self):
        rng = random.Random(11)
        for _ in range(40):
            n = rng.randint(1, 3)
            ambient = [rng.choice([3, 9, 27]) for _ in range(n)]
            rels = [
                [rng.randint(0, 26) for _ in range(n)]
                for _ in range(rng.randint(0, 3))
            ]
            orders, proj, lift = quotient_presentation(ambient, rels)
            k = len(orders)
            if k == 0:
                continue
            from stickelberger.snf import mat_vec

            # proj o lift = identity mod the new orders
            comp = mat_mul(proj, lift)
            for i in range(k):
                for j in range(k):
                    expected = 1 if i == j else 0
                    assert (comp[i][j] - expected) % orders[i] == 0
            # relations die in the quotient
            for r in rels:
                img = mat_vec(proj, r)
                assert all(x % o == 0 for x, o in zip(img, orders))
