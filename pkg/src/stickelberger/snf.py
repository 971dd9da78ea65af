"""Integer Smith normal form with transformation matrices, and quotient
presentations of finite abelian groups.

Matrices are lists of row lists of Python ints; everything is exact.
smith_normal_form returns (d, u, v) with u*a*v = d, u and v unimodular and
the diagonal entries nonnegative with d[i] | d[i+1].
"""

from __future__ import annotations


def mat_identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for t in range(inner):
            c = ai[t]
            if c:
                bt = b[t]
                oi = out[i]
                for j in range(cols):
                    oi[j] += c * bt[j]
    return out


def mat_vec(a: list[list[int]], x: tuple[int, ...] | list[int]) -> list[int]:
    return [sum(c * xi for c, xi in zip(row, x)) for row in a]


def smith_normal_form(
    a: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (d, u, v), u a v = d."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    u = mat_identity(m)
    v = mat_identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find a pivot
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if d[i][j] != 0:
                    if pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        # clear row and column t
        while True:
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # ensure the pivot divides every remaining entry
        stable = True
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    add_row(i, t, 1)
                    stable = False
                    break
            if not stable:
                break
        if stable:
            if d[t][t] < 0:
                negate_row(t)
            t += 1
    return d, u, v


def mat_inverse_unimodular(u: list[list[int]]) -> list[list[int]]:
    """Inverse of a unimodular integer matrix, by integer Gauss-Jordan."""
    n = len(u)
    a = [row[:] + ident_row for row, ident_row in zip(u, mat_identity(n))]
    for col in range(n):
        piv = next(i for i in range(col, n) if a[i][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        # make pivot +-1 eventually; unimodular => gcd of column is 1
        for i in range(n):
            if i != col and a[i][col] != 0:
                # integer elimination via extended gcd steps
                while a[i][col] != 0:
                    q = a[col][col] // a[i][col]
                    a[col] = [x - q * y for x, y in zip(a[col], a[i])]
                    a[col], a[i] = a[i], a[col]
        if a[col][col] < 0:
            a[col] = [-x for x in a[col]]
    for i in range(n):
        assert a[i][i] == 1, "matrix is not unimodular"
    return [row[n:] for row in a]


def quotient_presentation(
    ambient_orders: list[int], relations: list[list[int]]
) -> tuple[tuple[int, ...], list[list[int]], list[list[int]]]:
    """Present (+)_i Z/d_i modulo the subgroup generated by the relation
    vectors.

    Returns (orders, proj, lift): the invariant factors > 1 of the quotient,
    a projection matrix sending ambient coordinates to quotient coordinates
    (entries taken mod the new orders), and an integer lift matrix with
    proj o lift = identity on the quotient.
    """
    n = len(ambient_orders)
    cols: list[list[int]] = [list(r) for r in relations]
    for i, di in enumerate(ambient_orders):
        e = [0] * n
        e[i] = di
        cols.append(e)
    # matrix with relation generators as columns
    a = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    d, u, _v = smith_normal_form(a)
    diag = [d[i][i] if i < len(d[0]) else 0 for i in range(n)]
    u_inv = mat_inverse_unimodular(u)
    keep = [i for i in range(n) if diag[i] != 1]
    orders = tuple(diag[i] for i in keep)
    assert all(o > 0 for o in orders), "quotient is not finite"
    proj = [[u[i][j] % orders[t] for j in range(n)] for t, i in enumerate(keep)]
    lift = [[u_inv[i][keep[t]] for t in range(len(keep))] for i in range(n)]
    return orders, proj, lift
