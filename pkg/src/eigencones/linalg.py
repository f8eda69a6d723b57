"""Tiny exact linear algebra over Fraction.

Only what the root-system and Weyl machinery needs: matrix products,
inverses and linear solves for matrices of rank <= 8.  Everything is
tuples of Fractions; no floats.
"""

from fractions import Fraction

Vec = tuple
Mat = tuple


def vec(entries):
    return tuple(Fraction(x) for x in entries)


def mat(rows):
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c, a):
    c = Fraction(c)
    return tuple(c * x for x in a)


def dot(a, b):
    return sum((x * y for x, y in zip(a, b, strict=True)), Fraction(0))


def mat_vec(m, v):
    return tuple(dot(row, v) for row in m)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity_mat(n):
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_inv(m):
    """Gauss-Jordan inverse; raises ValueError on a singular input."""
    n = len(m)
    aug = [list(row) + list(identity_mat(n)[i]) for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve(m, rhs):
    return mat_vec(mat_inv(m), rhs)


def transpose(m):
    return tuple(zip(*m))
