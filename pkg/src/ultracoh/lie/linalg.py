"""Exact linear algebra over Q.

Matrices are lists of rows of :class:`fractions.Fraction` (ints are fine).
Ranks use fraction-free Bareiss elimination on integer-scaled rows; bases
of kernels and solutions use reduced row echelon form over Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction


def zeros(m, n):
    return [[Fraction(0)] * n for _ in range(m)]


def eye(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    nb = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * nb
        for k, x in enumerate(row):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a, c):
    return [[c * x for x in row] for row in a]


def transpose(a, ncols=0):
    if not a:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*a)]


def is_zero(a):
    return all(not x for row in a for x in row)


def _integer_rows(a):
    out = []
    for row in a:
        den = 1
        for x in row:
            x = Fraction(x)
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def rank(a):
    """Rank by fraction-free (Bareiss) elimination."""
    if not a or not a[0]:
        return 0
    m = _integer_rows(a)
    nrows, ncols = len(m), len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[c]
            m[i] = [(pr[c] * mi[k] - f * pr[k]) // prev for k in range(ncols)]
        prev = pr[c]
        r += 1
        if r == nrows:
            break
    return r


def rref(a):
    """Reduced row echelon form and pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(a, ncols=None):
    """Basis of {x : a x = 0} as a list of vectors."""
    if ncols is None:
        ncols = len(a[0]) if a else 0
    if not a:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    r, piv = rref(a)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for row, pc in zip(r, piv):
            x[pc] = -row[fcol]
        basis.append(x)
    return basis


def column_space(a):
    """A basis (as vectors) of the span of the columns of a."""
    cols = transpose(a)
    return row_basis(cols)


def row_basis(vectors):
    if not vectors:
        return []
    r, _ = rref(vectors)
    return r


def solve(basis, v):
    """Coordinates c with sum c_k basis[k] = v, or None if v is not in the span."""
    n = len(v)
    k = len(basis)
    if k == 0:
        return [] if all(not x for x in v) else None
    aug = [[basis[j][i] for j in range(k)] + [v[i]] for i in range(n)]
    r, piv = rref(aug)
    if k in piv:
        return None
    sol = [Fraction(0)] * k
    for row, pc in zip(r, piv):
        sol[pc] = row[k]
    return sol


def complement_in(sub_basis, ambient_basis):
    """Vectors from ``ambient_basis`` completing ``sub_basis`` to a basis of their span."""
    chosen = list(sub_basis)
    out = []
    cur = rank(chosen) if chosen else 0
    for v in ambient_basis:
        trial = chosen + [v]
        rk = rank(trial)
        if rk > cur:
            chosen.append(v)
            out.append(v)
            cur = rk
    return out
