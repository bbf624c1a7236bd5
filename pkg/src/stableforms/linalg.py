"""Exact dense linear algebra over Q or Q(sqrt d).

Matrices are lists of rows.  Row reduction pivots on the first non-zero
entry scanning columns left to right, so bases are reproducible.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .scalars import is_zero, sign_of

Matrix = List[List[object]]


class NotSymmetric(ValueError):
    pass


class Singular(ArithmeticError):
    pass


def _f(x):
    return Fraction(x) if isinstance(x, int) else x


def rref(rows: Sequence[Sequence[object]], ncols: int | None = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[_f(x) for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if not is_zero(m[i][c])), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[object]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[object]], ncols: int) -> Matrix:
    """Basis of {x : A x = 0}, one vector per free column, in column order."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, pc in zip(red, pivots):
            if not is_zero(row[free]):
                v[pc] = -row[free]
        basis.append(v)
    return basis


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[object]], b: Sequence[Sequence[object]]) -> Matrix:
    bt = list(zip(*b))
    out = []
    for row in a:
        out.append([_dot(row, col) for col in bt])
    return out


def _dot(u, v):
    s = Fraction(0)
    for x, y in zip(u, v):
        if not is_zero(x) and not is_zero(y):
            s = s + x * y
    return s


def matvec(a, v):
    return [_dot(row, v) for row in a]


def trace(a) -> object:
    s = Fraction(0)
    for i in range(len(a)):
        s = s + a[i][i]
    return s


def transpose(a) -> Matrix:
    return [list(r) for r in zip(*a)]


def scale(a, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def inverse(a) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, pivots = rref(aug, n)
    if pivots != list(range(n)):
        raise Singular("matrix is singular")
    return [row[n:] for row in red]


def is_symmetric(a) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def determinant(a) -> object:
    """Exact determinant by fraction-field elimination."""
    m = [[_f(x) for x in r] for r in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if not is_zero(m[i][c]):
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


def leading_minors(a) -> List[object]:
    return [determinant([row[:k] for row in a[:k]]) for k in range(1, len(a) + 1)]


def inertia(a) -> Tuple[int, int, int]:
    """(positive, negative, zero) counts by symmetric congruence reduction.

    Sylvester's law of inertia makes the count basis independent.  A zero
    pivot with a non-zero off-diagonal entry is cleared by adding the
    partner row/column first.
    """
    if not is_symmetric(a):
        raise NotSymmetric("Gram matrix is not symmetric")
    m = [[_f(x) for x in r] for r in a]
    n = len(m)
    pos = neg = 0
    active = list(range(n))
    while active:
        k = next((i for i in active if not is_zero(m[i][i])), None)
        if k is None:
            pair = next(((i, j) for i in active for j in active if i < j and not is_zero(m[i][j])), None)
            if pair is None:
                break
            i, j = pair
            # e_i -> e_i + e_j gives diagonal 2 m_ij != 0
            for t in range(n):
                m[i][t] = m[i][t] + m[j][t]
            for t in range(n):
                m[t][i] = m[t][i] + m[t][j]
            k = i
        piv = m[k][k]
        if sign_of(piv) > 0:
            pos += 1
        else:
            neg += 1
        active.remove(k)
        for i in active:
            if not is_zero(m[i][k]):
                f = m[i][k] / piv
                for t in range(n):
                    m[i][t] = m[i][t] - f * m[k][t]
                for t in range(n):
                    m[t][i] = m[t][i] - f * m[t][k]
    return pos, neg, n - pos - neg
