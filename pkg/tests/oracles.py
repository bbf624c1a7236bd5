"""Independent reference implementations used to cross-check the package.

Forms are handled here as dense alternating functions on basis tuples,
evaluated by brute-force permutation sums.  Nothing in this module calls
the package's wedge, interior, differential or rank code.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial

import numpy as np


def perm_sign(seq):
    seq = list(seq)
    if len(set(seq)) < len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def evaluate(coeffs, idx):
    """f(e_{i1}, ..., e_{ik}) for a form given by increasing-index coefficients."""
    s = perm_sign(idx)
    if s == 0:
        return Fraction(0)
    return s * coeffs.get(tuple(sorted(idx)), Fraction(0))


def dense_wedge(f, k, g, l, n):
    """(f ^ g) via the alternating sum over all permutations of k + l slots."""
    out = {}
    norm = Fraction(1, factorial(k) * factorial(l))
    for idx in combinations(range(1, n + 1), k + l):
        total = Fraction(0)
        for p in permutations(idx):
            a = evaluate(f, p[:k])
            if a == 0:
                continue
            b = evaluate(g, p[k:])
            if b == 0:
                continue
            total += perm_sign([idx.index(x) for x in p]) * a * b
        total *= norm
        if total != 0:
            out[idx] = total
    return out


def dense_interior(v, f, k, n):
    """(v _| f)(e_J) = sum_a v_a f(e_a, e_J)."""
    out = {}
    for idx in combinations(range(1, n + 1), k - 1):
        total = sum((Fraction(v[a - 1]) * evaluate(f, (a,) + idx) for a in range(1, n + 1)), Fraction(0))
        if total != 0:
            out[idx] = total
    return out


def brackets_from_differentials(diffs, n):
    """c[a][b] = [e_a, e_b] as a dict over basis indices, from d e^i(X, Y) = -e^i([X, Y])."""
    c = {}
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            c[(a, b)] = [-evaluate(diffs[i], (a, b)) for i in range(n)]
    return c


def koszul_d(brackets, f, k, n):
    """d f(X_0..X_k) = sum_{i<j} (-1)^{i+j} f([X_i, X_j], X_0, ^i, ^j, ..., X_k).

    Evaluated on basis vectors only, so the derivative terms vanish.
    """
    out = {}
    for idx in combinations(range(1, n + 1), k + 1):
        total = Fraction(0)
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = idx[:i] + idx[i + 1:j] + idx[j + 1:]
                br = brackets[(idx[i], idx[j])]
                for m in range(1, n + 1):
                    if br[m - 1]:
                        total += (-1) ** (i + j) * br[m - 1] * evaluate(f, (m,) + rest)
        if total != 0:
            out[idx] = total
    return out


def _to_float(x):
    try:
        return float(x)
    except TypeError:
        return float(x.a) + float(x.b) * float(x.d) ** 0.5


def numpy_cohomology(diffs, n):
    """(h^1..h^n) from float ranks of Koszul differentials."""
    br = brackets_from_differentials(diffs, n)
    ranks = [0] * (n + 1)
    for k in range(n):
        src = list(combinations(range(1, n + 1), k))
        dst = list(combinations(range(1, n + 1), k + 1))
        mat = np.zeros((len(dst), len(src)))
        for j, idx in enumerate(src):
            df = koszul_d(br, {idx: Fraction(1)}, k, n)
            for i, t in enumerate(dst):
                mat[i, j] = _to_float(df.get(t, 0))
        ranks[k] = int(np.linalg.matrix_rank(mat, tol=1e-9)) if mat.size else 0
    h = []
    for k in range(1, n + 1):
        zk = comb(n, k) - (ranks[k] if k < n else 0)
        h.append(zk - ranks[k - 1])
    return tuple(h)


def k_matrix(rho, n=6):
    """K_rho assembled from the dense wedge, dense interior and kappa below."""
    cols = []
    for i in range(n):
        v = [1 if j == i else 0 for j in range(n)]
        xi = dense_wedge(dense_interior(v, rho, 3, n), 2, rho, 3, n)
        cols.append(kappa_exact(xi, n))
    return [[cols[i][j] for i in range(n)] for j in range(n)]


def kappa_exact(xi, n):
    """Exact kappa: e_i _| e^{1..n} = (-1)^{i-1} e^{1..^i..n}, solved term by term."""
    full = tuple(range(1, n + 1))
    out = []
    for i in range(1, n + 1):
        vol_i = dense_interior([1 if j == i - 1 else 0 for j in range(n)], {full: Fraction(1)}, n, n)
        key, val = next(iter(vol_i.items()))
        out.append(xi.get(key, Fraction(0)) / val)
    return out


def gram_float(omega, rho, n=6):
    """Float Gram matrix g_ij = omega(J e_i, e_j) with J = K / (2 phi(omega))."""
    k = np.array([[_to_float(x) for x in row] for row in k_matrix(rho, n)])
    w3 = dense_wedge(dense_wedge(omega, 2, omega, 2, n), 4, omega, 2, n)
    phi = _to_float(w3.get(tuple(range(1, n + 1)), 0)) / 6
    j = k / (2 * phi)
    w = np.array([[_to_float(evaluate(omega, (a, b))) if a != b else 0.0
                   for b in range(1, n + 1)] for a in range(1, n + 1)])
    return j.T @ w
