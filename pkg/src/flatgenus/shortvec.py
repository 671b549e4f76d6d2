"""Lattice reduction and short-vector enumeration for exact rational Gram forms.

`lll_reduce` and `enumerate_short_vectors` work entirely in exact rational
arithmetic; the latter is the reference oracle for the float-pruned kernels
in `flatgenus.kernels`.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .intmat import IntMatrix

HALF = Fraction(1, 2)


def _as_fraction_rows(gram):
    if isinstance(gram, IntMatrix):
        rows = gram.to_lists()
    else:
        rows = [list(r) for r in gram]
    return [[Fraction(x) for x in row] for row in rows]


def _check_gram(gram_rows):
    n = len(gram_rows)
    if any(len(r) != n for r in gram_rows):
        raise ValueError("Gram matrix must be square")
    for i in range(n):
        for j in range(i):
            if gram_rows[i][j] != gram_rows[j][i]:
                raise ValueError("Gram matrix must be symmetric")


def gram_cholesky(gram):
    """Exact LDL decomposition: Q(x) = sum_i d[i]*(x[i] + sum_{j>i} c[i][j]*x[j])^2.

    Raises ValueError unless the form is positive definite.
    """
    a = _as_fraction_rows(gram)
    _check_gram(a)
    n = len(a)
    c = [[Fraction(0)] * n for _ in range(n)]
    d = [Fraction(0)] * n
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            c[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            for s in range(r, n):
                a[r][s] -= a[i][r] * a[i][s] / d[i]
                a[s][r] = a[r][s]
    return d, c


def _form_value(gram_rows, u, v):
    return sum(
        ui * sum(g * vj for g, vj in zip(grow, v))
        for ui, grow in zip(u, gram_rows)
    )


def lll_reduce(basis: IntMatrix, gram, delta=Fraction(3, 4)) -> IntMatrix:
    """LLL-reduce integer basis rows with respect to an exact PD Gram form.

    Classic exact-rational LLL (Lovasz parameter `delta`), deterministic.
    Raises ValueError on linearly dependent input rows.
    """
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise ValueError("delta must lie in (1/4, 1)")
    g = _as_fraction_rows(gram)
    _check_gram(g)
    b = basis.to_lists()
    n = len(b)

    # pairwise inner products, kept in sync with the row operations
    gb = [[_form_value(g, b[i], b[j]) for j in range(n)] for i in range(n)]

    # Gram-Schmidt data: bnorm[i] = |b*_i|^2, mu[i][j] for j < i
    mu = [[Fraction(0)] * n for _ in range(n)]
    bnorm = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (
                gb[i][j] - sum(mu[j][t] * mu[i][t] * bnorm[t] for t in range(j))
            ) / bnorm[j]
        bnorm[i] = gb[i][i] - sum(mu[i][t] ** 2 * bnorm[t] for t in range(i))
        if bnorm[i] <= 0:
            raise ValueError("basis rows are linearly dependent")

    def size_reduce(k, l):
        if abs(mu[k][l]) <= HALF:
            return
        q = round(mu[k][l])
        b[k] = [x - q * y for x, y in zip(b[k], b[l])]
        gkk = gb[k][k] - 2 * q * gb[k][l] + q * q * gb[l][l]
        for j in range(n):
            if j != k:
                gb[k][j] -= q * gb[l][j]
                gb[j][k] = gb[k][j]
        gb[k][k] = gkk
        for t in range(l):
            mu[k][t] -= q * mu[l][t]
        mu[k][l] -= q

    k = 1
    while k < n:
        size_reduce(k, k - 1)
        if bnorm[k] >= (delta - mu[k][k - 1] ** 2) * bnorm[k - 1]:
            for l in range(k - 2, -1, -1):
                size_reduce(k, l)
            k += 1
        else:
            # swap b_{k-1}, b_k and update the GSO data in place
            m = mu[k][k - 1]
            big = bnorm[k] + m * m * bnorm[k - 1]
            mu[k][k - 1] = m * bnorm[k - 1] / big
            bnorm[k] = bnorm[k - 1] * bnorm[k] / big
            bnorm[k - 1] = big
            b[k - 1], b[k] = b[k], b[k - 1]
            gb[k - 1], gb[k] = gb[k], gb[k - 1]
            for j in range(n):
                gb[j][k - 1], gb[j][k] = gb[j][k], gb[j][k - 1]
            for j in range(k - 1):
                mu[k - 1][j], mu[k][j] = mu[k][j], mu[k - 1][j]
            for i in range(k + 1, n):
                t = mu[i][k]
                mu[i][k] = mu[i][k - 1] - m * t
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]
            k = max(k - 1, 1)
    return IntMatrix(b)


def _canonical_sign(vec):
    for x in vec:
        if x:
            return tuple(vec) if x > 0 else tuple(-y for y in vec)
    return tuple(vec)


def enumerate_short_vectors(basis: IntMatrix, gram, bound):
    """All nonzero lattice vectors v (up to sign) with Q(v) <= bound, sorted.

    Vectors are returned in ambient coordinates (integer combinations of the
    basis rows); exact rational Fincke-Pohst recursion, exhaustive.
    """
    bound = Fraction(bound)
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    g = _as_fraction_rows(gram)
    _check_gram(g)
    n = basis.rows
    bg = [[_form_value(g, basis.row(i), basis.row(j)) for j in range(n)] for i in range(n)]
    d, c = gram_cholesky(bg)

    found = set()
    x = [0] * n

    def descend(level, remaining):
        if level < 0:
            if any(x):
                vec = [
                    sum(x[i] * basis.data[i][j] for i in range(n))
                    for j in range(basis.cols)
                ]
                found.add(_canonical_sign(vec))
            return
        center = sum(c[level][j] * x[j] for j in range(level + 1, n))
        # d[level]*(t + center)^2 <= remaining
        limit = remaining / d[level]
        radius = _sqrt_upper(limit)
        lo = _ceil_frac(-center - radius)
        hi = _floor_frac(-center + radius)
        for t in range(lo, hi + 1):
            term = d[level] * (t + center) ** 2
            if term <= remaining:
                x[level] = t
                descend(level - 1, remaining - term)
        x[level] = 0

    descend(n - 1, bound)
    return sorted(found)


def _sqrt_upper(fr):
    # rational upper bound on sqrt(fr), only used to bracket the integer scan
    if fr <= 0:
        return Fraction(0)
    return Fraction(math.isqrt(fr.numerator // fr.denominator) + 1)


def _ceil_frac(fr):
    return -((-fr.numerator) // fr.denominator)


def _floor_frac(fr):
    return fr.numerator // fr.denominator
