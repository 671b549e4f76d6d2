"""Pure-Python short-vector kernel (fallback for the compiled extension).

Same algorithm as `_enum_fast.pyx`: Fincke-Pohst with double-precision
pruning plus exact integer membership decisions.  The Gram matrix must be
integral, so every form value is an integer; a candidate whose float value
lands within 0.25 of the bound is re-checked exactly, which keeps the output
identical to the exact-rational oracle (float accumulation error over these
small dimensions is orders of magnitude below 0.25).
"""
from __future__ import annotations

MARGIN = 0.25


def short_coeff_vectors(gram_rows, bound_num, bound_den):
    """Coefficient vectors x != 0 (up to sign) with x*A*x^T <= bound, sorted.

    `gram_rows`: integer Gram matrix A as list of lists; bound = num/den >= 0.
    """
    n = len(gram_rows)
    a = [[float(x) for x in row] for row in gram_rows]
    d = [0.0] * n
    c = [[0.0] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0.0:
            raise ValueError("Gram matrix is not positive definite")
        for j in range(i + 1, n):
            c[i][j] = a[i][j] / d[i]
        for r in range(i + 1, n):
            air = a[i][r]
            for s in range(r, n):
                a[r][s] -= air * a[i][s] / d[i]
                a[s][r] = a[r][s]

    bound_f = bound_num / bound_den
    slack = bound_f + MARGIN
    found = []
    x = [0] * n

    def exact_value(xv):
        total = 0
        for i in range(n):
            xi = xv[i]
            if xi:
                grow = gram_rows[i]
                total += xi * sum(g * xj for g, xj in zip(grow, xv))
        return total

    def emit(qf):
        # qf is the float-accumulated form value of x
        if not any(x):
            return
        if qf > bound_f + MARGIN:
            return
        if qf > bound_f - MARGIN:
            if exact_value(x) * bound_den > bound_num:
                return
        found.append(_signed(x))

    def descend(level, remaining):
        # remaining = slack - (form value accumulated at levels > level)
        center = 0.0
        for j in range(level + 1, n):
            center += c[level][j] * x[j]
        limit = remaining / d[level]
        if limit < 0.0:
            return
        radius = limit ** 0.5
        lo = int(-center - radius) - 1
        hi = int(-center + radius) + 1
        for t in range(lo, hi + 1):
            term = d[level] * (t + center) ** 2
            if term <= remaining:
                x[level] = t
                if level == 0:
                    emit(slack - remaining + term)
                else:
                    descend(level - 1, remaining - term)
        x[level] = 0

    if n:
        descend(n - 1, slack)
    return sorted(set(found))


def _signed(x):
    for v in x:
        if v:
            return tuple(x) if v > 0 else tuple(-y for y in x)
    return tuple(x)
