# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled short-vector kernel; algorithm identical to `_enum_py`.

Double-precision Fincke-Pohst pruning with exact integer re-checks near the
bound, so results match the exact-rational oracle bit for bit.
"""
from libc.stdlib cimport malloc, free
from libc.math cimport sqrt

DEF MARGIN = 0.25


def short_coeff_vectors(gram_rows, object bound_num, object bound_den):
    """Coefficient vectors x != 0 (up to sign) with x*A*x^T <= bound, sorted."""
    cdef int n = len(gram_rows)
    if n == 0:
        return []
    cdef double *a = <double *> malloc(n * n * sizeof(double))
    cdef double *d = <double *> malloc(n * sizeof(double))
    cdef double *c = <double *> malloc(n * n * sizeof(double))
    cdef long *x = <long *> malloc(n * sizeof(long))
    cdef double *rem = <double *> malloc((n + 1) * sizeof(double))
    cdef double *center = <double *> malloc(n * sizeof(double))
    cdef long *lo = <long *> malloc(n * sizeof(long))
    cdef long *hi = <long *> malloc(n * sizeof(long))
    if not (a and d and c and x and rem and center and lo and hi):
        raise MemoryError
    cdef int i, j, r, s, level
    cdef double air, limit, radius, term, bound_f, slack, qf, ctr
    cdef long t
    found = []
    try:
        for i in range(n):
            row = gram_rows[i]
            for j in range(n):
                a[i * n + j] = <double> row[j]
        for i in range(n):
            d[i] = a[i * n + i]
            if d[i] <= 0.0:
                raise ValueError("Gram matrix is not positive definite")
            for j in range(i + 1, n):
                c[i * n + j] = a[i * n + j] / d[i]
            for r in range(i + 1, n):
                air = a[i * n + r]
                for s in range(r, n):
                    a[r * n + s] -= air * a[i * n + s] / d[i]
                    a[s * n + r] = a[r * n + s]

        bound_f = <double> bound_num / <double> bound_den
        slack = bound_f + MARGIN

        # iterative depth-first search from level n-1 down to 0
        level = n - 1
        rem[n - 1] = slack
        for i in range(n):
            x[i] = 0
        _set_range(level, n, c, d, x, rem, center, lo, hi)
        x[level] = lo[level] - 1
        while True:
            x[level] += 1
            if x[level] > hi[level]:
                level += 1
                if level >= n:
                    break
                continue
            term = d[level] * (x[level] + center[level]) ** 2
            if term > rem[level]:
                continue
            if level == 0:
                qf = slack - rem[0] + term
                _maybe_emit(n, x, qf, bound_f, gram_rows, bound_num, bound_den, found)
            else:
                rem[level - 1] = rem[level] - term
                level -= 1
                _set_range(level, n, c, d, x, rem, center, lo, hi)
                x[level] = lo[level] - 1
        return sorted(set(found))
    finally:
        free(a); free(d); free(c); free(x); free(rem); free(center); free(lo); free(hi)


cdef void _set_range(int level, int n, double *c, double *d, long *x,
                     double *rem, double *center, long *lo, long *hi):
    cdef double ctr = 0.0, limit, radius
    cdef int j
    for j in range(level + 1, n):
        ctr += c[level * n + j] * x[j]
    center[level] = ctr
    limit = rem[level] / d[level]
    if limit < 0.0:
        lo[level] = 0
        hi[level] = -1
        return
    radius = sqrt(limit)
    lo[level] = <long> (-ctr - radius) - 1
    hi[level] = <long> (-ctr + radius) + 1


cdef void _maybe_emit(int n, long *x, double qf, double bound_f,
                      gram_rows, object bound_num, object bound_den, list found):
    cdef int i, j
    cdef bint nonzero = False
    for i in range(n):
        if x[i] != 0:
            nonzero = True
            break
    if not nonzero:
        return
    if qf > bound_f + MARGIN:
        return
    xv = [x[i] for i in range(n)]
    if qf > bound_f - MARGIN:
        total = 0
        for i in range(n):
            if xv[i]:
                row = gram_rows[i]
                acc = 0
                for j in range(n):
                    acc += row[j] * xv[j]
                total += xv[i] * acc
        if total * bound_den > bound_num:
            return
    for i in range(n):
        if xv[i] > 0:
            break
        if xv[i] < 0:
            xv = [-v for v in xv]
            break
    found.append(tuple(xv))
