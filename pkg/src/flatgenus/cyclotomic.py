"""Arithmetic in Z[zeta_p] and its ideals.

Elements live in the power basis 1, zeta, ..., zeta^(p-2); ideals are
full-rank integer lattices stored in HNF.  p = 2 is supported degenerately
(Z[zeta_2] = Z, every ideal principal).
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .intmat import IntMatrix, det_bareiss, hnf_basis, identity, in_row_lattice
from .shortvec import gram_cholesky, lll_reduce

DEFAULT_RADIUS_MULTIPLIER = Fraction(4)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond anything used here."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_p(p):
    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))


@dataclass(frozen=True)
class CycloElem:
    """Element of Z[zeta_p] with integer coefficients in the power basis."""

    p: int
    coeffs: tuple

    def __post_init__(self):
        _check_p(self.p)
        if len(self.coeffs) != self.p - 1:
            raise ValueError("need %d coefficients" % (self.p - 1))
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        _same_p(self, other)
        return CycloElem(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _same_p(self, other)
        return CycloElem(self.p, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycloElem(self.p, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElem(self.p, [a * other for a in self.coeffs])
        return elem_mul(self, other)

    __rmul__ = __mul__


def _same_p(x, y):
    if x.p != y.p:
        raise ValueError("mismatched p: %d vs %d" % (x.p, y.p))


def integer(p, n) -> CycloElem:
    return CycloElem(p, [n] + [0] * (p - 2))


def zeta(p, k=1) -> CycloElem:
    """zeta_p^k as an element."""
    return CycloElem(p, _reduce_exponents(p, {k % p: 1}))


def _reduce_exponents(p, by_exp):
    """Fold a {exponent: coeff} dict mod x^p = 1 and zeta^(p-1) = -(1+...+zeta^(p-2))."""
    out = [0] * p
    for e, c in by_exp.items():
        out[e % p] += c
    top = out[p - 1]
    return [out[i] - top for i in range(p - 1)]


def elem_mul(x: CycloElem, y: CycloElem) -> CycloElem:
    _same_p(x, y)
    p = x.p
    raw = [0] * (2 * p - 3) if p > 2 else [0]
    for i, a in enumerate(x.coeffs):
        if a:
            for j, b in enumerate(y.coeffs):
                if b:
                    raw[i + j] += a * b
    return CycloElem(p, _reduce_exponents(p, dict(enumerate(raw))))


def zeta_matrix(p) -> IntMatrix:
    """Row-action matrix of multiplication by zeta: coords(zeta*v) = coords(v) * Z."""
    rows = []
    for i in range(p - 1):
        rows.append(_reduce_exponents(p, {i + 1: 1}))
    return IntMatrix(rows)


def mult_matrix(x: CycloElem) -> IntMatrix:
    """Row i = coords(x * zeta^i); right-multiplication realizes y -> y*x."""
    rows = []
    cur = x
    z = zeta(x.p)
    for _ in range(x.p - 1):
        rows.append(cur.coeffs)
        cur = elem_mul(cur, z)
    return IntMatrix(rows)


def elem_norm(x: CycloElem) -> int:
    """Field norm N(x) = det of multiplication by x on Z[zeta]."""
    if x.is_zero():
        return 0
    return det_bareiss(mult_matrix(x))


def elem_divexact(x: CycloElem, y: CycloElem) -> CycloElem:
    """Exact quotient x / y in Z[zeta]; raises if y = 0 or y does not divide x."""
    _same_p(x, y)
    if y.is_zero():
        raise ZeroDivisionError("division by zero element")
    p = x.p
    cofactor = integer(p, 1)
    for k in range(2, p):
        cofactor = elem_mul(cofactor, galois_apply_elem(GaloisElement(p, k), y))
    ny = elem_norm(y)
    num = elem_mul(x, cofactor)
    out = []
    for c in num.coeffs:
        q, r = divmod(c, ny)
        if r:
            raise ValueError("inexact division in Z[zeta]")
        out.append(q)
    return CycloElem(p, out)


def cyclo_det(rows) -> CycloElem:
    """Fraction-free determinant of a square matrix of CycloElem."""
    n = len(rows)
    p = rows[0][0].p
    a = [list(r) for r in rows]
    sign = 1
    prev = integer(p, 1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            piv = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if piv is None:
                return integer(p, 0)
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = elem_divexact(
                    elem_mul(a[i][j], a[k][k]) - elem_mul(a[i][k], a[k][j]), prev
                )
            a[i][k] = integer(p, 0)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Galois action


@dataclass(frozen=True)
class GaloisElement:
    """sigma_k in G(Q(zeta_p)/Q): zeta -> zeta^k."""

    p: int
    k: int

    def __post_init__(self):
        _check_p(self.p)
        if not 1 <= self.k <= self.p - 1 or math.gcd(self.k, self.p) != 1:
            raise ValueError("k must satisfy 1 <= k <= p-1, gcd(k, p) = 1")

    def compose(self, other):
        _same_p(self, other)
        return GaloisElement(self.p, self.k * other.k % self.p)


def conjugation(p) -> GaloisElement:
    """Complex conjugation sigma_{-1} (identity for p = 2)."""
    return GaloisElement(p, p - 1 if p > 2 else 1)


def galois_apply_elem(s: GaloisElement, x: CycloElem) -> CycloElem:
    _same_p(s, x)
    by_exp = {}
    for i, c in enumerate(x.coeffs):
        if c:
            e = i * s.k % x.p
            by_exp[e] = by_exp.get(e, 0) + c
    return CycloElem(x.p, _reduce_exponents(x.p, by_exp))


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class CycloIdeal:
    """Nonzero integral ideal of Z[zeta_p] as a full-rank HNF lattice."""

    p: int
    basis: IntMatrix

    def __post_init__(self):
        _check_p(self.p)
        n = self.p - 1
        if self.basis.rows != n or self.basis.cols != n:
            raise ValueError("basis must be %d x %d" % (n, n))
        if self.basis != hnf_basis(self.basis):
            raise ValueError("basis must be in Hermite normal form")
        if any(self.basis[i, i] == 0 for i in range(n)):
            raise ValueError("ideal lattice must have full rank")
        z = zeta_matrix(self.p)
        for row in self.basis.data:
            image = [sum(row[i] * z[i, j] for i in range(n)) for j in range(n)]
            if not in_row_lattice(self.basis, image):
                raise ValueError("lattice is not closed under multiplication by zeta")

    def elements(self):
        return [CycloElem(self.p, row) for row in self.basis.data]

    def contains(self, x: CycloElem) -> bool:
        _same_p(self, x)
        return in_row_lattice(self.basis, x.coeffs)


def unit_ideal(p) -> CycloIdeal:
    return CycloIdeal(p, identity(p - 1))


def ideal_from_generators(gens) -> CycloIdeal:
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator")
    p = gens[0].p
    rows = []
    for g in gens:
        _same_p(g, gens[0])
        cur = g
        z = zeta(p)
        for _ in range(p - 1):
            rows.append(cur.coeffs)
            cur = elem_mul(cur, z)
    return CycloIdeal(p, _square_hnf(IntMatrix(rows), p))


def _square_hnf(m, p):
    h = hnf_basis(m)
    if h.rows != p - 1:
        raise ValueError("generated lattice is not full rank")
    return h


def principal_ideal(g: CycloElem) -> CycloIdeal:
    return ideal_from_generators([g])


def ideal_mul(i1: CycloIdeal, i2: CycloIdeal) -> CycloIdeal:
    _same_p(i1, i2)
    rows = []
    for x in i1.elements():
        for y in i2.elements():
            rows.append(elem_mul(x, y).coeffs)
    return CycloIdeal(i1.p, _square_hnf(IntMatrix(rows), i1.p))


def ideal_norm(i: CycloIdeal) -> int:
    out = 1
    for k in range(i.p - 1):
        out *= i.basis[k, k]
    return out


def galois_apply(s: GaloisElement, target):
    """Apply sigma_k to an element or an ideal."""
    if isinstance(target, CycloElem):
        return galois_apply_elem(s, target)
    _same_p(s, target)
    rows = [galois_apply_elem(s, x).coeffs for x in target.elements()]
    return CycloIdeal(target.p, _square_hnf(IntMatrix(rows), target.p))


def ideal_pow(i: CycloIdeal, e: int) -> CycloIdeal:
    if e < 0:
        raise ValueError("negative ideal power")
    out = unit_ideal(i.p)
    for _ in range(e):
        out = ideal_mul(out, i)
    return out


def split_prime_ideal(p, q) -> CycloIdeal:
    """Degree-one prime P = (q, zeta - r) over a completely split prime q = 1 mod p."""
    _check_p(p)
    if not is_prime(q):
        raise ValueError("q must be prime, got %r" % (q,))
    if q % p != 1:
        raise ValueError("q must be congruent to 1 mod p")
    r = None
    for g in range(2, q):
        cand = pow(g, (q - 1) // p, q)
        if cand != 1:
            r = cand
            break
    if r is None:  # q = p = 2 edge; (q-1)//p = q-1 always gives 1 only if q = 2
        raise ValueError("no element of order p mod q")
    ideal = ideal_from_generators([integer(p, q), zeta(p) - integer(p, r)])
    assert ideal_norm(ideal) == q
    return ideal


# ---------------------------------------------------------------------------
# Minkowski (trace) form and principality testing


def ambient_trace_gram(p) -> IntMatrix:
    """Gram matrix of <u, v> = Tr(u * conj(v)) on the power basis: p*I - J."""
    n = p - 1
    return IntMatrix([[p - 1 if i == j else -1 for j in range(n)] for i in range(n)])


def minkowski_gram(ideal: CycloIdeal, precision_bits=128):
    """Exact trace-form Gram matrix on the ideal basis.

    For prime cyclotomics the trace form is integral, so no approximation is
    needed; `precision_bits` is kept for interface stability and only
    validated.  Positive definiteness is certified before returning.
    """
    if precision_bits < 1:
        raise ValueError("precision_bits must be positive")
    g0 = ambient_trace_gram(ideal.p)
    b = ideal.basis
    gram = b * g0 * b.transpose()
    gram_cholesky(gram)  # raises unless positive definite
    return gram


@dataclass(frozen=True)
class PrincipalityResult:
    """Outcome of a bounded principality search.

    `principal` verdicts carry an exactly verified generator; `not_found`
    means the exhaustive search up to `bound` (trace-form value) produced no
    generator, which is not a proof of non-principality.
    """

    status: str  # "principal" | "not_found"
    bound: Fraction
    generator: CycloElem | None = None

    @property
    def is_principal(self):
        return self.status == "principal"


def _iroot_ceil(n, k):
    """Smallest integer m >= 1 with m**k >= n (n >= 1)."""
    if n <= 1:
        return 1
    lo, hi = 1, 1
    while hi**k < n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**k >= n:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _abs_norm_float(x: CycloElem) -> float:
    p = x.p
    if p == 2:
        return float(abs(x.coeffs[0]))
    out = 1.0
    for k in range(1, (p - 1) // 2 + 1):
        val = sum(c * cmath.exp(2j * cmath.pi * (i * k % p) / p) for i, c in enumerate(x.coeffs))
        out *= abs(val) ** 2
    return out


def search_bound(p, norm, radius_multiplier) -> Fraction:
    """Trace-form search radius: multiplier * (p-1) * ceil(norm^(2/(p-1)))."""
    return Fraction(radius_multiplier) * (p - 1) * _iroot_ceil(norm * norm, p - 1)


def is_principal(ideal: CycloIdeal, radius_multiplier=DEFAULT_RADIUS_MULTIPLIER) -> PrincipalityResult:
    """Bounded search for a generator of `ideal` in the Minkowski lattice."""
    p = ideal.p
    nrm = ideal_norm(ideal)
    bound = search_bound(p, nrm, radius_multiplier)
    if p == 2:
        return PrincipalityResult("principal", bound, integer(2, nrm))
    g0 = ambient_trace_gram(p)
    reduced = lll_reduce(ideal.basis, g0)
    gram = (reduced * g0 * reduced.transpose()).to_lists()
    coeffs = kernels.short_coeff_vectors(gram, bound.numerator, bound.denominator)
    for cand in _norm_filter(p, reduced, coeffs, nrm):
        if abs(elem_norm(cand)) == nrm:
            return PrincipalityResult("principal", bound, cand)
    return PrincipalityResult("not_found", bound)


def _norm_filter(p, reduced, coeffs, nrm):
    """Candidates whose float |norm| is within a factor e^0.3 of the target.

    Vectorized over all candidates; the float filter is a pre-screen only,
    every survivor is re-verified exactly by the caller.  The 0.3 log margin
    dwarfs double-precision error for the entry sizes that occur here.
    """
    if not coeffs:
        return
    import numpy as np

    x = np.array(coeffs, dtype=np.float64)
    b = np.array(reduced.to_lists(), dtype=np.float64)
    vecs = x @ b
    ks = np.arange(1, (p - 1) // 2 + 1)
    idx = np.arange(p - 1)
    emb = np.exp(2j * np.pi * np.outer(idx, ks) / p)
    with np.errstate(divide="ignore"):
        logs = 2.0 * np.sum(np.log(np.abs(vecs @ emb)), axis=1)
    hits = np.nonzero(np.abs(logs - math.log(nrm)) <= 0.3)[0]
    for i in hits:
        row = coeffs[i]
        vec = [sum(row[r] * reduced[r, j] for r in range(p - 1)) for j in range(p - 1)]
        yield CycloElem(p, vec)


def ideal_to_dict(ideal: CycloIdeal) -> dict:
    return {"p": ideal.p, "hnf": ideal.basis.to_lists()}


def ideal_from_dict(d: dict) -> CycloIdeal:
    return CycloIdeal(int(d["p"]), IntMatrix([[int(x) for x in row] for row in d["hnf"]]))
