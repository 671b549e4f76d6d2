"""Exact integer matrix kernels: HNF, SNF, saturated kernels, quotient invariants.

All arithmetic is over Z (arbitrary precision); no floating point anywhere.
Matrices are immutable; every function returns fresh objects.
"""
from __future__ import annotations

from dataclasses import dataclass


class IntMatrix:
    """Immutable rectangular matrix with integer entries."""

    __slots__ = ("data",)

    def __init__(self, rows):
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if not data:
            raise ValueError("matrix needs at least one row")
        width = len(data[0])
        if width == 0 or any(len(r) != width for r in data):
            raise ValueError("matrix must be rectangular and non-empty")
        object.__setattr__(self, "data", data)

    def __setattr__(self, *a):
        raise AttributeError("IntMatrix is immutable")

    @property
    def rows(self):
        return len(self.data)

    @property
    def cols(self):
        return len(self.data[0])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return "IntMatrix(%r)" % (list(map(list, self.data)),)

    def __add__(self, other):
        _same_shape(self, other)
        return IntMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __sub__(self, other):
        _same_shape(self, other)
        return IntMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.data, other.data)
            ]
        )

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.data])

    def __mul__(self, other):
        if isinstance(other, int):
            return IntMatrix([[a * other for a in r] for r in self.data])
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        bt = list(zip(*other.data))
        return IntMatrix(
            [[_dot(r, c) for c in bt] for r in self.data]
        )

    __rmul__ = __mul__

    def __pow__(self, e):
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        result = identity(self.rows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self):
        return IntMatrix(list(zip(*self.data)))

    def is_zero(self):
        return all(all(a == 0 for a in r) for r in self.data)

    def to_lists(self):
        return [list(r) for r in self.data]


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _same_shape(a, b):
    if a.rows != b.rows or a.cols != b.cols:
        raise ValueError("shape mismatch")


def identity(n):
    return IntMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def zero(rows, cols):
    return IntMatrix([[0] * cols for _ in range(rows)])


@dataclass(frozen=True)
class LatticeBasis:
    """Basis (rows, in HNF) of a sublattice of Z^ambient."""

    ambient: int
    basis: IntMatrix  # rank x ambient, may be a 1 x ambient zero block for rank 0

    @property
    def rank(self):
        if self.basis.is_zero():
            return 0
        return self.basis.rows

    def rows_list(self):
        if self.rank == 0:
            return []
        return self.basis.to_lists()


# ---------------------------------------------------------------------------
# Hermite normal form


def hnf(m: IntMatrix):
    """Row-style HNF: returns (H, U) with U*m = H and det U = +-1.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero rows
    sort to the bottom.  H is the canonical basis of the row lattice of m.
    """
    a = m.to_lists()
    nrows, ncols = m.rows, m.cols
    u = identity(nrows).to_lists()
    r = 0
    for c in range(ncols):
        # gcd-eliminate column c below row r
        while True:
            nz = [i for i in range(r, nrows) if a[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(a[i][c]), i))
            if i0 != r:
                a[r], a[i0] = a[i0], a[r]
                u[r], u[i0] = u[i0], u[r]
            if len(nz) == 1:
                break
            piv = a[r][c]
            for i in range(r + 1, nrows):
                if a[i][c]:
                    q = a[i][c] // piv
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        if r < nrows and a[r][c] != 0:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                u[r] = [-x for x in u[r]]
            piv = a[r][c]
            for j in range(r):
                q = a[j][c] // piv
                if q:
                    a[j] = [x - q * y for x, y in zip(a[j], a[r])]
                    u[j] = [x - q * y for x, y in zip(u[j], u[r])]
            r += 1
            if r == nrows:
                break
    return IntMatrix(a), IntMatrix(u)


def hnf_basis(m: IntMatrix) -> IntMatrix:
    """HNF of m with zero rows dropped (raises if the row lattice is 0)."""
    h, _ = hnf(m)
    rows = [r for r in h.data if any(r)]
    if not rows:
        raise ValueError("zero lattice has no basis")
    return IntMatrix(rows)


def row_rank(m: IntMatrix) -> int:
    h, _ = hnf(m)
    return sum(1 for r in h.data if any(r))


def solve_left(basis: IntMatrix, target):
    """Integer x with x*basis = target, or None if target is not in the row lattice."""
    h, u = hnf(basis)
    t = [int(v) for v in target]
    if len(t) != basis.cols:
        raise ValueError("target length mismatch")
    coeff = [0] * basis.rows
    pivots = []
    for i, row in enumerate(h.data):
        for j, v in enumerate(row):
            if v:
                pivots.append((i, j))
                break
    for i, j in pivots:
        q = t[j] // h.data[i][j]
        if q:
            t = [x - q * y for x, y in zip(t, h.data[i])]
            coeff[i] += q
        if t[j] != 0:
            return None
    if any(t):
        return None
    return [_dot(coeff, col) for col in zip(*u.data)]


def in_row_lattice(basis: IntMatrix, target) -> bool:
    return solve_left(basis, target) is not None


# ---------------------------------------------------------------------------
# Smith normal form


def snf(m: IntMatrix):
    """Returns (D, U, V) with U*m*V = D diagonal, d1 | d2 | ... >= 0.

    Alternates row and column Hermite reductions until the matrix is
    diagonal, then repairs the divisibility chain; this keeps intermediate
    entries far smaller than the classical smallest-pivot sweep.
    """
    a = m
    u = identity(m.rows)
    v = identity(m.cols)
    k = min(m.rows, m.cols)
    for _ in range(10000):
        h, u1 = hnf(a)
        u = u1 * u
        a = h
        h2, u2 = hnf(a.transpose())
        v = v * u2.transpose()
        a = h2.transpose()
        if not _is_diagonal(a):
            continue
        d = [a[i, i] for i in range(k)]
        bad = None
        for i in range(k):
            for j in range(i + 1, k):
                if (d[i] == 0 and d[j] != 0) or (d[i] != 0 and d[j] % d[i]):
                    bad = (i, j)
                    break
            if bad:
                break
        if bad is None:
            return a, u, v
        i, j = bad
        # merge column j into column i and re-reduce
        rows = a.to_lists()
        vrows = v.to_lists()
        for r in range(m.rows):
            rows[r][i] += rows[r][j]
        for r in range(m.cols):
            vrows[r][i] += vrows[r][j]
        a = IntMatrix(rows)
        v = IntMatrix(vrows)
    raise AssertionError("Smith reduction failed to converge")


def _is_diagonal(a: IntMatrix) -> bool:
    return all(
        a[i, j] == 0
        for i in range(a.rows)
        for j in range(a.cols)
        if i != j
    )


def snf_divisors(m: IntMatrix):
    """Diagonal of the SNF, as a tuple (including 1s and trailing 0s)."""
    d, _, _ = snf(m)
    return tuple(d.data[i][i] for i in range(min(m.rows, m.cols)))


def det_bareiss(m: IntMatrix) -> int:
    """Fraction-free determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    a = m.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k]), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Kernels and quotients


def saturated_kernel(m: IntMatrix) -> LatticeBasis:
    """Basis of {v in Z^rows : v*m = 0}; always a saturated sublattice."""
    h, u = hnf(m)
    ker = [u.data[i] for i in range(m.rows) if not any(h.data[i])]
    if not ker:
        return LatticeBasis(m.rows, zero(1, m.rows))
    return LatticeBasis(m.rows, hnf_basis(IntMatrix(ker)))


def lattice_index_group(sub: LatticeBasis, sup: LatticeBasis):
    """Cyclic invariants (d1 | ... | dk), all > 1, of the finite group sup/sub."""
    if sub.ambient != sup.ambient:
        raise ValueError("ambient dimensions differ")
    if sub.rank != sup.rank:
        raise ValueError("ranks differ; quotient would be infinite")
    if sub.rank == 0:
        return ()
    coords = []
    for row in sub.rows_list():
        x = solve_left(sup.basis, row)
        if x is None:
            raise ValueError("sub is not contained in sup")
        coords.append(x)
    divs = snf_divisors(IntMatrix(coords))
    if any(d == 0 for d in divs):
        raise ValueError("ranks differ; quotient would be infinite")
    return tuple(d for d in divs if d != 1)


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Inverse of a matrix with determinant +-1."""
    h, u = hnf(m)
    if h != identity(m.rows):
        raise ValueError("matrix is not unimodular")
    return u


# ---------------------------------------------------------------------------
# Text format: first line "rows cols", then row-major whitespace-separated ints


def format_matrix_text(m: IntMatrix) -> str:
    lines = ["%d %d" % (m.rows, m.cols)]
    lines.extend(" ".join(str(x) for x in row) for row in m.data)
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> IntMatrix:
    tokens = text.split()
    if len(tokens) < 2:
        raise ValueError("matrix text must start with 'rows cols'")
    rows, cols = int(tokens[0]), int(tokens[1])
    entries = tokens[2:]
    if len(entries) != rows * cols:
        raise ValueError(
            "expected %d entries, got %d" % (rows * cols, len(entries))
        )
    it = iter(int(t) for t in entries)
    return IntMatrix([[next(it) for _ in range(cols)] for _ in range(rows)])
