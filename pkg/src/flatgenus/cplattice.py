"""Integral lattices for a cyclic group of prime order, as action matrices.

Decomposition invariants (a, b, c), Steinitz class, construction from
invariants, and the isomorphism / semilinear / genus equivalence tests.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from . import classdata
from .classdata import ClassGroupData, SubgroupSpec
from .cyclotomic import (
    CycloElem,
    CycloIdeal,
    cyclo_det,
    ideal_from_generators,
    ideal_mul,
    ideal_norm,
    ideal_pow,
    integer,
    is_principal,
    split_prime_ideal,
    unit_ideal,
    zeta,
    zeta_matrix,
)
from .intmat import (
    IntMatrix,
    LatticeBasis,
    hnf,
    hnf_basis,
    identity,
    in_row_lattice,
    inverse_unimodular,
    lattice_index_group,
    parse_matrix_text,
    format_matrix_text,
    row_rank,
    saturated_kernel,
    snf_divisors,
    solve_left,
    zero,
)

PRINCIPALITY_MULTIPLIERS = (Fraction(4), Fraction(16), Fraction(64))
MAX_MINOR_EVALUATIONS = 5000


class IndeterminateClassError(Exception):
    """An ideal class could not be resolved within the bounded search."""


@dataclass(frozen=True)
class LatticeAction:
    """Rank-n lattice with an order-p action: v -> v * matrix, matrix^p = I."""

    p: int
    matrix: IntMatrix

    def __post_init__(self):
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("action matrix must be square")

    @property
    def n(self):
        return self.matrix.rows


@dataclass(frozen=True)
class DecompInvariants:
    """Multiplicities of trivial / ideal / extension summands, plus Steinitz class."""

    a: int
    b: int
    c: int
    steinitz: tuple | None = None

    @property
    def triple(self):
        return (self.a, self.b, self.c)


def validate(action: LatticeAction) -> dict:
    """Check matrix^p = I; report the order (1 or p) and faithfulness."""
    t = action.matrix
    n = action.n
    if t**action.p != identity(n):
        raise ValueError("matrix does not have order dividing p")
    order = 1 if t == identity(n) else action.p
    return {"order": order, "faithful": order == action.p}


def _norm_matrix(action: LatticeAction) -> IntMatrix:
    t = action.matrix
    total = identity(action.n)
    power = t
    for _ in range(action.p - 1):
        total = total + power
        power = power * t
    return total


def _row_lattice(m: IntMatrix) -> LatticeBasis:
    h, _ = hnf(m)
    rows = [r for r in h.data if any(r)]
    if not rows:
        return LatticeBasis(m.cols, zero(1, m.cols))
    return LatticeBasis(m.cols, IntMatrix(rows))


def invariants(action: LatticeAction) -> DecompInvariants:
    """Decomposition multiplicities (a, b, c); fails loudly on non-lattices."""
    validate(action)
    p, n = action.p, action.n
    t = action.matrix
    fixed = saturated_kernel(t - identity(n))
    image = _row_lattice(_norm_matrix(action))
    divs = lattice_index_group(image, fixed)
    if any(d != p for d in divs):
        raise ArithmeticError(
            "fixed/norm quotient is not elementary abelian p (divisors %r)" % (divs,)
        )
    a = len(divs)
    c = fixed.rank - a
    rest = n - fixed.rank
    if c < 0 or rest % (p - 1):
        raise ArithmeticError("rank bookkeeping failed; input is not a C_p-lattice")
    b = rest // (p - 1) - c
    if b < 0 or a + b * (p - 1) + c * p != n:
        raise ArithmeticError("rank bookkeeping failed; input is not a C_p-lattice")
    return DecompInvariants(a, b, c)


def local_types(action: LatticeAction) -> dict:
    """Multiplicities of the three p-adic indecomposables."""
    inv = invariants(action)
    return {"trivial": inv.a, "cyclo": inv.b, "regular": inv.c}


def genus_equivalent(a1: LatticeAction, a2: LatticeAction) -> bool:
    """Local isomorphism at every prime: equality of the (a, b, c) triples."""
    if a1.p != a2.p:
        raise ValueError("different p")
    if a1.n != a2.n:
        raise ValueError("different ranks")
    return invariants(a1).triple == invariants(a2).triple


# ---------------------------------------------------------------------------
# Construction from invariants


def _block_diag(blocks):
    n = sum(b.rows for b in blocks)
    out = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[off + i][off + j] = b[i, j]
        off += b.rows
    return IntMatrix(out)


def _zeta_action_on(ideal: CycloIdeal) -> IntMatrix:
    """Matrix of multiplication by zeta on the HNF basis of the ideal."""
    z = zeta_matrix(ideal.p)
    image = ideal.basis * z
    rows = []
    for row in image.data:
        x = solve_left(ideal.basis, row)
        if x is None:
            raise ValueError("ideal basis is not zeta-stable")
        rows.append(x)
    return IntMatrix(rows)


def _companion_index(ideal: CycloIdeal) -> int:
    """Index of the first HNF basis row of A outside (zeta - 1)A."""
    shifted = ideal_mul(ideal, ideal_from_generators([zeta(ideal.p) - integer(ideal.p, 1)]))
    for i, row in enumerate(ideal.basis.data):
        if not in_row_lattice(shifted.basis, row):
            return i
    raise ValueError("every basis row lies in (zeta - 1)A; input is not an ideal")


def construct(p, a, b, c, ideals=()) -> LatticeAction:
    """Block-diagonal action with a trivial, b ideal and c extension summands.

    `ideals` has length b + c; the first c entries become (A, a0) extension
    blocks, the rest plain ideal blocks.  Block order: trivial, extensions,
    plain ideals.
    """
    if a < 0 or b < 0 or c < 0:
        raise ValueError("invariants must be nonnegative")
    ideals = list(ideals)
    if len(ideals) != b + c:
        raise ValueError("need %d ideals, got %d" % (b + c, len(ideals)))
    for ideal in ideals:
        if ideal.p != p:
            raise ValueError("ideal has wrong p")
    blocks = [identity(1)] * a
    for ideal in ideals[:c]:
        base = _zeta_action_on(ideal)
        k = _companion_index(ideal)
        size = p
        rows = [list(base.row(i)) + [0] for i in range(p - 1)]
        last = [0] * size
        last[k] = 1
        last[size - 1] = 1
        rows.append(last)
        blocks.append(IntMatrix(rows))
    for ideal in ideals[c:]:
        blocks.append(_zeta_action_on(ideal))
    if not blocks:
        raise ValueError("empty lattice (a = b = c = 0)")
    return LatticeAction(p, _block_diag(blocks))


# ---------------------------------------------------------------------------
# Steinitz class


def _fraction_inverse(rows):
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def quotient_action(action: LatticeAction):
    """Induced zeta-action on Z^n / sat(fixed lattice); a faithful C_p-matrix.

    Returns the r x r integer matrix with r = (b + c)(p - 1), or None when
    b + c = 0.
    """
    validate(action)
    n = action.n
    t = action.matrix
    h, u = hnf(t - identity(n))
    nonzero = [i for i in range(n) if any(h.data[i])]
    r = len(nonzero)
    if r == 0:
        return None
    if nonzero != list(range(r)):
        raise AssertionError("HNF zero rows are not at the bottom")
    s = u * t * inverse_unimodular(u)
    return IntMatrix([[s[i, j] for j in range(r)] for i in range(r)])


def _cyclo_from_chunks(p, chunks):
    return [CycloElem(p, chunk) for chunk in chunks]


def _flatten_cyclo_row(p, w, m):
    return [w[i].coeffs[j] for i in range(m) for j in range(p - 1)]


def _prune_generators(p, wmat, m):
    """Drop rows already in the Z[zeta]-module generated by the kept rows.

    The minors ideal is the 0th Fitting ideal of the quotient, so it only
    depends on the module the rows generate, not on the generating set; a
    smaller set keeps the subset enumeration tractable.
    """
    z = zeta(p)
    kept = []
    lattice = None
    for w in wmat:
        if lattice is not None and in_row_lattice(lattice, _flatten_cyclo_row(p, w, m)):
            continue
        kept.append(w)
        rows = [] if lattice is None else lattice.to_lists()
        cur = w
        for _ in range(p - 1):
            rows.append(_flatten_cyclo_row(p, cur, m))
            cur = [x * z for x in cur]
        lattice = hnf_basis(IntMatrix(rows))
    return kept


def _ideal_lattice_of_minors(p, wmat, m):
    """Ideal generated by the m x m minors of the cyclotomic coordinate matrix.

    `wmat`: list of rows, each a list of m integer-coefficient CycloElem.
    Stops as soon as the partial ideal reaches the exact target norm given by
    the full coordinate determinant.
    """
    if m == 0:
        raise ValueError("no ideal part")
    # exact target: norm of the minors ideal = |det| of the full rational matrix
    flat = IntMatrix([_flatten_cyclo_row(p, w, m) for w in wmat])
    from .intmat import det_bareiss

    target = abs(det_bareiss(flat))
    if target == 0:
        raise ValueError("coordinate matrix is singular")
    wmat = _prune_generators(p, wmat, m)
    r = len(wmat)
    gens = []
    current = None

    def absorb(det):
        nonlocal current
        if det.is_zero():
            return False
        if current is not None and current.contains(det):
            return False
        gens.append(det)
        current = ideal_from_generators(gens)
        return ideal_norm(current) == target

    # deterministic phase: the basis minor plus all single-row exchanges
    for subset in _single_exchange_subsets(r, m):
        if absorb(cyclo_det([wmat[i] for i in subset])):
            return current
    # randomized phase: minors of random combinations of the generators; every
    # such minor lies in the index ideal, and a few random elements of an
    # ideal generate it with high probability
    rng = random.Random(0)
    for _ in range(MAX_MINOR_EVALUATIONS):
        combo = []
        for _ in range(m):
            coeffs = [rng.randint(-1, 1) for _ in range(r)]
            combo.append(
                [
                    sum(
                        (wmat[j][i] * coeffs[j] for j in range(r)),
                        integer(p, 0),
                    )
                    for i in range(m)
                ]
            )
        if absorb(cyclo_det(combo)):
            return current
    raise ArithmeticError("minors did not generate the full index ideal")


def _single_exchange_subsets(r, m):
    """The base subset range(m), then every single-row exchange."""
    base = tuple(range(m))
    yield base
    for drop in range(m):
        keep = tuple(i for i in base if i != drop)
        for add in range(m, r):
            yield tuple(sorted(keep + (add,)))


def reference_ideals(h: ClassGroupData):
    """Split-prime ideals realizing the class-group generators (builtin p only)."""
    if not h.factors:
        return []
    if len(h.reference_primes) != len(h.factors):
        raise ValueError(
            "no reference ideals available for p = %d (file-supplied class data "
            "cannot resolve Steinitz classes)" % h.p
        )
    return [split_prime_ideal(h.p, q) for q in h.reference_primes]


def ideal_class_exponents(ideal: CycloIdeal, h: ClassGroupData):
    """Exponent tuple of [ideal] w.r.t. the reference generators.

    Resolved by bounded principality searches with escalating radius; raises
    IndeterminateClassError if no exponent tuple can be certified.
    """
    if not h.factors:
        # trivial class group: every ideal is principal, nothing to search
        return ()
    refs = reference_ideals(h)
    candidates = []
    for exps in product(*[range(d) for d in h.factors]):
        candidate = ideal
        for ref, e, d in zip(refs, exps, h.factors):
            candidate = ideal_mul(candidate, ideal_pow(ref, (d - e) % d))
        candidates.append((exps, candidate))
    # exactly one candidate is principal; sweep all of them at each radius
    # before escalating (radius growth is exponentially expensive)
    for mult in PRINCIPALITY_MULTIPLIERS:
        for exps, candidate in candidates:
            if is_principal(candidate, mult).is_principal:
                return exps
    raise IndeterminateClassError(
        "ideal class not resolvable within principality search bounds"
    )


def steinitz_class(action: LatticeAction, h: ClassGroupData):
    """Steinitz class of the ideal part, as an exponent tuple w.r.t. `h`.

    Embeds Z^n/sat(fixed) into Q(zeta)^m and classifies the determinant
    ideal of its integral generators.
    """
    p = action.p
    if h.p != p:
        raise ValueError("class data is for a different p")
    q = quotient_action(action)
    if q is None:
        raise ValueError("lattice has no ideal part (b + c = 0)")
    r = q.rows
    m = r // (p - 1)
    # greedy Z[zeta]-independent generators among the standard basis vectors
    picked = []
    stack = []
    for t in range(r):
        orbit = []
        vec = [1 if j == t else 0 for j in range(r)]
        cur = vec
        for _ in range(p - 1):
            orbit.append(cur)
            cur = [sum(cur[i] * q[i, j] for i in range(r)) for j in range(r)]
        trial = stack + orbit
        if row_rank(IntMatrix(trial)) == len(picked) * (p - 1) + (p - 1):
            picked.append(t)
            stack = trial
            if len(picked) == m:
                break
    if len(picked) != m:
        raise ArithmeticError("could not find a Q(zeta)-basis among generators")
    minv = _fraction_inverse(stack)
    denom = 1
    for row in minv:
        for x in row:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
    wmat = []
    for trow in minv:
        scaled = [int(x * denom) for x in trow]
        chunks = [scaled[i * (p - 1) : (i + 1) * (p - 1)] for i in range(m)]
        wmat.append(_cyclo_from_chunks(p, chunks))
    # put the rows forming a Q(zeta)-basis first so the base minor is nonzero
    order = picked + [t for t in range(r) if t not in picked]
    wmat = [wmat[t] for t in order]
    index_ideal = _ideal_lattice_of_minors(p, wmat, m)
    return ideal_class_exponents(index_ideal, h)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


# ---------------------------------------------------------------------------
# Isomorphism tests


def full_invariants(action: LatticeAction, h: ClassGroupData) -> DecompInvariants:
    inv = invariants(action)
    if inv.b + inv.c == 0:
        return inv
    return DecompInvariants(inv.a, inv.b, inv.c, steinitz_class(action, h))


def is_isomorphic(a1: LatticeAction, a2: LatticeAction, h: ClassGroupData) -> bool:
    """Z G-module isomorphism: equal (a, b, c) and equal Steinitz class."""
    if a1.p != a2.p:
        raise ValueError("different p")
    i1, i2 = full_invariants(a1, h), full_invariants(a2, h)
    return i1.triple == i2.triple and i1.steinitz == i2.steinitz


def is_semilinear_isomorphic(a1: LatticeAction, a2: LatticeAction, h: ClassGroupData) -> bool:
    """Equal (a, b, c) and Steinitz classes in the same Galois orbit."""
    if a1.p != a2.p:
        raise ValueError("different p")
    i1, i2 = full_invariants(a1, h), full_invariants(a2, h)
    if i1.triple != i2.triple:
        return False
    if i1.steinitz is None:
        return True
    return i2.steinitz in classdata.orbit_of(h, SubgroupSpec.FULL_GALOIS, i1.steinitz)


# ---------------------------------------------------------------------------
# Serialization


def invariants_to_dict(inv: DecompInvariants) -> dict:
    return {
        "a": inv.a,
        "b": inv.b,
        "c": inv.c,
        "steinitz": list(inv.steinitz) if inv.steinitz is not None else None,
    }


def format_lattice_action(action: LatticeAction) -> str:
    return "%d\n%s" % (action.p, format_matrix_text(action.matrix))


def parse_lattice_action(text: str) -> LatticeAction:
    first, _, rest = text.partition("\n")
    return LatticeAction(int(first.strip()), parse_matrix_text(rest))
