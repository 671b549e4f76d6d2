"""Torsion-free crystallographic groups with prime holonomy.

Classification tuples (p, a, b, c, theta), explicit affine models, the
isomorphism / profinite-isomorphism decisions, genus computation, and
enumeration by dimension.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import classdata
from .classdata import ClassGroupData, SubgroupSpec
from .cyclotomic import ideal_mul, ideal_pow, unit_ideal
from .cplattice import LatticeAction, construct, reference_ideals
from .intmat import IntMatrix, hnf, identity, snf_divisors, solve_left


@dataclass(frozen=True)
class BieberbachClass:
    """Canonical classification tuple of an n-dimensional flat-manifold group.

    `theta` is the canonical orbit representative: C2-orbit when the class is
    exceptional (a = 1, c = 0), full Galois orbit otherwise.
    """

    p: int
    a: int
    b: int
    c: int
    theta: tuple

    @property
    def exceptional(self):
        return self.a == 1 and self.c == 0

    @property
    def triple(self):
        return (self.a, self.b, self.c)

    @property
    def dimension(self):
        return self.a + self.b * (self.p - 1) + self.c * self.p


def make_class(p, a, b, c, theta_raw, h: ClassGroupData) -> BieberbachClass:
    """Validate the tuple constraints and canonicalize theta."""
    if h.p != p:
        raise ValueError("class data is for a different p")
    if a <= 0:
        raise ValueError("constraint violated: a = 0 (no trivial summand)")
    if b < 0 or c < 0:
        raise ValueError("constraint violated: negative multiplicity")
    if (b, c) == (0, 0):
        raise ValueError("constraint violated: (b, c) = (0, 0)")
    theta_raw = tuple(theta_raw)
    if len(theta_raw) != len(h.factors):
        raise ValueError(
            "theta has %d exponents, class group has %d generators"
            % (len(theta_raw), len(h.factors))
        )
    spec = SubgroupSpec.C2 if (a == 1 and c == 0) else SubgroupSpec.FULL_GALOIS
    theta = classdata.canonical_orbit_rep(h, spec, theta_raw) if h.factors else ()
    cls = BieberbachClass(p, a, b, c, theta)
    if cls.dimension < p - 1:
        raise ValueError("dimension below p - 1, impossible for faithful holonomy")
    return cls


def dimension(cls: BieberbachClass) -> int:
    n = cls.dimension
    assert n >= cls.p - 1
    return n


def class_to_dict(cls: BieberbachClass) -> dict:
    return {
        "p": cls.p,
        "a": cls.a,
        "b": cls.b,
        "c": cls.c,
        "theta": list(cls.theta),
        "exceptional": cls.exceptional,
        "dimension": cls.dimension,
    }


def class_from_dict(d: dict, h: ClassGroupData) -> BieberbachClass:
    return make_class(
        int(d["p"]), int(d["a"]), int(d["b"]), int(d["c"]),
        tuple(int(x) for x in d.get("theta", ())), h,
    )


# ---------------------------------------------------------------------------
# Affine models


@dataclass(frozen=True)
class AffinePresentation:
    """Affine model: translations = standard basis of Z^n, one affine map.

    `gamma` is the (n+1) x (n+1) rational matrix [[T, 0], [v, 1]] acting on
    row vectors [x | 1]; v = e/p for the distinguished fixed vector e (v = 0
    in the semidirect variant, which is not torsion-free).
    """

    p: int
    gamma: tuple  # rows of Fractions

    @property
    def n(self):
        return len(self.gamma) - 1

    @property
    def linear_part(self) -> IntMatrix:
        n = self.n
        return IntMatrix([
            [int(self.gamma[i][j]) for j in range(n)] for i in range(n)
        ])

    @property
    def translation_part(self):
        return tuple(self.gamma[self.n][: self.n])


def _ideals_for_class(cls: BieberbachClass, h: ClassGroupData):
    """b + c ideals whose class product realizes theta (theta on the last one)."""
    count = cls.b + cls.c
    ideals = [unit_ideal(cls.p) for _ in range(count)]
    if h.factors and any(cls.theta):
        carrier = unit_ideal(cls.p)
        for ref, e in zip(reference_ideals(h), cls.theta):
            if e:
                carrier = ideal_mul(carrier, ideal_pow(ref, e))
        ideals[-1] = carrier
    return ideals


def build_affine(cls: BieberbachClass, h: ClassGroupData, semidirect=False) -> AffinePresentation:
    """Canonical affine model; gamma^p = translation by e is verified exactly.

    With `semidirect=True` the translation part is zero; the result is a
    crystallographic but not torsion-free model.
    """
    action = construct(cls.p, cls.a, cls.b, cls.c, _ideals_for_class(cls, h))
    return affine_from_action(action, semidirect=semidirect)


def affine_from_action(action: LatticeAction, semidirect=False) -> AffinePresentation:
    """Wrap a lattice action as an affine map with v = e_1/p (or v = 0)."""
    p, n = action.p, action.n
    t = action.matrix
    rows = []
    for i in range(n):
        rows.append(tuple(Fraction(t[i, j]) for j in range(n)) + (Fraction(0),))
    v = [Fraction(0)] * n
    if not semidirect:
        v[0] = Fraction(1, p)
    rows.append(tuple(v) + (Fraction(1),))
    pres = AffinePresentation(p, tuple(rows))
    if not semidirect:
        power = _affine_pow(pres.gamma, p)
        expected = [
            tuple(Fraction(int(i == j)) for j in range(n)) + (Fraction(0),)
            for i in range(n)
        ]
        e = [Fraction(int(j == 0)) for j in range(n)]
        expected.append(tuple(e) + (Fraction(1),))
        if list(power) != expected:
            raise ArithmeticError("gamma^p is not the expected translation")
    return pres


def _affine_pow(rows, k):
    n = len(rows)
    out = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    cur = [list(r) for r in rows]
    while k:
        if k & 1:
            out = [[sum(a * b for a, b in zip(row, col)) for col in zip(*cur)] for row in out]
        k >>= 1
        if k:
            cur = [[sum(a * b for a, b in zip(row, col)) for col in zip(*cur)] for row in cur]
    return tuple(tuple(r) for r in out)


def torsion_free_check(pres: AffinePresentation) -> bool:
    """True iff no power of gamma (composed with translations) has finite order.

    Criterion: k * (p*v) stays outside N_T(Z^n) for k = 1..p-1, i.e. the
    distinguished vector has order p in the fixed-lattice quotient by norms.
    """
    p, n = pres.p, pres.n
    t = pres.linear_part
    e = [x * p for x in pres.translation_part]
    if any(x.denominator != 1 for x in e):
        raise ValueError("p * v is not integral")
    e = [int(x) for x in e]
    norm = identity(n)
    power = t
    for _ in range(p - 1):
        norm = norm + power
        power = power * t
    h, u = hnf(norm)
    image_rows = [r for r in h.data if any(r)]
    image = IntMatrix(image_rows) if image_rows else None
    for k in range(1, p):
        target = [k * x for x in e]
        if image is None:
            if not any(target):
                return False
            continue
        if solve_left(image, target) is not None:
            return False
    return True


# ---------------------------------------------------------------------------
# Isomorphism decisions and the genus


def group_iso(b1: BieberbachClass, b2: BieberbachClass, h: ClassGroupData) -> bool:
    """Abstract group isomorphism: equality of canonical tuples."""
    if b1.p != b2.p:
        raise ValueError("different p")
    if b1.triple != b2.triple:
        return False
    spec = SubgroupSpec.C2 if b1.exceptional else SubgroupSpec.FULL_GALOIS
    if not h.factors:
        return True
    return classdata.canonical_orbit_rep(h, spec, b1.theta) == classdata.canonical_orbit_rep(h, spec, b2.theta)


def profinite_iso(b1: BieberbachClass, b2: BieberbachClass) -> bool:
    """Profinite completions agree iff the (a, b, c) triples agree."""
    if b1.p != b2.p:
        raise ValueError("different p")
    if b1.dimension != b2.dimension:
        raise ValueError("different dimensions")
    return b1.triple == b2.triple


def genus_size(cls: BieberbachClass, h: ClassGroupData) -> int:
    spec = SubgroupSpec.C2 if cls.exceptional else SubgroupSpec.FULL_GALOIS
    return classdata.orbit_count(h, spec)


def genus_members(cls: BieberbachClass, h: ClassGroupData):
    """One class per orbit with cls's triple; contains cls; pairwise
    profinitely isomorphic and pairwise non-isomorphic (asserted)."""
    spec = SubgroupSpec.C2 if cls.exceptional else SubgroupSpec.FULL_GALOIS
    members = [
        make_class(cls.p, cls.a, cls.b, cls.c, rep, h)
        for rep in classdata.orbits(h, spec)
    ]
    assert cls in members
    for i, m1 in enumerate(members):
        for m2 in members[i + 1 :]:
            assert not group_iso(m1, m2, h)
            assert profinite_iso(m1, m2)
    return members


def enumerate_classes(n, p, h: ClassGroupData) -> dict:
    """All classification tuples in dimension n, plus the profinite classes."""
    iso = []
    triples = []
    c = 0
    while c * p <= n:
        b = 0
        while b * (p - 1) + c * p <= n:
            a = n - b * (p - 1) - c * p
            if a > 0 and (b, c) != (0, 0):
                triples.append((a, b, c))
                spec = SubgroupSpec.C2 if (a == 1 and c == 0) else SubgroupSpec.FULL_GALOIS
                for rep in classdata.orbits(h, spec):
                    iso.append(make_class(p, a, b, c, rep, h))
            b += 1
        c += 1
    triples.sort()
    iso.sort(key=lambda cls: (cls.triple, cls.theta))
    return {"iso_classes": iso, "profinite_classes": triples}


# ---------------------------------------------------------------------------
# Profinite fingerprints


def fingerprint(pres: AffinePresentation, moduli) -> dict:
    """Abelianization and congruence invariants of the affine model.

    Abelianization: cokernel of the stacked relation matrix over generators
    (t_1..t_n, gamma): rows of (T - I) with zero gamma-column, plus the
    gamma^p = e relation.  Congruence data per modulus m: elementary divisors
    of (T - I) and of N_T reduced mod m (gcd with m; 0 divisors become m).
    """
    p, n = pres.p, pres.n
    t = pres.linear_part
    e = [int(x * p) for x in pres.translation_part]
    tm1 = t - identity(n)
    rel = [list(tm1.row(i)) + [0] for i in range(n)]
    rel.append([-x for x in e] + [p])
    divs = snf_divisors(IntMatrix(rel))
    nonzero = [d for d in divs if d]
    free_rank = (n + 1) - len(nonzero)
    norm = identity(n)
    power = t
    for _ in range(p - 1):
        norm = norm + power
        power = power * t
    congruence = {}
    for m in moduli:
        congruence[int(m)] = {
            "tm1": _divisors_mod(tm1, n, m),
            "norm": _divisors_mod(norm, n, m),
        }
    return {
        "abelianization": {"divisors": nonzero, "free_rank": free_rank},
        "congruence": congruence,
    }


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors_mod(mat, n, m):
    divs = list(snf_divisors(mat))
    divs += [0] * (n - len(divs))
    return [_gcd(d, m) if d else m for d in divs]


def format_affine(pres: AffinePresentation) -> str:
    """Text form: header "p n", then the (n+1)-square rational matrix."""
    lines = ["%d %d" % (pres.p, pres.n)]
    for row in pres.gamma:
        lines.append(" ".join(
            str(x.numerator) if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)
            for x in row
        ))
    return "\n".join(lines) + "\n"


def parse_affine(text: str) -> AffinePresentation:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    p, n = (int(tok) for tok in lines[0].split())
    rows = []
    for ln in lines[1 : n + 2]:
        rows.append(tuple(Fraction(tok) for tok in ln.split()))
    if len(rows) != n + 1 or any(len(r) != n + 1 for r in rows):
        raise ValueError("affine matrix must be (n+1) x (n+1)")
    return AffinePresentation(p, tuple(rows))
