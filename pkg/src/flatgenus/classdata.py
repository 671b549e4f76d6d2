"""Relative class numbers, class-group structure, and Galois orbit counting.

The class number h_p is computed from the Maillet determinant; the group
structure with its Galois action is built in for p <= 23 and can be supplied
by a validated JSON file for larger p.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from enum import Enum
from itertools import product

from .intmat import IntMatrix, det_bareiss, identity

ENUMERATION_GUARD = 10**6


class SubgroupSpec(Enum):
    """Which subgroup of the Galois group acts: everything, or order two."""

    FULL_GALOIS = "full"
    C2 = "c2"


def _primitive_root(p):
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in factors):
            return g
    raise ValueError("no primitive root found (p not prime?)")


def _prime_factors(n):
    out = set()
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def maillet_h_minus(p: int) -> int:
    """Relative class number h_p^- via the Maillet determinant.

    |det(R(a*b'))| / p^((p-3)/2) over a, b in 1..(p-1)/2 with b*b' = 1 mod p,
    R the least positive residue.  p = 2 returns 1 by convention.
    """
    if p == 2:
        return 1
    from .cyclotomic import is_prime

    if not is_prime(p):
        raise ValueError("p must be prime, got %r" % (p,))
    m = (p - 1) // 2
    rows = []
    for a in range(1, m + 1):
        row = []
        for b in range(1, m + 1):
            binv = pow(b, p - 2, p)
            row.append(a * binv % p)
        rows.append(row)
    det = abs(det_bareiss(IntMatrix(rows)))
    denom = p ** ((p - 3) // 2)
    h, r = divmod(det, denom)
    if r:
        raise ArithmeticError("Maillet determinant not divisible by p^((p-3)/2)")
    return h


@dataclass(frozen=True)
class ClassGroupData:
    """Finite abelian group H(Q(zeta_p)) with the action of a Galois generator.

    `factors` are cyclic orders d1 | d2 | ... (empty for the trivial group);
    `action` gives the image of the generators under sigma_g on exponent
    tuples (row convention: e -> e * action mod factors).  `reference_primes`
    lists split primes whose degree-one ideals realize the generators; they
    are builtin knowledge, not part of the serialized format.
    """

    p: int
    h_minus: int
    factors: tuple
    galois_generator: int
    action: IntMatrix | None
    provenance: str
    reference_primes: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        object.__setattr__(
            self, "reference_primes", tuple(int(q) for q in self.reference_primes)
        )
        validate_class_group(self)

    @property
    def order(self):
        out = 1
        for d in self.factors:
            out *= d
        return out

    def act(self, vec, mat=None):
        """Image of an exponent tuple under the action matrix (default sigma_g)."""
        if not self.factors:
            return ()
        a = self.action if mat is None else mat
        return tuple(
            sum(vec[i] * a[i, j] for i in range(len(vec))) % self.factors[j]
            for j in range(len(self.factors))
        )

    def subgroup_matrices(self, spec: SubgroupSpec):
        """The distinct action matrices of the chosen subgroup."""
        if not self.factors:
            return [None]
        if spec is SubgroupSpec.FULL_GALOIS:
            gen = self.action
        else:
            gen = self.action ** ((self.p - 1) // 2) if self.p > 2 else identity(len(self.factors))
        mats = []
        seen = set()
        cur = identity(len(self.factors))
        while True:
            key = self._mat_key(cur)
            if key in seen:
                break
            seen.add(key)
            mats.append(cur)
            cur = cur * gen
        return mats

    def _mat_key(self, mat):
        return tuple(
            tuple(mat[i, j] % self.factors[j] for j in range(len(self.factors)))
            for i in range(len(self.factors))
        )

    def elements(self):
        if not self.factors:
            return [()]
        total = self.order
        if total > ENUMERATION_GUARD:
            raise ValueError("class group too large to enumerate (%d elements)" % total)
        return list(product(*[range(d) for d in self.factors]))


def validate_class_group(h: ClassGroupData):
    errors = []
    from .cyclotomic import is_prime

    if not is_prime(h.p):
        errors.append("p = %r is not prime" % (h.p,))
    if h.h_minus < 1:
        errors.append("h_minus must be positive")
    order = 1
    for d in h.factors:
        order *= d
    if order != h.h_minus:
        errors.append("product of factors %r != h_minus %d" % (h.factors, h.h_minus))
    for d1, d2 in zip(h.factors, h.factors[1:]):
        if d2 % d1:
            errors.append("factors must form a divisibility chain")
    if h.factors:
        if h.p > 2:
            g = h.galois_generator
            ok_gen = 1 <= g < h.p and _is_primitive_root(g, h.p)
            if not ok_gen:
                errors.append("galois_generator %r is not a primitive root mod p" % (g,))
        k = len(h.factors)
        if h.action is None or h.action.rows != k or h.action.cols != k:
            errors.append("action must be a %d x %d integer matrix" % (k, k))
        else:
            det = det_bareiss(h.action)
            for d in h.factors:
                if math.gcd(det, d) != 1:
                    errors.append("action not invertible mod %d" % d)
            power = h.action ** (h.p - 1)
            for i in range(k):
                for j in range(k):
                    want = 1 if i == j else 0
                    if (power[i, j] - want) % h.factors[j]:
                        errors.append(
                            "action order does not divide p - 1 (fails at entry %d,%d)"
                            % (i, j)
                        )
                        break
                else:
                    continue
                break
    if errors:
        raise ValueError("invalid class group data: " + "; ".join(errors))


def _is_primitive_root(g, p):
    return all(pow(g, (p - 1) // q, p) != 1 for q in _prime_factors(p - 1))


_BUILTIN_SMALL = (2, 3, 5, 7, 11, 13, 17, 19)


def class_group(p: int, path=None, allow_override=False) -> ClassGroupData:
    """Builtin class-group data for p <= 23, or validated data from a file."""
    if path is not None:
        data = load_class_group(path)
        if data.p != p:
            raise ValueError("file is for p = %d, requested %d" % (data.p, p))
        if p <= 23 and not allow_override:
            raise ValueError(
                "builtin data exists for p = %d; pass allow_override to use the file" % p
            )
        return data
    if p in _BUILTIN_SMALL:
        return ClassGroupData(
            p=p,
            h_minus=1,
            factors=(),
            galois_generator=_primitive_root(p),
            action=None,
            provenance="builtin",
        )
    if p == 23:
        # H = Z/3, sigma_g inverts; generated by the class of a degree-one
        # ideal over 47 (cross-checked by the principality tests).
        return ClassGroupData(
            p=23,
            h_minus=3,
            factors=(3,),
            galois_generator=_primitive_root(23),
            action=IntMatrix([[-1]]),
            provenance="builtin",
            reference_primes=(47,),
        )
    raise ValueError("no builtin class-group data for p = %d; supply a file" % p)


def class_group_to_dict(h: ClassGroupData) -> dict:
    return {
        "p": h.p,
        "h_minus": h.h_minus,
        "factors": list(h.factors),
        "galois_generator": h.galois_generator,
        "action": h.action.to_lists() if h.action is not None else [],
        "provenance": h.provenance,
    }


def class_group_from_dict(d: dict) -> ClassGroupData:
    action = d.get("action") or []
    return ClassGroupData(
        p=int(d["p"]),
        h_minus=int(d["h_minus"]),
        factors=tuple(int(x) for x in d["factors"]),
        galois_generator=int(d["galois_generator"]),
        action=IntMatrix(action) if action else None,
        provenance=str(d["provenance"]),
    )


def load_class_group(path) -> ClassGroupData:
    with open(path) as fh:
        return class_group_from_dict(json.load(fh))


def save_class_group(h: ClassGroupData, path):
    with open(path, "w") as fh:
        json.dump(class_group_to_dict(h), fh, sort_keys=True, indent=1)
        fh.write("\n")


# ---------------------------------------------------------------------------
# Orbit counting


def orbits(h: ClassGroupData, spec: SubgroupSpec):
    """Orbit representatives (lexicographically minimal tuples), sorted."""
    mats = h.subgroup_matrices(spec)
    elems = h.elements()
    seen = set()
    reps = []
    for v in elems:
        if v in seen:
            continue
        orbit = {h.act(v, m) for m in mats} if h.factors else {v}
        seen |= orbit
        reps.append(min(orbit))
    reps.sort()
    _burnside_check(h, mats, len(reps))
    return reps


def orbit_count(h: ClassGroupData, spec: SubgroupSpec) -> int:
    return len(orbits(h, spec))


def orbit_of(h: ClassGroupData, spec: SubgroupSpec, vec):
    """The orbit of one exponent tuple, sorted."""
    if not h.factors:
        return [()]
    vec = tuple(x % d for x, d in zip(vec, h.factors))
    return sorted({h.act(vec, m) for m in h.subgroup_matrices(spec)})


def canonical_orbit_rep(h: ClassGroupData, spec: SubgroupSpec, vec):
    return orbit_of(h, spec, vec)[0]


def _burnside_check(h, mats, direct_count):
    if not h.factors:
        return
    total = 0
    elems = h.elements()
    for m in mats:
        total += sum(1 for v in elems if h.act(v, m) == v)
    if total != direct_count * len(mats):
        raise AssertionError("Burnside count disagrees with direct enumeration")
