"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
"""
import random

from flatgenus import bieberbach as bb
from flatgenus import classdata, cplattice as cp, cyclotomic as cy
from flatgenus.classdata import SubgroupSpec
from flatgenus.cplattice import LatticeAction
from flatgenus.intmat import IntMatrix, identity, inverse_unimodular, lattice_index_group


def test_criterion_1_class_numbers():
    for p in (3, 5, 7, 11, 13, 17, 19):
        assert classdata.maillet_h_minus(p) == 1
    assert classdata.maillet_h_minus(23) == 3
    assert classdata.maillet_h_minus(29) == 8
    assert classdata.maillet_h_minus(31) == 9
    print("PASS criterion 1: class numbers h_p^- (p <= 19 trivial; 23, 29, 31 nontrivial)")


def test_criterion_2_p23_ideal_arithmetic():
    P = cy.split_prime_ideal(23, 47)
    assert cy.ideal_norm(P) == 47

    r1 = cy.is_principal(P)
    assert r1.status == "not_found"

    r2 = cy.is_principal(cy.ideal_pow(P, 3))
    assert r2.status == "principal"
    assert abs(cy.elem_norm(r2.generator)) == 47**3

    Pbar = cy.galois_apply(cy.conjugation(23), P)
    r3 = cy.is_principal(cy.ideal_mul(P, Pbar))
    assert r3.status == "principal"
    print("PASS criterion 2: p=23 ideal arithmetic (P47 bounded-not-found, P47^3 and P47*conj principal)")


def test_criterion_3_orbit_and_genus_counts():
    h = classdata.class_group(23)
    assert classdata.orbit_count(h, SubgroupSpec.FULL_GALOIS) == 2
    assert classdata.orbit_count(h, SubgroupSpec.C2) == 2
    exceptional = bb.make_class(23, 1, 1, 0, (0,), h)
    assert exceptional.exceptional
    assert bb.genus_size(exceptional, h) == 2
    nonexceptional = bb.make_class(23, 1, 0, 1, (0,), h)
    assert not nonexceptional.exceptional
    assert bb.genus_size(nonexceptional, h) == 2
    print("PASS criterion 3: p=23 orbit counts and genus sizes all equal 2")


def test_criterion_4_enumeration_golden_values():
    assert len(bb.enumerate_classes(2, 2, classdata.class_group(2))["iso_classes"]) == 1
    assert len(bb.enumerate_classes(3, 3, classdata.class_group(3))["iso_classes"]) == 1
    h23 = classdata.class_group(23)
    assert bb.enumerate_classes(22, 23, h23)["iso_classes"] == []
    r23 = bb.enumerate_classes(23, 23, h23)
    assert len(r23["iso_classes"]) == 2 and len(r23["profinite_classes"]) == 1
    r24 = bb.enumerate_classes(24, 23, h23)
    assert len(r24["iso_classes"]) == 4 and len(r24["profinite_classes"]) == 2
    # low dimensions: every class over every admissible p has genus 1
    for p in (2, 3, 5, 7, 11, 13, 17, 19):
        h = classdata.class_group(p)
        for n in range(1, 22):
            for cls in bb.enumerate_classes(n, p, h)["iso_classes"]:
                assert bb.genus_size(cls, h) == 1
    print("PASS criterion 4: enumeration golden values and genus-1 range n <= 21")


def _random_instance(rng, p):
    """Random valid (a, b, c) with n <= 20 and at least one summand."""
    while True:
        nmax = 20
        c = rng.randint(0, nmax // p)
        b = rng.randint(0, (nmax - c * p) // (p - 1)) if p > 2 else rng.randint(0, nmax - c * p)
        a = rng.randint(0, nmax - c * p - b * (p - 1))
        if a + b + c > 0:
            return a, b, c


_SPLIT_PRIMES = {
    2: [3, 5, 7, 11, 13],
    3: [7, 13, 19, 31, 37],
    5: [11, 31, 41, 61, 71],
    7: [29, 43, 71],
}


def _bounded_unimodular(rng, n, limit=3):
    m = identity(n).to_lists()
    for _ in range(6 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            continue
        k = rng.choice((-1, 1))
        cand = [a + k * b for a, b in zip(m[i], m[j])]
        if max(abs(x) for x in cand) <= limit:
            m[i] = cand
    return IntMatrix(m)


def test_criterion_5_decomposition_property_suite():
    rng = random.Random(20260826)
    seen = []
    for trial in range(200):
        p = rng.choice((2, 3, 5, 7))
        h = classdata.class_group(p)
        a, b, c = _random_instance(rng, p)
        ideals = [
            rng.choice([None] + _SPLIT_PRIMES[p]) for _ in range(b + c)
        ]
        ideals = [
            cy.unit_ideal(p) if q is None else cy.split_prime_ideal(p, q)
            for q in ideals
        ]
        base = cp.construct(p, a, b, c, ideals)
        u = _bounded_unimodular(rng, base.n)
        action = LatticeAction(p, u * base.matrix * inverse_unimodular(u))

        inv = cp.invariants(action)
        assert inv.triple == (a, b, c), (trial, p, inv.triple, (a, b, c))

        # Tate H^0 dimension equals a
        from flatgenus.cplattice import _norm_matrix, _row_lattice
        from flatgenus.intmat import saturated_kernel

        fixed = saturated_kernel(action.matrix - identity(action.n))
        image = _row_lattice(_norm_matrix(action))
        divs = lattice_index_group(image, fixed)
        assert divs == (p,) * a

        assert cp.local_types(action) == {"trivial": a, "cyclo": b, "regular": c}

        if b + c:
            # h_p = 1 for p <= 7: the product of input classes is trivial
            assert cp.steinitz_class(action, h) == ()

        assert cp.genus_equivalent(action, base)
        assert cp.is_isomorphic(action, base, h)
        assert cp.is_semilinear_isomorphic(action, base, h)
        seen.append((p, (a, b, c), action))

    # cross-instance: equal triples at the same p are genus equivalent, and the
    # implication chain iso => semilinear => genus holds
    h_by_p = {p: classdata.class_group(p) for p in (2, 3, 5, 7)}
    by_shape = {}
    for p, triple, action in seen:
        by_shape.setdefault((p, action.n), []).append((triple, action))
    checked = 0
    for (p, _), group in by_shape.items():
        for (t1, a1), (t2, a2) in zip(group, group[1:]):
            if checked >= 40:
                break
            same_genus = cp.genus_equivalent(a1, a2)
            assert same_genus == (t1 == t2)
            if cp.is_isomorphic(a1, a2, h_by_p[p]):
                assert cp.is_semilinear_isomorphic(a1, a2, h_by_p[p])
                assert same_genus
            checked += 1
    print(
        "PASS criterion 5: 200 randomized decomposition instances "
        "(roundtrip, H^0, local types, Steinitz, %d equivalence pairs)" % checked
    )


def test_criterion_6_torsion_freeness():
    cases = [
        (2, (1, 1, 0), ()),
        (3, (1, 1, 0), ()),
        (3, (1, 0, 1), ()),
        (5, (2, 1, 0), ()),
        (5, (1, 0, 1), ()),
        (7, (1, 1, 1), ()),
        (23, (1, 1, 0), (0,)),
        (23, (1, 1, 0), (1,)),
        (23, (1, 0, 1), (1,)),
    ]
    for p, (a, b, c), theta in cases:
        h = classdata.class_group(p)
        cls = bb.make_class(p, a, b, c, theta, h)
        model = bb.build_affine(cls, h)  # internally verifies gamma^p = e
        assert bb.torsion_free_check(model)
        semi = bb.build_affine(cls, h, semidirect=True)
        assert not bb.torsion_free_check(semi)
    print("PASS criterion 6: affine models torsion-free, v=0 semidirect variants are not")


def test_criterion_7_genus_pair_indistinguishability():
    h = classdata.class_group(23)
    pair = [bb.make_class(23, 1, 1, 0, theta, h) for theta in ((0,), (1,))]
    assert not bb.group_iso(pair[0], pair[1], h)
    assert bb.profinite_iso(pair[0], pair[1])
    moduli = [2, 3, 4, 5, 8, 9]
    fps = [bb.fingerprint(bb.build_affine(cls, h), moduli) for cls in pair]
    assert fps[0] == fps[1]
    print("PASS criterion 7: p=23 genus pair non-isomorphic, profinitely equal, identical fingerprints")
