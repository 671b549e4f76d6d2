import random

import pytest

from flatgenus import classdata, cplattice as cp, cyclotomic as cy
from flatgenus.classdata import SubgroupSpec
from flatgenus.cplattice import LatticeAction
from flatgenus.intmat import IntMatrix, identity, inverse_unimodular


def companion_phi(p):
    """Companion matrix of 1 + x + ... + x^(p-1), acting on row vectors."""
    return cy.zeta_matrix(p)


def cyclic_permutation(p):
    rows = [[0] * p for _ in range(p)]
    for i in range(p):
        rows[i][(i + 1) % p] = 1
    return IntMatrix(rows)


def rand_unimodular(rng, n, steps=None):
    m = identity(n).to_lists()
    for _ in range(steps or 3 * n):
        i, j = rng.sample(range(n), 2)
        k = rng.randint(-3, 3)
        m[i] = [a + k * b for a, b in zip(m[i], m[j])]
    return IntMatrix(m)


class TestValidate:
    def test_identity(self):
        assert cp.validate(LatticeAction(5, identity(3))) == {"order": 1, "faithful": False}

    def test_permutation(self):
        assert cp.validate(LatticeAction(5, cyclic_permutation(5)))["order"] == 5

    def test_companion(self):
        assert cp.validate(LatticeAction(7, companion_phi(7)))["order"] == 7

    def test_rejects_wrong_order(self):
        with pytest.raises(ValueError):
            cp.validate(LatticeAction(5, 2 * identity(2)))


class TestInvariants:
    def test_identity_rank_one(self):
        assert cp.invariants(LatticeAction(5, identity(1))).triple == (1, 0, 0)

    def test_companion_is_ideal_type(self):
        for p in (3, 5, 7):
            assert cp.invariants(LatticeAction(p, companion_phi(p))).triple == (0, 1, 0)

    def test_regular_representation(self):
        for p in (2, 3, 5):
            assert cp.invariants(LatticeAction(p, cyclic_permutation(p))).triple == (0, 0, 1)

    def test_local_types(self):
        types = cp.local_types(LatticeAction(3, cyclic_permutation(3)))
        assert types == {"trivial": 0, "cyclo": 0, "regular": 1}


class TestConstruct:
    def test_trivial_block(self):
        assert cp.construct(5, 1, 0, 0).matrix == identity(1)

    def test_regular_from_unit_ideal(self):
        for p in (3, 5):
            action = cp.construct(p, 0, 0, 1, [cy.unit_ideal(p)])
            assert cp.invariants(action).triple == (0, 0, 1)

    def test_mixed_example(self):
        action = cp.construct(5, 1, 1, 0, [cy.split_prime_ideal(5, 11)])
        assert action.n == 5
        assert cp.invariants(action).triple == (1, 1, 0)

    def test_wrong_ideal_count(self):
        with pytest.raises(ValueError):
            cp.construct(5, 1, 1, 0, [])

    def test_extension_block_from_split_prime(self):
        action = cp.construct(7, 0, 0, 1, [cy.split_prime_ideal(7, 29)])
        assert cp.invariants(action).triple == (0, 0, 1)


class TestSteinitz:
    def test_trivial_class_field(self):
        # h_5 = 1 forces triviality
        h = classdata.class_group(5)
        action = cp.construct(5, 0, 2, 0, [cy.unit_ideal(5), cy.split_prime_ideal(5, 11)])
        assert cp.steinitz_class(action, h) == ()

    def test_no_ideal_part_rejected(self):
        h = classdata.class_group(5)
        with pytest.raises(ValueError):
            cp.steinitz_class(LatticeAction(5, identity(2)), h)

    def test_p23_split_prime_class(self):
        h = classdata.class_group(23)
        P = cy.split_prime_ideal(23, 47)
        action = cp.construct(23, 0, 1, 0, [P])
        assert cp.steinitz_class(action, h) == (1,)

    def test_p23_unit_ideal_trivial(self):
        h = classdata.class_group(23)
        action = cp.construct(23, 0, 1, 0, [cy.unit_ideal(23)])
        assert cp.steinitz_class(action, h) == (0,)

    def test_conjugation_invariance(self):
        h = classdata.class_group(23)
        P = cy.split_prime_ideal(23, 47)
        action = cp.construct(23, 0, 1, 0, [P])
        u = rand_unimodular(random.Random(3), action.n, steps=30)
        conj = LatticeAction(23, u * action.matrix * inverse_unimodular(u))
        assert cp.steinitz_class(conj, h) == (1,)


class TestIsomorphism:
    def test_p23_galois_twist(self):
        h = classdata.class_group(23)
        P = cy.split_prime_ideal(23, 47)
        Pg = cy.galois_apply(cy.GaloisElement(23, h.galois_generator), P)
        a1 = cp.construct(23, 0, 1, 0, [P])
        a2 = cp.construct(23, 0, 1, 0, [Pg])
        assert not cp.is_isomorphic(a1, a2, h)
        assert cp.is_semilinear_isomorphic(a1, a2, h)
        assert cp.genus_equivalent(a1, a2)

    def test_p23_vs_trivial_class(self):
        h = classdata.class_group(23)
        a1 = cp.construct(23, 0, 1, 0, [cy.split_prime_ideal(23, 47)])
        a2 = cp.construct(23, 0, 1, 0, [cy.unit_ideal(23)])
        assert not cp.is_isomorphic(a1, a2, h)
        assert not cp.is_semilinear_isomorphic(a1, a2, h)
        assert cp.genus_equivalent(a1, a2)  # locally isomorphic, globally not

    def test_self_iso(self):
        h = classdata.class_group(5)
        a = cp.construct(5, 1, 1, 0, [cy.split_prime_ideal(5, 11)])
        assert cp.is_isomorphic(a, a, h)
        assert cp.is_semilinear_isomorphic(a, a, h)

    def test_genus_requires_same_shape(self):
        a1 = cp.construct(5, 1, 1, 0, [cy.unit_ideal(5)])
        a2 = cp.construct(5, 0, 0, 1, [cy.unit_ideal(5)])
        assert a1.n == a2.n
        assert not cp.genus_equivalent(a1, a2)
        with pytest.raises(ValueError):
            cp.genus_equivalent(a1, cp.construct(5, 1, 0, 1, [cy.unit_ideal(5)]))


class TestSerialization:
    def test_action_roundtrip(self):
        action = cp.construct(5, 1, 1, 0, [cy.split_prime_ideal(5, 11)])
        assert cp.parse_lattice_action(cp.format_lattice_action(action)) == action

    def test_invariants_dict(self):
        inv = cp.DecompInvariants(1, 2, 0, (1,))
        assert cp.invariants_to_dict(inv) == {"a": 1, "b": 2, "c": 0, "steinitz": [1]}
        inv0 = cp.DecompInvariants(1, 0, 0)
        assert cp.invariants_to_dict(inv0)["steinitz"] is None
