from fractions import Fraction

import pytest

from flatgenus import bieberbach as bb, classdata


def h(p):
    return classdata.class_group(p)


class TestMakeClass:
    def test_klein_bottle(self):
        cls = bb.make_class(2, 1, 1, 0, (), h(2))
        assert cls.exceptional
        assert cls.dimension == 2

    def test_rejects_a_zero(self):
        with pytest.raises(ValueError, match="a = 0"):
            bb.make_class(5, 0, 1, 0, (), h(5))

    def test_rejects_bc_zero(self):
        with pytest.raises(ValueError, match=r"\(b, c\) = \(0, 0\)"):
            bb.make_class(23, 1, 0, 0, (), h(23))

    def test_theta_canonicalized_exceptional(self):
        # C2 orbit of (2,) in Z/3 under inversion is {(1,), (2,)}
        cls = bb.make_class(23, 1, 1, 0, (2,), h(23))
        assert cls.exceptional
        assert cls.theta == (1,)

    def test_theta_canonicalized_nonexceptional(self):
        cls = bb.make_class(23, 2, 1, 0, (2,), h(23))
        assert not cls.exceptional
        assert cls.theta == (1,)

    def test_theta_length_checked(self):
        with pytest.raises(ValueError, match="theta"):
            bb.make_class(23, 1, 1, 0, (1, 1), h(23))

    def test_dimension_op(self):
        assert bb.dimension(bb.make_class(2, 1, 1, 0, (), h(2))) == 2
        assert bb.dimension(bb.make_class(3, 1, 1, 0, (), h(3))) == 3
        assert bb.dimension(bb.make_class(23, 1, 0, 1, (0,), h(23))) == 24

    def test_dict_roundtrip(self):
        cls = bb.make_class(23, 1, 0, 1, (1,), h(23))
        d = bb.class_to_dict(cls)
        assert d["exceptional"] is False and d["dimension"] == 24
        assert bb.class_from_dict(d, h(23)) == cls


class TestAffine:
    def test_klein_bottle_model(self):
        pres = bb.build_affine(bb.make_class(2, 1, 1, 0, (), h(2)), h(2))
        assert pres.gamma == (
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(-1), Fraction(0)),
            (Fraction(1, 2), Fraction(0), Fraction(1)),
        )

    def test_gamma_power_is_translation(self):
        # verified internally by build_affine; also check an explicit power
        pres = bb.build_affine(bb.make_class(3, 1, 1, 0, (), h(3)), h(3))
        cube = bb._affine_pow(pres.gamma, 3)
        assert cube[3] == (Fraction(1), Fraction(0), Fraction(0), Fraction(1))

    def test_torsion_free(self):
        for p, tup in [(2, (1, 1, 0)), (3, (1, 1, 0)), (5, (1, 0, 1)), (7, (2, 1, 0))]:
            cls = bb.make_class(p, *tup, (), h(p))
            assert bb.torsion_free_check(bb.build_affine(cls, h(p)))

    def test_semidirect_fails_torsion_check(self):
        for p in (2, 3, 5):
            cls = bb.make_class(p, 1, 1, 0, (), h(p))
            semi = bb.build_affine(cls, h(p), semidirect=True)
            assert not bb.torsion_free_check(semi)

    def test_affine_serialization(self):
        cls = bb.make_class(3, 1, 1, 0, (), h(3))
        pres = bb.build_affine(cls, h(3))
        assert bb.parse_affine(bb.format_affine(pres)) == pres


class TestIsoDecisions:
    def test_self_iso(self):
        cls = bb.make_class(23, 1, 1, 0, (1,), h(23))
        assert bb.group_iso(cls, cls, h(23))
        assert bb.profinite_iso(cls, cls)

    def test_exceptional_c2_identification(self):
        h23 = h(23)
        b1 = bb.make_class(23, 1, 1, 0, (1,), h23)
        b2 = bb.make_class(23, 1, 1, 0, (2,), h23)
        assert bb.group_iso(b1, b2, h23)  # same C2 orbit {1,2}

    def test_exceptional_pair_distinct(self):
        h23 = h(23)
        b1 = bb.make_class(23, 1, 1, 0, (0,), h23)
        b2 = bb.make_class(23, 1, 1, 0, (1,), h23)
        assert not bb.group_iso(b1, b2, h23)
        assert bb.profinite_iso(b1, b2)

    def test_profinite_needs_same_triple(self):
        h23 = h(23)
        b1 = bb.make_class(23, 2, 1, 0, (0,), h23)
        b2 = bb.make_class(23, 1, 0, 1, (0,), h23)
        assert b1.dimension == b2.dimension == 24
        assert not bb.profinite_iso(b1, b2)


class TestGenus:
    def test_small_p_always_one(self):
        for p in (2, 3, 5, 7, 11, 13, 17, 19):
            cls = bb.make_class(p, 1, 1, 0, (), h(p))
            assert bb.genus_size(cls, h(p)) == 1

    def test_p23_exceptional(self):
        cls = bb.make_class(23, 1, 1, 0, (0,), h(23))
        assert bb.genus_size(cls, h(23)) == 2

    def test_p23_nonexceptional(self):
        cls = bb.make_class(23, 1, 0, 1, (0,), h(23))
        assert bb.genus_size(cls, h(23)) == 2

    def test_members_partition(self):
        h23 = h(23)
        cls = bb.make_class(23, 1, 1, 0, (1,), h23)
        members = bb.genus_members(cls, h23)
        assert len(members) == bb.genus_size(cls, h23)
        assert cls in members
        thetas = {m.theta for m in members}
        assert thetas == {(0,), (1,)}


class TestEnumeration:
    def test_klein_bottle_unique(self):
        result = bb.enumerate_classes(2, 2, h(2))
        assert len(result["iso_classes"]) == 1
        assert result["profinite_classes"] == [(1, 1, 0)]

    def test_three_dim_p3(self):
        assert len(bb.enumerate_classes(3, 3, h(3))["iso_classes"]) == 1

    def test_p23_dimension_scan(self):
        h23 = h(23)
        assert bb.enumerate_classes(22, 23, h23)["iso_classes"] == []
        r23 = bb.enumerate_classes(23, 23, h23)
        assert len(r23["iso_classes"]) == 2
        assert r23["profinite_classes"] == [(1, 1, 0)]
        r24 = bb.enumerate_classes(24, 23, h23)
        assert len(r24["iso_classes"]) == 4
        assert r24["profinite_classes"] == [(1, 0, 1), (2, 1, 0)]

    def test_below_p_minus_one_empty(self):
        for p in (3, 5, 7):
            for n in range(1, p - 1):
                assert bb.enumerate_classes(n, p, h(p))["iso_classes"] == []

    def test_genus_phenomenon_pairs(self):
        h23 = h(23)
        classes = bb.enumerate_classes(24, 23, h23)["iso_classes"]
        for i, b1 in enumerate(classes):
            for b2 in classes[i + 1 :]:
                if b1.triple == b2.triple:
                    assert not bb.group_iso(b1, b2, h23)
                    assert bb.profinite_iso(b1, b2)


class TestFingerprint:
    def test_klein_bottle_abelianization(self):
        pres = bb.build_affine(bb.make_class(2, 1, 1, 0, (), h(2)), h(2))
        fp = bb.fingerprint(pres, [2, 3])
        assert fp["abelianization"] == {"divisors": [1, 2], "free_rank": 1}

    def test_genus_pair_identical(self):
        h23 = h(23)
        fps = []
        for theta in [(0,), (1,)]:
            cls = bb.make_class(23, 1, 1, 0, theta, h23)
            pres = bb.build_affine(cls, h23)
            fps.append(bb.fingerprint(pres, [2, 3, 4, 5, 8, 9]))
        assert fps[0] == fps[1]

    def test_deterministic(self):
        pres = bb.build_affine(bb.make_class(3, 1, 1, 0, (), h(3)), h(3))
        assert bb.fingerprint(pres, [2, 9]) == bb.fingerprint(pres, [2, 9])
