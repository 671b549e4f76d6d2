"""Exact-arithmetic toolkit for prime-order integral lattice actions and the
classification of flat-manifold fundamental groups with prime holonomy."""

from .intmat import IntMatrix, hnf, snf, snf_divisors, saturated_kernel
from .shortvec import lll_reduce, enumerate_short_vectors
from .cyclotomic import (
    CycloElem,
    CycloIdeal,
    GaloisElement,
    elem_norm,
    galois_apply,
    ideal_mul,
    ideal_norm,
    is_principal,
    split_prime_ideal,
    unit_ideal,
)
from .classdata import ClassGroupData, SubgroupSpec, class_group, maillet_h_minus, orbit_count
from .cplattice import (
    DecompInvariants,
    LatticeAction,
    construct,
    genus_equivalent,
    invariants,
    is_isomorphic,
    is_semilinear_isomorphic,
    steinitz_class,
)
from .bieberbach import (
    AffinePresentation,
    BieberbachClass,
    build_affine,
    enumerate_classes,
    fingerprint,
    genus_members,
    genus_size,
    group_iso,
    make_class,
    profinite_iso,
    torsion_free_check,
)

__version__ = "0.1.0"
