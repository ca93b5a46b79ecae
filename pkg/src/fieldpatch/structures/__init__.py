"""Patching with structure: algebras, Galois algebras and differential modules."""

from .algebra import (
    AlgebraPresentation,
    check_algebra,
    check_algebra_exact,
    inner_automorphism,
    matrix_algebra,
    patch_algebra,
    product_algebra,
    quaternion_algebra,
    trivial_algebra,
)
from .diffmod import DiffModule, diffmod_demo, gauge, patch_diffmod, random_compatible_problem
from .galois import (
    BuildingBlock,
    CosetTable,
    FiniteGroup,
    GaloisAlgebra,
    KleinReport,
    building_block_quadratic,
    check_galois,
    coset_change_iso,
    check_equivariant_iso,
    induce_galois,
    klein4_demo,
    patch_galois,
    trivial_galois,
)
from .quaternion import QuaternionReport, quaternion_split_demo, sqrt_one_minus_xt

__all__ = [
    "AlgebraPresentation",
    "BuildingBlock",
    "CosetTable",
    "DiffModule",
    "FiniteGroup",
    "GaloisAlgebra",
    "KleinReport",
    "QuaternionReport",
    "building_block_quadratic",
    "check_algebra",
    "check_algebra_exact",
    "check_equivariant_iso",
    "check_galois",
    "coset_change_iso",
    "diffmod_demo",
    "gauge",
    "induce_galois",
    "inner_automorphism",
    "klein4_demo",
    "matrix_algebra",
    "patch_algebra",
    "patch_diffmod",
    "patch_galois",
    "product_algebra",
    "quaternion_algebra",
    "quaternion_split_demo",
    "random_compatible_problem",
    "sqrt_one_minus_xt",
    "trivial_algebra",
    "trivial_galois",
]
