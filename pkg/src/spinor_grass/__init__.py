"""Exact-arithmetic Plucker and Cartan coordinates on isotropic Grassmannians.

The package computes determinantal (Plucker) and Pfaffian (Cartan)
coordinate systems of N-planes in the sum of a space with its dual, all
over exact rational scalars, and ships a verification engine plus CLI
for the bilinear identities tying the two together - chiefly the
Pfaffian analog of the Cauchy-Binet expansion of minors of a skew
matrix over its principal-minor Pfaffians.
"""

from .exterior import (
    Multivector,
    beta0,
    beta_form,
    c_operator,
    gamma_linear,
    gamma_monomial,
    gamma_nform,
    hodge_star,
    scalar_product,
    wedge,
)
from .grassmann import (
    CartanCoordinates,
    Frame,
    PluckerCoordinates,
    affine_chart,
    big_cell_frame,
    cartan_big_cell,
    cartan_coordinates,
    cartan_image,
    cartan_pfaffians,
    iota_embed,
    is_isotropic,
    plucker_coordinates,
    plucker_nform,
    projective_equal,
)
from .identities import (
    CheckReport,
    check_cartan_relations,
    check_cauchy_binet_pfaffian,
    check_giambelli,
    check_main_theorem,
    check_null_relations,
    check_plucker_relations,
    check_wedge_power_replay,
    run_suite,
)
from .indexsets import IndexSet, delta_bracket, mu_count, nu_exponent, signed_perm_sign, split_sign
from .linalg import Matrix, SkewMatrix, det_exact, pfaffian, random_skew
from .partitions import Partition, StrictPartition

__version__ = "0.1.0"

__all__ = [
    "CartanCoordinates",
    "CheckReport",
    "Frame",
    "IndexSet",
    "Matrix",
    "Multivector",
    "Partition",
    "PluckerCoordinates",
    "SkewMatrix",
    "StrictPartition",
    "affine_chart",
    "beta0",
    "beta_form",
    "big_cell_frame",
    "c_operator",
    "cartan_big_cell",
    "cartan_coordinates",
    "cartan_image",
    "cartan_pfaffians",
    "check_cartan_relations",
    "check_cauchy_binet_pfaffian",
    "check_giambelli",
    "check_main_theorem",
    "check_null_relations",
    "check_plucker_relations",
    "check_wedge_power_replay",
    "delta_bracket",
    "det_exact",
    "gamma_linear",
    "gamma_monomial",
    "gamma_nform",
    "hodge_star",
    "iota_embed",
    "is_isotropic",
    "mu_count",
    "nu_exponent",
    "pfaffian",
    "plucker_coordinates",
    "plucker_nform",
    "projective_equal",
    "random_skew",
    "run_suite",
    "scalar_product",
    "signed_perm_sign",
    "split_sign",
    "wedge",
]
