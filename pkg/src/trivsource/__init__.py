"""Exact computation of orthogonal units of trivial source rings.

For a finite permutation group G and a prime p the toolkit computes, in
exact arithmetic: tables of marks and Burnside-ring units, the fusion
system on a Sylow p-subgroup and the fused Burnside ring with its units,
coherent tuples of homomorphisms to roots of unity, species tuples, and
the resulting description of the orthogonal unit group of the trivial
source ring.
"""

__version__ = "0.1.0"

from .errors import (
    CapExceeded,
    DimensionMismatch,
    EnumerationCapExceeded,
    IntegralityViolation,
    InvalidPermutation,
    NotDownwardClosed,
    NotFusionStable,
    NotNormal,
    NotRootOfUnity,
    OrderCapExceeded,
    SplitMismatch,
)
from .permgroup import (
    AbelianStructure,
    FiniteGroup,
    Permutation,
    QuotientGroup,
    Subgroup,
    SubgroupClasses,
    all_subgroup_classes,
    centralizer,
    conjugacy_classes,
    exponent_pprime,
    generated_subgroup,
    group_from_generators,
    normalizer,
    p_part,
    p_subgroup_classes,
    pprime_abelianization,
    quotient,
    sylow_subgroup,
)
from .zlinalg import (
    IntMatrix,
    SmithDecomposition,
    determinant,
    hermite_normal_form,
    kernel_basis,
    kernel_mod_orders,
    smith_normal_form,
    solve_integral,
)
