"""Exact equivariant Schubert calculus on Peterson varieties of any finite type."""

__version__ = "0.1.0"

from .errors import (
    GroupTooLarge,
    InternalInconsistency,
    NonCartan,
    NonIntegralExpansion,
    NotARoot,
    NotCoxeter,
    UnknownType,
    VerificationFailure,
)
from .kernels import BACKEND
from .localization import billey_restrict, restriction_matrix
from .peterson import (
    PetersonBasis,
    build_matrices,
    component_factorization_check,
    conjecture_multiplicity,
    multiplicity,
    multiplicity_via_heights,
    pullback_expansion,
    schubert_expansion,
    stability_check,
    structure_constants,
    verify_conjecture,
    verify_duality,
    verify_positivity,
)
from .rootsystem import DynkinSpec, RootSystem, build, mask, members
from .scalars import GradedScalar
from .weyl import WeylElement, weyl_group
