"""Symplectic eigenvalues, Williamson normal form and a symplectic Schur-Horn toolkit."""

from .errors import (
    ConstraintError,
    DefinitenessError,
    DimensionError,
    DomainError,
    NumericalError,
    SymhornError,
    SymmetryError,
)
from .horn import HornResult, construct_with_spectrum_and_diagonal, schur_check
from .linalg_core import (
    block_assemble,
    block_partition,
    direct_sum_pair,
    inv_sqrt_pd,
    is_positive_definite,
    is_symplectic,
    sqrt_pd,
    standard_symplectic_form,
    symmetric_eigendecomposition,
)
from .schurhorn import (
    ConstructionReport,
    ShearQuadruple,
    check_forward,
    check_symplectic_diagonal_bound,
    construct_arithmetic,
    construct_geometric,
    delta_c,
    delta_s,
    ds_of_symplectic_diagonal,
    shear_factor,
    squeeze_factor,
    symplectic_diagonal,
    verify_construction,
)
from .vecmaj import (
    MajorisationVerdict,
    is_in_sigma,
    is_majorized,
    is_weakly_submajorized,
    is_weakly_supermajorized,
    sort_descending,
    waterfill_intermediate,
)
from .williamson import (
    SkewCanonicalForm,
    WilliamsonDecomposition,
    skew_canonical_form,
    symplectic_eigenvalues,
    williamson_decomposition,
)

__version__ = "0.1.0"
