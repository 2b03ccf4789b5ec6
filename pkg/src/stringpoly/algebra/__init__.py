"""Exact arithmetic substrate: rational/integer linear algebra and symbolic Laurent polynomials."""
from .laurent import (
    CoeffMonomial,
    CoeffSpace,
    RationalExpr,
    SymbolicLaurent,
    exact_divide,
    laurent_add,
    laurent_mul,
)
from .linalg import (
    IntegerLattice,
    affine_rank,
    hnf,
    integer_kernel,
    lattice_contains,
    lattice_saturation_index,
    nullspace,
    rank,
    rref,
    smith_invariants,
    solve,
)

__all__ = [
    "CoeffMonomial", "CoeffSpace", "RationalExpr", "SymbolicLaurent", "exact_divide",
    "laurent_add", "laurent_mul", "IntegerLattice", "affine_rank", "hnf", "integer_kernel",
    "lattice_contains", "lattice_saturation_index", "nullspace", "rank", "rref",
    "smith_invariants", "solve",
]
