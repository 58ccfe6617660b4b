"""Exact computer algebra for degenerate affine Hecke and trigonometric
Cherednik algebras, their standard and induced modules, affine coinvariant
fibers, and the intertwining operators between them.

Everything is computed over the rationals with zero tolerance; operator
identities from the theory become exact matrix identities on finite
truncations.
"""

from .scalars import (
    NonGenericError,
    ParameterSet,
    Scalar,
    in_lattice,
    is_generic,
)

__all__ = [
    "NonGenericError",
    "ParameterSet",
    "Scalar",
    "in_lattice",
    "is_generic",
]

__version__ = "0.1.0"
