"""hhone: exact outer-derivation Lie structure of q-commutation local algebras.

The package builds finite-dimensional algebras over prime fields (truncated
q-commutation algebras, a family of twisted group algebras, and integer lifts
of the q = -1 case), computes their derivation Lie algebras and degree-one
Hochschild cohomology exactly, and machine-checks a catalog of structural
claims (docs/claims.md) about dimensions, bases, brackets, socle bounds and
lattice purity.  The `hhone` CLI exposes verify/scan/lift/bench.
"""

from .kernels import BACKEND
from .errors import (
    AlgebraMismatch,
    DimensionMismatch,
    DomainMismatch,
    HhoneError,
    InvalidParameters,
    InvalidSocleMap,
    NoSuchDerivation,
    NotABimodule,
    NotADerivation,
    NotCentral,
    NotSymmetric,
    PairingNotFound,
    PreconditionFailed,
    ScaleLimitExceeded,
    StructureMismatch,
)
from .linalg import Matrix, Subspace, hermite_normal_form, nullspace, rank, rref

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "nullspace",
    "hermite_normal_form",
    "HhoneError",
    "DomainMismatch",
    "DimensionMismatch",
    "InvalidParameters",
    "AlgebraMismatch",
    "NotSymmetric",
    "NotABimodule",
    "ScaleLimitExceeded",
    "NoSuchDerivation",
    "NotADerivation",
    "InvalidSocleMap",
    "PairingNotFound",
    "PreconditionFailed",
    "NotCentral",
    "StructureMismatch",
    "__version__",
]
