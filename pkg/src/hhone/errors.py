"""Exception types shared across the package."""


class HhoneError(Exception):
    """Base class for all package errors."""


class DomainMismatch(HhoneError):
    """Operands live over different coefficient domains (different p, or F_p vs Q)."""


class DimensionMismatch(HhoneError):
    """Shapes or ambient dimensions are incompatible."""


class InvalidParameters(HhoneError):
    """Constructor parameters violate a precondition (p not prime, e not dividing p-1, ...)."""


class AlgebraMismatch(HhoneError):
    """Elements or maps belong to different algebras."""


class NotSymmetric(HhoneError):
    """The algebra carries no symmetrizing form, or the supplied form fails its axioms."""


class NotABimodule(HhoneError):
    """A subspace used as a bimodule spec is not stable under both actions."""


class ScaleLimitExceeded(HhoneError):
    """Problem size exceeds the supported dense-solve limit."""


class NoSuchDerivation(HhoneError):
    """The requested monomial derivation does not exist for these parameters."""


class NotADerivation(HhoneError):
    """A linear map failed the Leibniz certification."""


class InvalidSocleMap(HhoneError):
    """A socle-valued assignment violates its preconditions."""


class PairingNotFound(HhoneError):
    """No dual basis solving the second-socle pairing conditions exists."""


class PreconditionFailed(HhoneError):
    """A mathematical precondition of the requested check does not hold."""


class NotCentral(HhoneError):
    """The acting element is not in the center of the algebra."""


class StructureMismatch(HhoneError):
    """Cohomology classes belong to different Lie structures."""
