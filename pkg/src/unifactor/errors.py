"""Exception taxonomy shared by all modules.

Every guard in the library raises one of these; the CLI maps them onto
exit codes (see ``unifactor.cli``).
"""


class UnifactorError(Exception):
    """Base class for all library errors."""


class ValidationError(UnifactorError):
    """Input file / object failed structural validation."""


class BadParameter(ValidationError):
    pass


class NotNilpotentPair(ValidationError):
    """alpha(v) too large for a shear to be corrected to exact nilpotency."""


class NotIsotropicPair(ValidationError):
    """omega(v, w) too large for a transvection."""


class NotSpecial(ValidationError):
    """Determinant is not one within tolerance."""


class OddDimension(ValidationError):
    pass


class DimensionOutOfRange(ValidationError):
    pass


class BadRadii(ValidationError):
    pass


class AtlasMismatch(ValidationError):
    """Two fields do not live on the same atlas/complex."""


class NotDiagonalAtlas(ValidationError):
    """Line-splitting pipeline needs diagonal transition matrices."""


class NotSymplectic(ValidationError):
    pass


class NotKahler(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class SingularDiagonal(ValidationError):
    pass


class IllConditioned(UnifactorError):
    """Condition number outside the supported region."""


class NotNearIdentity(UnifactorError):
    """A pivot guard fired: the input is outside the pivot-safe region."""


class SubdivisionOverflow(UnifactorError):
    """Homotopy subdivision would exceed the step budget."""


class HypothesisViolated(UnifactorError):
    """A gluing stage precondition failed on the sampled skeleton."""


class UnsupportedRank(UnifactorError):
    """Fiber rank outside the admissible range (real k >= 3, complex k >= 2)."""


class NotCompactDomain(UnifactorError):
    """Real-symplectic factorization requested on a complex with boundary."""
