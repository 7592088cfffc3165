"""unifactor: unipotent factorization of determinant-one matrix fields.

The package factors special (det-one) automorphism fields over
triangulated domains into elementary shears and symplectic transvections,
and machine-verifies every output chain.
"""

from .errors import (  # noqa: F401
    AtlasMismatch,
    BadParameter,
    BadRadii,
    DimensionOutOfRange,
    HypothesisViolated,
    IllConditioned,
    NotCompactDomain,
    NotDiagonalAtlas,
    NotIsotropicPair,
    NotKahler,
    NotNearIdentity,
    NotNilpotentPair,
    NotPositiveDefinite,
    NotSpecial,
    NotSymplectic,
    OddDimension,
    SingularDiagonal,
    SubdivisionOverflow,
    UnifactorError,
    UnsupportedRank,
    ValidationError,
)
from .linalg import (  # noqa: F401
    ShearFactor,
    determinant,
    elementary_shear,
    is_unipotent_rank_le,
    matrix_exp,
    operator_norm,
)
from .pointwise import (  # noqa: F401
    PointFactorization,
    compose_factors,
    diagonal_to_elementary,
    gauss_jordan_near_identity,
    gram_schmidt_reduce,
)
from .symplectic import (  # noqa: F401
    TransvectionFactor,
    is_symplectic,
    standard_omega,
    symplectic_gauss_jordan_near_identity,
    symplectic_gram_schmidt_reduce,
    transvection,
)

__version__ = "0.1.0"
