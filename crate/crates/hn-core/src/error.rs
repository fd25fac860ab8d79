use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnError {
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("vector length mismatch")]
    LengthMismatch,
    #[error("variable index out of range")]
    IndexOutOfRange,
    #[error("matrix is not square")]
    NotSquare,
    #[error("order of the series is less than 2")]
    OrderTooSmall,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not Hessian nilpotent")]
    NotHessianNilpotent,
    #[error("polynomial is not harmonic")]
    NotHarmonic,
    #[error("Hessian at the origin is not nilpotent")]
    HessianAtOriginNotNilpotent,
    #[error("map has a constant term")]
    ConstantTermInMap,
    #[error("linear part of the map is not invertible")]
    NonInvertibleLinearPart,
    #[error("Jacobian of a series coefficient is not symmetric")]
    NonSymmetricJacobian,
    #[error("vector is not isotropic")]
    NotIsotropic,
    #[error("the isotropic powers are linearly dependent")]
    DependentForms,
    #[error("summands are not disjoint")]
    NotDisjoint,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("degree too small for this formula")]
    DegreeTooSmall,
    #[error("ring not supported by this operation")]
    UnsupportedRing,
    #[error("operator does not strictly decrease degree")]
    NonDegreeDecreasing,
    #[error("ring has no square root of -1")]
    NoImaginaryUnit,
    #[error("size cap exceeded")]
    CapExceeded,
    #[error("internal identity violated: {0}")]
    IdentityViolation(&'static str),
}
