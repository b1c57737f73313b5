use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("rays are linearly dependent")]
    DependentRays,

    #[error("zero vector cannot be a ray")]
    ZeroRay,

    #[error("vector {0} is not in the cone")]
    NotInCone(String),

    #[error("cone is not a face")]
    NotAFace,

    #[error("not a fan: cones {first} and {second} do not meet along a common face")]
    NotAFan { first: String, second: String },

    #[error("duplicate ray {0}")]
    DuplicateRay(String),

    #[error("cone {0} is not in the fan")]
    ConeNotInFan(String),

    #[error("cone does not lie in the rational span of the lattice")]
    NotInSpan,

    #[error("group assignment is invalid: {0}")]
    InvalidGroups(String),

    #[error("monoid assignment is invalid: {0}")]
    InvalidMonoids(String),

    #[error("generator certification failed: {0}")]
    CertificationFailure(String),

    #[error("seminormalized fan no longer satisfies the gluing conditions: {0}")]
    RevalidationFailure(String),

    #[error("enumeration limit exceeded: {0}")]
    EnumerationLimit(String),

    #[error("machine-integer overflow in enumeration")]
    Overflow,
}
