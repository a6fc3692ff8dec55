use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("generator count mismatch: {0} vs {1}")]
    GeneratorMismatch(usize, usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("index {index} out of range for {bound} generators")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the commutation rule is not homogeneous (entries must be linear forms)")]
    NonHomogeneousRule,
    #[error("operation requires exactly two generators, rule has {0}")]
    NotTwoVariables(usize),
    #[error("matrix is singular over the base field")]
    SingularMatrix,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("scalar {0} is not representable in the field (denominator vanishes)")]
    NotRepresentable(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("degree bound must be at least {min}, got {got}")]
    InvalidDegree { min: usize, got: usize },
    #[error("ambient dimension {n}^{degree} exceeds the supported limit")]
    TooLarge { n: usize, degree: usize },
    #[error("constructed component at degree {0} is not closed under multiplication by generators")]
    IdealPropertyViolated(usize),
    #[error("polynomial {0} is not homogeneous")]
    InhomogeneousPolynomial(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
