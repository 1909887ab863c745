use thiserror::Error;

/// Errors shared across the crate. Every variant corresponds to a violated
/// precondition or a failed certificate, never to a numerical tolerance.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("sign query on a scalar with a nonzero imaginary coefficient")]
    NonRealScalar,
    #[error("square root requested of a nonpositive rational")]
    NonpositiveRadicand,
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("scalar is not rational: {0}")]
    NotRational(String),
    #[error("operands use different variable counts: {0} vs {1}")]
    VariableCountMismatch(usize, usize),
    #[error("leading coefficient of the divisor is zero")]
    ZeroDivisor,
    #[error("matrix is not Hermitian at entry ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("denominator polynomial is identically zero")]
    ZeroDenominator,
    #[error("denominator must be nonvanishing at the origin for annulus maps")]
    DenominatorVanishesAtOrigin,
    #[error("squared radius must satisfy {0}")]
    RadiusOutOfRange(&'static str),
    #[error("sphere-to-sphere division left a nonzero remainder for pair ({0}, {1})")]
    CertificateFailure(String, String),
    #[error("maps must share the same source dimension: {0} vs {1}")]
    SourceDimensionMismatch(usize, usize),
    #[error("maps must share the same denominator for juxtaposition")]
    DenominatorMismatch,
    #[error("juxtaposition weight must lie strictly between 0 and 1")]
    WeightOutOfRange,
    #[error("matrix is not unitary at entry ({0}, {1})")]
    NotUnitary(usize, usize),
    #[error("matrix size {0} does not match expected size {1}")]
    SizeMismatch(usize, usize),
    #[error("Hermitian matrix has signature ({0}, {1}), expected ({2}, {3})")]
    WrongSignature(usize, usize, usize, usize),
    #[error("target dimension {0} too small: need at least {1}")]
    TargetDimensionTooSmall(usize, usize),
    #[error("padding constant must satisfy 0 <= c < 1")]
    PaddingConstantOutOfRange,
    #[error("affine embedding requires 0 < s <= t < 1")]
    EmbeddingParametersOutOfRange,
    #[error("no linear-fractional intertwining exists: {0}")]
    NoIntertwining(String),
    #[error("orbit seed sphere must be strictly inner: s < 1 and t < 1")]
    OrbitSphereNotInner,
    #[error("invariant-sphere solver requires Gaussian-rational Hermitian products; found radical entry {0}")]
    RadicalGramEntry(String),
    #[error("map degenerate for parametric solving: {0}")]
    DegenerateParametricSystem(&'static str),
    #[error("no gap decomposition exists for this map and radius")]
    NoGapDecomposition,
    #[error("classification contradiction: {0}")]
    ClassificationContradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
