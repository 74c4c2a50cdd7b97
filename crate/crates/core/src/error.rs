use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("s_max must be a positive integer, got {0}")]
    InvalidDeformation(i64),

    #[error("index {index} outside the admissible range {min}..={max}")]
    IndexOutOfRange { index: i64, min: i64, max: i64 },

    #[error("lattice window [{j_min}, {j_max}] must satisfy j_min < j_max with at least 5 sites")]
    InvalidWindow { j_min: i64, j_max: i64 },

    #[error("lattice labels must be integers; half-integer offset {0} is not supported")]
    HalfIntegerBranch(String),

    #[error("window [{j_min}, {j_max}] is not symmetric about 0")]
    AsymmetricWindow { j_min: i64, j_max: i64 },

    #[error("window of {size} sites leaves no interior for margin {margin}")]
    WindowTooSmall { size: usize, margin: usize },

    #[error("operators live on different lattice windows or spacings")]
    WindowMismatch,

    #[error("state weight exponent {found} does not match s_max = {expected}")]
    WeightMismatch { expected: u32, found: u32 },

    #[error("states belong to different deformations (s_max {left} vs {right})")]
    ParamMismatch { left: u32, right: u32 },

    #[error("integrand degree {degree} exceeds 2*s_max = {limit}; it leaves the closed moment family")]
    DegreeOutOfFamily { degree: usize, limit: usize },

    #[error("inner product has a nonzero imaginary part")]
    ImaginaryInnerProduct,

    #[error("state prefactors are not rationally related; states cannot be compared exactly")]
    IncommensurablePrefactor,

    #[error("Gram recurrence is inconsistent at entry ({s}, {s_prime})")]
    InconsistentGram { s: usize, s_prime: usize },

    #[error("Gram recurrence leaves entry ({s}, {s_prime}) undetermined")]
    UnderdeterminedGram { s: usize, s_prime: usize },

    #[error("vacuum norm must be a positive rational multiple of sqrt(s_max/pi)")]
    NonPositiveNorm,

    #[error("reindexing from s = s_max is singular")]
    ReindexAtTruncation,

    #[error("the list of s_max values is empty")]
    EmptyParameterList,

    #[error("sample point phi = {0} is too close to a zero of cos(delta*phi)")]
    SampleNearPole(f64),
}
