use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d + k must be even, got d = {d}, k = {k}")]
    ParityMismatch { d: u64, k: u64 },

    #[error("{what} must be at least {min}, got {value}")]
    TooSmall {
        what: &'static str,
        value: u64,
        min: u64,
    },

    #[error("Witt index {witt} is impossible for a form of dimension {dim_q}")]
    WittIndexOutOfRange { dim_q: u64, witt: u64 },

    #[error("invalid alternating decomposition {exponents:?}: {reason}")]
    InvalidDecomposition {
        exponents: Vec<u32>,
        reason: &'static str,
    },

    #[error("invalid splitting pattern {dims:?}: {reason}")]
    InvalidPattern { dims: Vec<u64>, reason: String },

    #[error("odd-dimensional pattern (d_0 = {d0}) never becomes hyperbolic")]
    OddPattern { d0: u64 },

    #[error("pattern {dims:?} is not kernel-admissible for s = {s}: {}", .violations.join("; "))]
    NotKernelAdmissible {
        s: u32,
        dims: Vec<u64>,
        violations: Vec<String>,
    },

    #[error("kernel dimension dichotomy broken for s = {s}, degree {degree}, d_0 = {d0}")]
    DichotomyContradiction { s: u32, degree: u32, d0: u64 },

    #[error("dim p = {dim_p} exceeds dim q = {dim_q} for a form hyperbolic over F(p)")]
    CasselsPfister { dim_p: u64, dim_q: u64 },

    #[error("k = {k} >= 2^s = {} makes the refined check vacuous", 1u64 << .s)]
    VacuousRegime { k: u64, s: u32 },

    #[error("no kernel of dimension k = {k} in pattern {dims:?} at step {step}")]
    KernelStepMismatch { k: u64, step: usize, dims: Vec<u64> },

    #[error("invalid Steenrod query: {0}")]
    InvalidQuery(String),

    #[error("invalid witness parameters: {0}")]
    InvalidWitness(String),

    #[error("exponent {0} is too large for 64-bit arithmetic")]
    Overflow(u32),
}
