use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix ({a} {b}; {c} {d}) has determinant {det}, expected 1")]
    NotUnimodular {
        a: String,
        b: String,
        c: String,
        d: String,
        det: String,
    },
    #[error("empty L/R word")]
    EmptyWord,
    #[error("invalid letter {0:?} in L/R word")]
    InvalidLetter(char),
    #[error("word {0} uses a single letter (parabolic class)")]
    AllSameLetter(String),
    #[error("word {0} is a proper power (non-primitive class)")]
    Periodic(String),
    #[error("matrix with trace {0} is not hyperbolic")]
    NotHyperbolic(String),
    #[error("brute-force oracle bound {bound} exceeds guard {guard}")]
    OracleBoundExceeded { bound: u64, guard: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("Dedekind symbol closed form did not reduce to an integer: {0}")]
    NonIntegerPhi(String),
    #[error("point outside the upper half plane: {0}")]
    DomainError(String),
    #[error("q-product truncated at {n_terms} terms has error bound {bound:e} at Im z = {im}")]
    InsufficientTerms { n_terms: usize, im: f64, bound: f64 },
    #[error("numeric Dedekind symbol residual {residual} too large (value {value})")]
    BranchResidualTooLarge { value: f64, residual: f64 },
    #[error("winding residual {residual} too large (total {total})")]
    ResidualTooLarge { total: f64, residual: f64 },
    #[error("orbit refinement exceeded {cap} samples")]
    RefinementOverflow { cap: usize },
    #[error("no samples")]
    EmptySample,
}
