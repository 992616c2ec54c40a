use thiserror::Error;

/// Errors raised by the algebra, Gröbner and invariant computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("polynomials belong to different rings: {0}")]
    Context(String),

    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,

    #[error("no minimal reduction found after {trials} trials (last candidate: {last})")]
    SearchFailure { trials: usize, last: String },

    #[error("Ext computation did not stabilize by truncation degree {0}")]
    Unstable(u32),

    #[error("invalid input file: {0}")]
    Input(String),
}

impl Error {
    /// Failures that come from bad user input rather than from a computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::Context(_)
                | Error::Syntax { .. }
                | Error::UnknownVariable(_)
                | Error::Argument(_)
                | Error::Unsupported(_)
                | Error::Input(_)
                | Error::NotZeroDimensional
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
