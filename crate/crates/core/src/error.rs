use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),
    #[error("invalid bracket: f(lo) = {flo}, f(hi) = {fhi} have the same sign")]
    InvalidBracket { flo: f64, fhi: f64 },
    #[error("pole at {re} + {im}i")]
    Pole { re: f64, im: f64 },
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("integer overflow: {0}")]
    Overflow(&'static str),
    #[error("unsupported measure: {0}")]
    UnsupportedMeasure(&'static str),
    #[error("measure carries complex or negative masses")]
    ComplexMass,
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("rejection envelope violated at x = {x} (ratio {ratio})")]
    EnvelopeViolation { x: f64, ratio: f64 },
    #[error("could not bracket Bessel zero {n} for order {nu}")]
    BracketFailure { nu: f64, n: usize },
    #[error("did not converge: {0}")]
    NonConvergence(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
