use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the zero-finding and evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument {0} lies on a branch cut or outside the supported domain")]
    Domain(Complex64),

    #[error("pole of the rational coefficient at zhat = {0}")]
    Pole(Complex64),

    #[error("no convergence after {iterations} iterations (last iterate {last}, residual {residual:e})")]
    NonConvergence {
        last: Complex64,
        residual: f64,
        iterations: usize,
    },

    #[error("u = {0} is an odd integer (Hermite polynomial case): no non-real zeros")]
    PolynomialCase(f64),

    #[error("index {index} is out of range (valid: {lo}..={hi})")]
    Index { index: i64, lo: i64, hi: i64 },

    #[error("leading term too close to the turning point (|zeta0| = {0:e})")]
    Degenerate(f64),

    #[error("iterate {0} is too close to a turning point of the differential equation")]
    TurningPoint(Complex64),

    #[error("zero at {0} was already found in this sweep")]
    ChainBreak(Complex64),

    #[error("denominator underflow while forming a ratio at {0}")]
    DivisionHazard(Complex64),

    #[error("value overflows binary64: mantissa {mantissa} times e^{log_scale}")]
    Overflow { mantissa: Complex64, log_scale: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
