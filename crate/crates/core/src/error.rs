use thiserror::Error;

/// Errors raised by special functions, quadrature and operator evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma pole at argument {0}")]
    Pole(f64),
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-finite integrand value at t = {0}")]
    NonFinite(f64),
    #[error("s = {re}{im:+}i lies outside the validity strip {strip}")]
    StripViolation { re: f64, im: f64, strip: String },
    #[error("bad support: {0}")]
    BadSupport(String),
    #[error("operand lacks derivative of order {order}: {reason}")]
    InsufficientSmoothness { order: usize, reason: String },
    #[error("weight function is not strictly increasing near t = {0}")]
    NonMonotoneWeight(f64),
    #[error("kernel pole: {0}")]
    KernelPole(String),
    #[error("validity condition violated: {0}")]
    ValidityViolation(String),
    #[error("finite-difference stencil failed: {0}")]
    Stencil(String),
    #[error("invalid specification: {0}")]
    Spec(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
