use core::fmt;

/// Errors produced by frame construction, the equilibrium solvers and the
/// dynamical integrator.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input field was NaN or infinite.
    NonFiniteInput { field: &'static str },
    /// An input violated a physical constraint (sign, range).
    InvalidParameter { field: &'static str, reason: &'static str },
    /// A radicand that must stay non-negative went negative.
    ComplexRadicand { context: &'static str, radicand: f64 },
    /// An iterative solver failed to converge within its iteration budget.
    NoConvergence { context: &'static str, residual: f64 },
    /// The adaptive integrator underflowed its step size.
    StepSizeUnderflow { t: f64 },
    /// The integrated state became non-finite.
    NonFiniteState { t: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFiniteInput { field } => write!(f, "non-finite input: {field}"),
            Error::InvalidParameter { field, reason } => {
                write!(f, "invalid parameter {field}: {reason}")
            }
            Error::ComplexRadicand { context, radicand } => {
                write!(f, "negative radicand in {context}: {radicand}")
            }
            Error::NoConvergence { context, residual } => {
                write!(f, "{context} did not converge (residual {residual:e})")
            }
            Error::StepSizeUnderflow { t } => {
                write!(f, "integrator step size underflow at t = {t} ps")
            }
            Error::NonFiniteState { t } => {
                write!(f, "integrator state became non-finite at t = {t} ps")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
