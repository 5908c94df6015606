use thiserror::Error;

/// Errors raised by the series, evaluation, quadrature and relation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    /// The coefficients do not sum to zero, so the series diverges.
    #[error("coefficients must sum to zero for the series to converge (sum is {sum})")]
    UnbalancedCoefficients { sum: String },

    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error(
        "vectors have different moduli ({left} vs {right}); lift them to a common modulus first"
    )]
    ModulusMismatch { left: usize, right: usize },

    #[error("modulus {modulus} exceeds the supported limit {limit}")]
    ModulusTooLarge { modulus: u128, limit: usize },

    #[error("required work {required} exceeds the block budget {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("requested accuracy {requested:e} is below the floating-point floor {floor:e}")]
    Unachievable { requested: f64, floor: f64 },

    #[error("adaptive quadrature did not reach the tolerance within {panels} panels (estimate {estimate:e})")]
    NoConvergence { panels: usize, estimate: f64 },

    #[error("{0} is not composite")]
    NotComposite(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = SeriesError> = std::result::Result<T, E>;
