use crate::algebra::Symbol;

/// Errors for data-dependent failures.
///
/// Contract violations that indicate a caller bug (mixing polynomials over
/// different symbols, dividing a scalar by zero mid-expression) panic instead,
/// mirroring the behaviour of the arithmetic operators themselves.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A rational or rational-function denominator was identically zero.
    #[error("denominator is zero")]
    ZeroDenominator,

    /// Two symbolic values over different formal symbols were combined.
    #[error("symbol mismatch: {0} vs {1}")]
    SymbolMismatch(Symbol, Symbol),

    /// Series inversion requires an invertible constant term.
    #[error("series has no invertible constant term")]
    NonInvertibleConstantTerm,

    /// Series exponentiation requires a vanishing constant term.
    #[error("series exponential needs a zero constant term")]
    NonzeroConstantTerm,

    /// The operation needs a nonzero series (e.g. Laurent inversion).
    #[error("series is zero through its known order")]
    ZeroSeries,

    /// Differentiating a series known only through order 0 leaves nothing.
    #[error("derivative of a series known only at order 0 is empty")]
    EmptyDerivative,

    /// A verification window retained fewer coefficients than required.
    #[error("comparison window holds {got} coefficients, need at least {need}")]
    WindowTooSmall { got: usize, need: usize },

    /// The construction is singular at lambda = 0.
    #[error("lambda = 0 is outside the domain of this construction")]
    LambdaZero,

    /// At most one of the parameters may be left symbolic.
    #[error("at most one parameter may be symbolic, got {0} and {1}")]
    BothSymbolic(Symbol, Symbol),

    /// The zero polynomial has no trailing term.
    #[error("zero polynomial has no trailing term")]
    ZeroPolynomial,

    /// A parameter value is outside the valid range for the request.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
