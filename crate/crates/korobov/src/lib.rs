//! Exact arithmetic for the Korobov and Frobenius-Euler number families.
//!
//! Everything is computed over ℚ, ℚ[s], or ℚ(s) for a single formal symbol
//! s ∈ {λ, μ, x} — no floating point anywhere — so identity checks between
//! truncated series are exact on an explicitly tracked window of exponents.

pub mod algebra;
mod error;
pub mod frobenius;
pub mod korobov;
pub mod loginv;
pub mod report;
pub mod series;

pub use algebra::{Binding, Poly, RatFun, Rational, Scalar, Symbol};
pub use error::{Error, Result};
pub use report::VerifyReport;
pub use series::{Domain, LaurentSeries, PowerSeries};
