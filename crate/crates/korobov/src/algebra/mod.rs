//! Exact coefficient arithmetic: big rationals, dense univariate polynomials,
//! reduced rational functions, and the falling-factorial constructors used by
//! all of the number-family formulas.

mod factorial;
mod poly;
mod ratfun;
mod rational;
mod scalar;
mod symbol;

pub use factorial::{
    binomial, binomial_scalar, factorial, falling_factorial, gen_falling_factorial,
};
pub use poly::Poly;
pub use ratfun::RatFun;
pub use rational::Rational;
pub use scalar::Scalar;
pub use symbol::{sample_points, Binding, Symbol};
