use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Rational, Scalar};

/// n! as an exact rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_bigint(acc)
}

/// Binomial coefficient C(n, k) for natural arguments; 0 outside the range.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from(n - i) / Rational::from(i + 1);
    }
    acc
}

/// Falling factorial (base)_n = base·(base−1)···(base−n+1), with (base)_0 = 1.
pub fn falling_factorial(base: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    for k in 0..n {
        acc = acc * (base - &Scalar::from(k));
    }
    acc
}

/// Generalized falling factorial (base | step)_n = base·(base−step)···
/// (base−(n−1)·step). Step 1 recovers the plain falling factorial; step 0
/// gives base^n.
pub fn gen_falling_factorial(base: &Scalar, step: &Scalar, n: usize) -> Scalar {
    let mut acc = Scalar::one();
    for k in 0..n {
        acc = acc * (base - &(Scalar::from(k) * step));
    }
    acc
}

/// Binomial coefficient with arbitrary (possibly symbolic) upper argument:
/// C(e, k) = (e)_k / k!.
pub fn binomial_scalar(e: &Scalar, k: usize) -> Scalar {
    falling_factorial(e, k) * Scalar::from(factorial(k).recip())
}
