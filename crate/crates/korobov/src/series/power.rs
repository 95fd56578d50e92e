use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{binomial_scalar, Rational, Scalar, Symbol};
use crate::error::{Error, Result};

/// Coefficient domain of a series: plain rationals, or rationals extended by
/// one formal symbol. Two different symbols never mix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Rational,
    Symbolic(Symbol),
}

impl Domain {
    pub fn of_scalar(s: &Scalar) -> Domain {
        match s.symbol() {
            None => Domain::Rational,
            Some(sym) => Domain::Symbolic(sym),
        }
    }

    /// Common domain of two operands. Panics on two different symbols — a
    /// caller bug, matching scalar arithmetic.
    pub fn unify(self, other: Domain) -> Domain {
        match (self, other) {
            (Domain::Rational, d) | (d, Domain::Rational) => d,
            (Domain::Symbolic(a), Domain::Symbolic(b)) => {
                assert!(a == b, "symbol mismatch: {a} vs {b}");
                Domain::Symbolic(a)
            }
        }
    }

    fn admits(self, s: &Scalar) -> bool {
        match (self, s.symbol()) {
            (_, None) => true,
            (Domain::Symbolic(a), Some(b)) => a == b,
            (Domain::Rational, Some(_)) => false,
        }
    }
}

/// Truncated formal power series: exact coefficients for exponents
/// `0..=order`. Coefficients beyond the order are unknown, not zero.
#[derive(Clone, PartialEq)]
pub struct PowerSeries {
    domain: Domain,
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    /// Panics if `coeffs` is empty (a series knows at least its constant
    /// term) or a coefficient falls outside `domain`.
    pub fn new(domain: Domain, coeffs: Vec<Scalar>) -> PowerSeries {
        assert!(!coeffs.is_empty(), "power series needs a constant term");
        assert!(
            coeffs.iter().all(|c| domain.admits(c)),
            "coefficient outside the series domain"
        );
        PowerSeries { domain, coeffs }
    }

    pub fn zero(domain: Domain, order: usize) -> PowerSeries {
        PowerSeries {
            domain,
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn one(domain: Domain, order: usize) -> PowerSeries {
        let mut s = PowerSeries::zero(domain, order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// The monomial t, truncated at `order` (≥ 1).
    pub fn t(domain: Domain, order: usize) -> PowerSeries {
        assert!(order >= 1, "monomial t needs order >= 1");
        let mut s = PowerSeries::zero(domain, order);
        s.coeffs[1] = Scalar::one();
        s
    }

    pub fn from_fn(domain: Domain, order: usize, f: impl FnMut(usize) -> Scalar) -> PowerSeries {
        PowerSeries::new(domain, (0..=order).map(f).collect())
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of t^k, or None beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&Scalar> {
        self.coeffs.get(k)
    }

    /// True if every known coefficient is zero.
    pub fn is_zero_through_order(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn truncate(&self, order: usize) -> PowerSeries {
        assert!(order <= self.order(), "cannot extend a truncated series");
        PowerSeries {
            domain: self.domain,
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn mul_scalar(&self, factor: &Scalar) -> PowerSeries {
        PowerSeries {
            domain: self.domain.unify(Domain::of_scalar(factor)),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Multiplicative inverse: `self · result = 1` through the order.
    pub fn invert(&self) -> Result<PowerSeries> {
        let head = self.coeffs[0]
            .try_invert()
            .map_err(|_| Error::NonInvertibleConstantTerm)?;
        let mut inv: Vec<Scalar> = Vec::with_capacity(self.coeffs.len());
        inv.push(head.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&self.coeffs[j] * &inv[k - j]);
            }
            inv.push(-&(&head * &acc));
        }
        Ok(PowerSeries {
            domain: self.domain,
            coeffs: inv,
        })
    }

    /// Termwise d/dt; the result is known through one order less.
    pub fn derivative(&self) -> Result<PowerSeries> {
        if self.order() == 0 {
            return Err(Error::EmptyDerivative);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Scalar::from(k))
            .collect();
        Ok(PowerSeries {
            domain: self.domain,
            coeffs,
        })
    }

    /// log(1+t) = t − t²/2 + t³/3 − …, truncated at `order`.
    pub fn log1p(order: usize) -> PowerSeries {
        PowerSeries::from_fn(Domain::Rational, order, |k| {
            if k == 0 {
                Scalar::zero()
            } else {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Scalar::Rational(Rational::new(sign, k as i64))
            }
        })
    }

    /// exp of a series with zero constant term, via the first-order relation
    /// exp(a)' = a'·exp(a): k·e_k = Σ_{j=1..k} j·a_j·e_{k−j}.
    pub fn exp(&self) -> Result<PowerSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out: Vec<Scalar> = Vec::with_capacity(self.coeffs.len());
        out.push(Scalar::one());
        for k in 1..self.coeffs.len() {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&(&self.coeffs[j] * &Scalar::from(j)) * &out[k - j]);
            }
            out.push(&acc * &Scalar::Rational(Rational::new(1, k as i64)));
        }
        Ok(PowerSeries {
            domain: self.domain,
            coeffs: out,
        })
    }

    /// (1+t)^e for an arbitrary exponent scalar: coefficient of t^k is the
    /// binomial coefficient C(e, k) = (e)_k / k!.
    pub fn binomial_pow(exponent: &Scalar, order: usize) -> PowerSeries {
        PowerSeries::from_fn(Domain::of_scalar(exponent), order, |k| {
            binomial_scalar(exponent, k)
        })
    }

    /// Substitute t ↦ factor·t.
    pub fn rescale(&self, factor: &Scalar) -> PowerSeries {
        let domain = self.domain.unify(Domain::of_scalar(factor));
        let mut power = Scalar::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    power = &power * factor;
                }
                c * &power
            })
            .collect();
        PowerSeries { domain, coeffs }
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries {
            domain: self.domain.unify(rhs.domain),
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        PowerSeries {
            domain: self.domain.unify(rhs.domain),
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            domain: self.domain,
            coeffs: self.coeffs.iter().map(Neg::neg).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let domain = self.domain.unify(rhs.domain);
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![Scalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        PowerSeries { domain, coeffs }
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries(order {}) [", self.order())?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(coeffs: &[(i64, i64)]) -> PowerSeries {
        PowerSeries::new(
            Domain::Rational,
            coeffs
                .iter()
                .map(|&(n, d)| Scalar::Rational(Rational::new(n, d)))
                .collect(),
        )
    }

    #[test]
    fn product_truncates_to_shorter_operand() {
        // (1+t)(1−t) = 1 − t², padded to order 4 on both sides.
        let a = rat(&[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1)]);
        let b = rat(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        let p = &a * &b;
        assert_eq!(p.order(), 4);
        assert_eq!(p, rat(&[(1, 1), (0, 1), (-1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn product_annihilates_on_zero() {
        let a = rat(&[(1, 1), (1, 1)]);
        let z = PowerSeries::zero(Domain::Rational, 1);
        assert!((&a * &z).is_zero_through_order());
    }

    #[test]
    fn geometric_inverse() {
        // 1/(1−t) = 1 + t + t² + …
        let a = rat(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1), (0, 1)]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, rat(&[(1, 1); 6]));
    }

    #[test]
    fn inverse_of_one_is_one() {
        let one = PowerSeries::one(Domain::Rational, 4);
        assert_eq!(one.invert().unwrap(), one);
    }

    #[test]
    fn inverse_with_symbolic_constant_term() {
        // (1−μ) + t inverts with constant term 1/(1−μ).
        let mu = Scalar::variable(Symbol::Mu);
        let head = Scalar::one() - &mu;
        let a = PowerSeries::new(
            Domain::Symbolic(Symbol::Mu),
            vec![head.clone(), Scalar::one(), Scalar::zero()],
        );
        let inv = a.invert().unwrap();
        assert_eq!(inv.coeff(0).unwrap(), &head.try_invert().unwrap());
        let product = &a * &inv;
        assert_eq!(product, PowerSeries::one(product.domain(), 2));
    }

    #[test]
    fn invert_rejects_zero_constant_term() {
        let t = PowerSeries::t(Domain::Rational, 3);
        assert_eq!(t.invert(), Err(Error::NonInvertibleConstantTerm));
    }

    #[test]
    fn derivative_drops_one_order() {
        // exp prefix: 1 + t + t²/2 + t³/6 → its own truncation.
        let e = rat(&[(1, 1), (1, 1), (1, 2), (1, 6)]);
        let d = e.derivative().unwrap();
        assert_eq!(d, rat(&[(1, 1), (1, 1), (1, 2)]));
        let c = rat(&[(5, 1), (0, 1)]);
        assert!(c.derivative().unwrap().is_zero_through_order());
        assert_eq!(rat(&[(1, 1)]).derivative(), Err(Error::EmptyDerivative));
    }

    #[test]
    fn log1p_prefix() {
        assert_eq!(
            PowerSeries::log1p(3),
            rat(&[(0, 1), (1, 1), (-1, 2), (1, 3)])
        );
    }

    #[test]
    fn exp_of_zero_is_one() {
        let z = PowerSeries::zero(Domain::Rational, 4);
        assert_eq!(z.exp().unwrap(), PowerSeries::one(Domain::Rational, 4));
    }

    #[test]
    fn exp_log_cancel() {
        // exp(log(1+t)) = 1 + t exactly; higher coefficients all zero.
        let e = PowerSeries::log1p(10).exp().unwrap();
        let mut expect = PowerSeries::zero(Domain::Rational, 10);
        expect.coeffs[0] = Scalar::one();
        expect.coeffs[1] = Scalar::one();
        assert_eq!(e, expect);
    }

    #[test]
    fn exp_rejects_nonzero_constant_term() {
        assert_eq!(
            rat(&[(1, 1), (1, 1)]).exp(),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn binomial_pow_symbolic_coefficient() {
        // coefficient of t² in (1+t)^λ is λ(λ−1)/2.
        let lam = Scalar::variable(Symbol::Lambda);
        let s = PowerSeries::binomial_pow(&lam, 3);
        let expect = &(&lam * &(&lam - &Scalar::one())) * &Scalar::Rational(Rational::new(1, 2));
        assert_eq!(s.coeff(2).unwrap(), &expect);
    }

    #[test]
    fn binomial_pow_exponent_zero_and_negative() {
        assert_eq!(
            PowerSeries::binomial_pow(&Scalar::zero(), 4),
            PowerSeries::one(Domain::Rational, 4)
        );
        // (1+t)^(−1): alternating signs.
        let s = PowerSeries::binomial_pow(&Scalar::from(-1), 4);
        assert_eq!(s, rat(&[(1, 1), (-1, 1), (1, 1), (-1, 1), (1, 1)]));
    }

    #[test]
    fn binomial_pow_integer_exponent_is_finite_expansion() {
        let s = PowerSeries::binomial_pow(&Scalar::from(3), 5);
        assert_eq!(s, rat(&[(1, 1), (3, 1), (3, 1), (1, 1), (0, 1), (0, 1)]));
    }

    #[test]
    fn binomial_pow_agrees_with_exp_log_construction() {
        // The closed-form coefficients match the exp(e·log(1+t)) composite,
        // both for a rational and for a symbolic exponent.
        for e in [
            Scalar::Rational(Rational::new(5, 3)),
            Scalar::variable(Symbol::Lambda),
        ] {
            let direct = PowerSeries::binomial_pow(&e, 12);
            let composed = PowerSeries::log1p(12).mul_scalar(&e).exp().unwrap();
            assert_eq!(direct, composed);
        }
    }

    #[test]
    fn rescale_substitutes() {
        // (1 + t + t²) with t ↦ 2t → 1 + 2t + 4t².
        let s = rat(&[(1, 1), (1, 1), (1, 1)]);
        let r = s.rescale(&Scalar::from(2));
        assert_eq!(r, rat(&[(1, 1), (2, 1), (4, 1)]));
    }

    #[test]
    #[should_panic(expected = "symbol mismatch")]
    fn domain_mismatch_panics() {
        let a = PowerSeries::binomial_pow(&Scalar::variable(Symbol::Lambda), 2);
        let b = PowerSeries::binomial_pow(&Scalar::variable(Symbol::Mu), 2);
        let _ = &a + &b;
    }
}
