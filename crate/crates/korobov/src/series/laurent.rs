use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Scalar;
use crate::error::{Error, Result};
use crate::series::{Domain, PowerSeries};

/// Truncated Laurent series with a tight valuation.
///
/// `Terms` stores the coefficients of `t^valuation ..= t^known_through` with a
/// nonzero leading entry; everything below the valuation is exactly zero, and
/// everything above `known_through` is unknown. A series whose known
/// coefficients all cancel is the dedicated `Zero` value — still carrying how
/// far the cancellation is certified.
#[derive(Clone, PartialEq)]
pub enum LaurentSeries {
    Zero { known_through: i64 },
    Terms { valuation: i64, body: PowerSeries },
}

impl LaurentSeries {
    /// Normalizing constructor: strips leading zero coefficients so the
    /// valuation is tight, collapsing to `Zero` when nothing is left.
    pub fn from_power_at(valuation: i64, body: PowerSeries) -> LaurentSeries {
        let known_through = valuation + body.order() as i64;
        match body.coeffs().iter().position(|c| !c.is_zero()) {
            None => LaurentSeries::Zero { known_through },
            Some(0) => LaurentSeries::Terms { valuation, body },
            Some(shift) => LaurentSeries::Terms {
                valuation: valuation + shift as i64,
                body: PowerSeries::new(body.domain(), body.coeffs()[shift..].to_vec()),
            },
        }
    }

    pub fn from_power(body: PowerSeries) -> LaurentSeries {
        LaurentSeries::from_power_at(0, body)
    }

    /// The constant `value`, known through exponent `known_through` (≥ 0).
    pub fn constant(value: Scalar, known_through: i64) -> LaurentSeries {
        assert!(
            known_through >= 0,
            "constant needs a window reaching exponent 0"
        );
        let mut body = PowerSeries::zero(Domain::of_scalar(&value), known_through as usize);
        let coeffs = {
            let mut c = body.coeffs().to_vec();
            c[0] = value;
            c
        };
        body = PowerSeries::new(body.domain(), coeffs);
        LaurentSeries::from_power(body)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, LaurentSeries::Zero { .. })
    }

    /// Tight valuation, or `None` for a zero series.
    pub fn valuation(&self) -> Option<i64> {
        match self {
            LaurentSeries::Zero { .. } => None,
            LaurentSeries::Terms { valuation, .. } => Some(*valuation),
        }
    }

    /// Largest exponent whose coefficient is known.
    pub fn known_through(&self) -> i64 {
        match self {
            LaurentSeries::Zero { known_through } => *known_through,
            LaurentSeries::Terms { valuation, body } => valuation + body.order() as i64,
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            LaurentSeries::Zero { .. } => Domain::Rational,
            LaurentSeries::Terms { body, .. } => body.domain(),
        }
    }

    /// Coefficient of t^e, or `None` above the known window. Exponents below
    /// the valuation are exactly zero.
    pub fn coeff(&self, e: i64) -> Option<Scalar> {
        if e > self.known_through() {
            return None;
        }
        match self {
            LaurentSeries::Zero { .. } => Some(Scalar::zero()),
            LaurentSeries::Terms { valuation, body } => {
                if e < *valuation {
                    Some(Scalar::zero())
                } else {
                    body.coeff((e - valuation) as usize).cloned()
                }
            }
        }
    }

    /// Multiply by t^delta.
    pub fn shift(&self, delta: i64) -> LaurentSeries {
        match self {
            LaurentSeries::Zero { known_through } => LaurentSeries::Zero {
                known_through: known_through + delta,
            },
            LaurentSeries::Terms { valuation, body } => LaurentSeries::Terms {
                valuation: valuation + delta,
                body: body.clone(),
            },
        }
    }

    pub fn mul_scalar(&self, factor: &Scalar) -> LaurentSeries {
        match self {
            LaurentSeries::Zero { .. } => self.clone(),
            LaurentSeries::Terms { valuation, body } => {
                LaurentSeries::from_power_at(*valuation, body.mul_scalar(factor))
            }
        }
    }

    /// Termwise d/dt, including negative exponents. Total: differentiating a
    /// window `v..=k` yields the window `v−1..=k−1` (the exponent-0 term just
    /// vanishes from it).
    pub fn derivative(&self) -> LaurentSeries {
        match self {
            LaurentSeries::Zero { known_through } => LaurentSeries::Zero {
                known_through: known_through - 1,
            },
            LaurentSeries::Terms { valuation, body } => {
                let coeffs = body
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * &Scalar::from(valuation + k as i64))
                    .collect();
                LaurentSeries::from_power_at(valuation - 1, PowerSeries::new(body.domain(), coeffs))
            }
        }
    }

    /// Multiplicative inverse: factor out t^valuation, invert the unit part.
    pub fn invert(&self) -> Result<LaurentSeries> {
        match self {
            LaurentSeries::Zero { .. } => Err(Error::ZeroSeries),
            LaurentSeries::Terms { valuation, body } => Ok(LaurentSeries::Terms {
                valuation: -valuation,
                body: body.invert()?,
            }),
        }
    }

    /// i-th power, i ≥ 1. The body length is preserved: valuation i·v, known
    /// through k + (i−1)·v.
    pub fn pow(&self, i: usize) -> Result<LaurentSeries> {
        assert!(i >= 1, "ls_pow needs a positive exponent");
        match self {
            LaurentSeries::Zero { .. } => Err(Error::ZeroSeries),
            LaurentSeries::Terms { valuation, body } => {
                let mut acc = body.clone();
                for _ in 1..i {
                    acc = &acc * body;
                }
                Ok(LaurentSeries::Terms {
                    valuation: valuation * i as i64,
                    body: acc,
                })
            }
        }
    }
}

impl Add for &LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        let hi = self.known_through().min(rhs.known_through());
        let lo = match (self.valuation(), rhs.valuation()) {
            (None, None) => return LaurentSeries::Zero { known_through: hi },
            (Some(v), None) | (None, Some(v)) => v,
            (Some(a), Some(b)) => a.min(b),
        };
        if lo > hi {
            return LaurentSeries::Zero { known_through: hi };
        }
        let domain = self.domain().unify(rhs.domain());
        let coeffs = (lo..=hi)
            .map(|e| &self.coeff(e).unwrap() + &rhs.coeff(e).unwrap())
            .collect();
        LaurentSeries::from_power_at(lo, PowerSeries::new(domain, coeffs))
    }
}

impl Sub for &LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self + &(-rhs)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        match self {
            LaurentSeries::Zero { .. } => self.clone(),
            LaurentSeries::Terms { valuation, body } => LaurentSeries::Terms {
                valuation: *valuation,
                body: -body,
            },
        }
    }
}

impl Mul for &LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        use LaurentSeries::*;
        // Window rule: exact through min(k1+v2, k2+v1). A Zero operand has no
        // tight valuation; the conservative reading is v = known_through + 1.
        match (self, rhs) {
            (Zero { known_through: k1 }, Zero { known_through: k2 }) => Zero {
                known_through: k1 + k2 + 1,
            },
            (Zero { known_through: kz }, Terms { valuation, body })
            | (Terms { valuation, body }, Zero { known_through: kz }) => {
                let kt = valuation + body.order() as i64;
                Zero {
                    known_through: (kz + valuation).min(kt + kz + 1),
                }
            }
            (
                Terms {
                    valuation: v1,
                    body: b1,
                },
                Terms {
                    valuation: v2,
                    body: b2,
                },
            ) => Terms {
                valuation: v1 + v2,
                body: b1 * b2,
            },
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LaurentSeries::Zero { known_through } => {
                write!(f, "LaurentSeries(zero through {known_through})")
            }
            LaurentSeries::Terms { valuation, body } => {
                write!(
                    f,
                    "LaurentSeries(valuation {valuation}, through {}) [",
                    self.known_through()
                )?;
                for (k, c) in body.coeffs().iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "t^{}: {c}", valuation + k as i64)?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Symbol};

    fn rat(valuation: i64, coeffs: &[(i64, i64)]) -> LaurentSeries {
        LaurentSeries::from_power_at(
            valuation,
            PowerSeries::new(
                Domain::Rational,
                coeffs
                    .iter()
                    .map(|&(n, d)| Scalar::Rational(Rational::new(n, d)))
                    .collect(),
            ),
        )
    }

    #[test]
    fn construction_tightens_valuation() {
        let s = rat(-2, &[(0, 1), (3, 1), (1, 1)]);
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.known_through(), 0);
        assert_eq!(s.coeff(-2), Some(Scalar::zero()));
        assert_eq!(s.coeff(-1), Some(Scalar::from(3)));
        assert_eq!(s.coeff(1), None);
    }

    #[test]
    fn all_zero_collapses() {
        let s = rat(-3, &[(0, 1), (0, 1)]);
        assert!(s.is_zero());
        assert_eq!(s.known_through(), -2);
    }

    #[test]
    fn square_of_inverse_times_one_plus_t() {
        // (t^(−1)(1+t))² = t^(−2) + 2t^(−1) + 1, with the operand padded so
        // the window reaches exponent 0.
        let a = rat(-1, &[(1, 1), (1, 1), (0, 1)]);
        let sq = a.pow(2).unwrap();
        assert_eq!(sq.valuation(), Some(-2));
        assert_eq!(sq.coeff(-2), Some(Scalar::one()));
        assert_eq!(sq.coeff(-1), Some(Scalar::from(2)));
        assert_eq!(sq.coeff(0), Some(Scalar::one()));
        assert_eq!(sq.known_through(), 0);
    }

    #[test]
    fn pow_one_is_identity() {
        let a = rat(-1, &[(1, 1), (5, 7)]);
        assert_eq!(a.pow(1).unwrap(), a);
    }

    #[test]
    fn pow_of_zero_errors() {
        assert_eq!(
            LaurentSeries::Zero { known_through: 4 }.pow(2),
            Err(Error::ZeroSeries)
        );
    }

    #[test]
    fn derivative_of_inverse_power() {
        // d/dt t^(−1) = −t^(−2)
        let s = rat(-1, &[(1, 1)]);
        let d = s.derivative();
        assert_eq!(d.valuation(), Some(-2));
        assert_eq!(d.coeff(-2), Some(Scalar::from(-1)));
    }

    #[test]
    fn derivative_kills_constants_honestly() {
        // A constant known through t^3: derivative is zero through t^2.
        let c = LaurentSeries::constant(Scalar::from(5), 3);
        let d = c.derivative();
        assert!(d.is_zero());
        assert_eq!(d.known_through(), 2);
    }

    #[test]
    fn invert_round_trips() {
        let s = rat(-1, &[(2, 1), (1, 3), (0, 1), (5, 1)]);
        let inv = s.invert().unwrap();
        assert_eq!(inv.valuation(), Some(1));
        let product = &s * &inv;
        // product = 1 on its window.
        assert_eq!(product.valuation(), Some(0));
        assert_eq!(product.coeff(0), Some(Scalar::one()));
        for e in 1..=product.known_through() {
            assert_eq!(product.coeff(e), Some(Scalar::zero()));
        }
    }

    #[test]
    fn sum_cancellation_yields_tracked_zero() {
        let a = rat(-1, &[(1, 1), (2, 1), (3, 1)]);
        let diff = &a - &a;
        assert!(diff.is_zero());
        assert_eq!(diff.known_through(), 1);
    }

    #[test]
    fn sum_with_disjoint_windows() {
        // a known −1..=1, b has valuation 5: b contributes only zeros below
        // its valuation, so the sum is a's window clipped at min known.
        let a = rat(-1, &[(1, 1), (0, 1), (4, 1)]);
        let b = rat(5, &[(1, 1), (1, 1)]);
        let sum = &a + &b;
        assert_eq!(sum.valuation(), Some(-1));
        assert_eq!(sum.known_through(), 1);
        assert_eq!(sum.coeff(1), Some(Scalar::from(4)));
    }

    #[test]
    fn product_window_rule() {
        // val −1 known through 2 (len 4) times val 1 known through 3 (len 3):
        // exact through min(2+1, 3−1) = 2, valuation 0.
        let a = rat(-1, &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let b = rat(1, &[(2, 1), (0, 1), (1, 1)]);
        let p = &a * &b;
        assert_eq!(p.valuation(), Some(0));
        assert_eq!(p.known_through(), 2);
        // (t^(−1)+1+t+t²)(2t+t³) = 2 + 2t + 3t² + … : check the window.
        assert_eq!(p.coeff(0), Some(Scalar::from(2)));
        assert_eq!(p.coeff(1), Some(Scalar::from(2)));
        assert_eq!(p.coeff(2), Some(Scalar::from(3)));
    }

    #[test]
    fn product_with_tracked_zero() {
        let z = LaurentSeries::Zero { known_through: 3 };
        let b = rat(-2, &[(1, 1), (1, 1)]);
        let p = &z * &b;
        assert!(p.is_zero());
        // window: min(3 + (−2), (−1) + 3 + 1) = 1
        assert_eq!(p.known_through(), 1);
    }

    #[test]
    fn symbolic_leading_coefficient_inverts() {
        // λt + t²  ↦  inverse valuation −1 with leading 1/λ.
        let lam = Scalar::variable(Symbol::Lambda);
        let body = PowerSeries::new(
            Domain::Symbolic(Symbol::Lambda),
            vec![lam.clone(), Scalar::one(), Scalar::zero()],
        );
        let s = LaurentSeries::from_power_at(1, body);
        let inv = s.invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeff(-1), Some(lam.try_invert().unwrap()));
    }
}
