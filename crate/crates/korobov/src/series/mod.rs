//! Truncated formal power series and Laurent series over a [`Scalar`] domain,
//! with explicit precision bookkeeping: every value records exactly which
//! exponent window its coefficients are valid on, so identity verification
//! can distinguish "zero residual" from "unknown coefficient".

mod laurent;
mod power;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use laurent::LaurentSeries;
pub use power::{Domain, PowerSeries};

use crate::algebra::Scalar;

/// Coefficient-by-coefficient comparison of two series on the window both
/// know: exponents `lo..=hi` with `hi` the smaller known-through bound and
/// `lo` the smaller tight valuation (everything below `lo` is exactly zero on
/// both sides).
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub lo: i64,
    pub hi: i64,
    /// First differing exponent with both exact values, if any.
    pub mismatch: Option<(i64, Scalar, Scalar)>,
}

impl Comparison {
    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

pub fn compare_series(lhs: &LaurentSeries, rhs: &LaurentSeries) -> Comparison {
    let hi = lhs.known_through().min(rhs.known_through());
    let lo = match (lhs.valuation(), rhs.valuation()) {
        (None, None) => hi,
        (Some(v), None) | (None, Some(v)) => v,
        (Some(a), Some(b)) => a.min(b),
    }
    .min(hi);
    let mismatch = (lo..=hi).find_map(|e| {
        let l = lhs.coeff(e).unwrap();
        let r = rhs.coeff(e).unwrap();
        (l != r).then_some((e, l, r))
    });
    Comparison { lo, hi, mismatch }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    valuation: i64,
    order: usize,
    coeffs: Vec<Scalar>,
}

impl SeriesRepr {
    fn domain(&self) -> Result<Domain, String> {
        let mut domain = Domain::Rational;
        for c in &self.coeffs {
            match (domain, Domain::of_scalar(c)) {
                (d, Domain::Rational) => domain = d,
                (Domain::Rational, d) => domain = d,
                (Domain::Symbolic(a), Domain::Symbolic(b)) if a == b => {}
                (Domain::Symbolic(a), Domain::Symbolic(b)) => {
                    return Err(format!("mixed symbols in series coefficients: {a} vs {b}"));
                }
            }
        }
        Ok(domain)
    }

    fn check_length(&self) -> Result<(), String> {
        if self.coeffs.len() != self.order + 1 {
            return Err(format!(
                "series length {} does not match order {}",
                self.coeffs.len(),
                self.order
            ));
        }
        Ok(())
    }
}

impl Serialize for PowerSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SeriesRepr {
            valuation: 0,
            order: self.order(),
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PowerSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<PowerSeries, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        if repr.valuation != 0 {
            return Err(D::Error::custom("power series requires valuation 0"));
        }
        repr.check_length().map_err(D::Error::custom)?;
        let domain = repr.domain().map_err(D::Error::custom)?;
        Ok(PowerSeries::new(domain, repr.coeffs))
    }
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            LaurentSeries::Zero { known_through } if *known_through >= 0 => SeriesRepr {
                valuation: 0,
                order: *known_through as usize,
                coeffs: vec![Scalar::zero(); *known_through as usize + 1],
            },
            LaurentSeries::Zero { known_through } => SeriesRepr {
                valuation: *known_through,
                order: 0,
                coeffs: vec![Scalar::zero()],
            },
            LaurentSeries::Terms { valuation, body } => SeriesRepr {
                valuation: *valuation,
                order: body.order(),
                coeffs: body.coeffs().to_vec(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<LaurentSeries, D::Error> {
        let repr = SeriesRepr::deserialize(deserializer)?;
        repr.check_length().map_err(D::Error::custom)?;
        let domain = repr.domain().map_err(D::Error::custom)?;
        Ok(LaurentSeries::from_power_at(
            repr.valuation,
            PowerSeries::new(domain, repr.coeffs),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rational, Symbol};

    #[test]
    fn compare_reports_first_mismatch() {
        let a = LaurentSeries::from_power(PowerSeries::new(
            Domain::Rational,
            vec![Scalar::one(), Scalar::from(2), Scalar::from(3)],
        ));
        let b = LaurentSeries::from_power(PowerSeries::new(
            Domain::Rational,
            vec![Scalar::one(), Scalar::from(2), Scalar::from(4)],
        ));
        let cmp = compare_series(&a, &b);
        assert_eq!((cmp.lo, cmp.hi), (0, 2));
        assert_eq!(cmp.mismatch, Some((2, Scalar::from(3), Scalar::from(4))));
        assert!(compare_series(&a, &a).passed());
    }

    #[test]
    fn compare_of_tracked_zeros() {
        let a = LaurentSeries::Zero { known_through: 5 };
        let b = LaurentSeries::Zero { known_through: 9 };
        let cmp = compare_series(&a, &b);
        assert!(cmp.passed());
        assert_eq!(cmp.hi, 5);
    }

    #[test]
    fn power_series_json_round_trip() {
        let lam = Scalar::variable(Symbol::Lambda);
        let s = PowerSeries::new(
            Domain::Symbolic(Symbol::Lambda),
            vec![Scalar::one(), lam, Scalar::Rational(Rational::new(-1, 2))],
        );
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with(r#"{"valuation":0,"order":2,"coeffs":["#));
        let back: PowerSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn laurent_json_round_trip() {
        let cases = [
            LaurentSeries::from_power_at(
                -1,
                PowerSeries::new(
                    Domain::Rational,
                    vec![Scalar::from(2), Scalar::zero(), Scalar::from(7)],
                ),
            ),
            LaurentSeries::Zero { known_through: 3 },
            LaurentSeries::Zero { known_through: -2 },
        ];
        for s in cases {
            let text = serde_json::to_string(&s).unwrap();
            let back: LaurentSeries = serde_json::from_str(&text).unwrap();
            assert_eq!(back, s);
        }
    }
}
