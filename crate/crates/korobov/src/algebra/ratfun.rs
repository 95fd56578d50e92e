use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Poly, Rational, Symbol};
use crate::error::Error;

/// Reduced rational function in one formal symbol.
///
/// Canonical form: `gcd(num, den) = 1` and the denominator is monic, so equal
/// field values have identical representations. The denominator is never the
/// zero polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// The unique reduced monic-denominator representative of `num/den`.
    pub fn new(num: Poly, den: Poly) -> Result<RatFun, Error> {
        if num.symbol() != den.symbol() {
            return Err(Error::SymbolMismatch(num.symbol(), den.symbol()));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFun::reduced(num, den))
    }

    /// Internal constructor: operands already checked nonzero-denominator and
    /// same-symbol, but possibly unreduced.
    fn reduced(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::constant(den.symbol(), Rational::one()),
            };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            let (qn, rn) = num.div_rem(&g);
            let (qd, rd) = den.div_rem(&g);
            debug_assert!(rn.is_zero() && rd.is_zero());
            (qn, qd)
        };
        // Monic denominator: move its leading coefficient into the numerator.
        let lc = den.leading().unwrap();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Coprime operands (no gcd needed): just scale the denominator monic.
    fn from_coprime(num: Poly, den: Poly) -> RatFun {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::constant(den.symbol(), Rational::one()),
            };
        }
        let lc = den.leading().unwrap();
        if lc.is_one() {
            RatFun { num, den }
        } else {
            let inv = lc.recip();
            RatFun {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        let den = Poly::constant(p.symbol(), Rational::one());
        RatFun { num: p, den }
    }

    pub fn symbol(&self) -> Symbol {
        self.num.symbol()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the value is a polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn recip(&self) -> Result<RatFun, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RatFun::from_coprime(self.den.clone(), self.num.clone()))
    }

    /// Evaluate at a rational point; poles report a zero denominator.
    pub fn eval(&self, at: &Rational) -> Result<Rational, Error> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(at) / d)
    }

    fn exact_div(p: &Poly, d: &Poly) -> Poly {
        if d.degree() == Some(0) {
            return p.scale(&d.leading().unwrap().recip());
        }
        let (q, r) = p.div_rem(d);
        debug_assert!(r.is_zero());
        q
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        // a/b + c/d with g = gcd(b, d): numerator a·(d/g) + c·(b/g) over
        // b·(d/g); any residual common factor divides g.
        let g = Poly::gcd(&self.den, &rhs.den);
        let (db, dd) = (
            RatFun::exact_div(&self.den, &g),
            RatFun::exact_div(&rhs.den, &g),
        );
        let num = &(&self.num * &dd) + &(&rhs.num * &db);
        if num.is_zero() {
            return RatFun::from_poly(Poly::zero(self.symbol()));
        }
        let den = &self.den * &dd;
        let h = Poly::gcd(&num, &g);
        if h.degree() == Some(0) {
            RatFun::from_coprime(num, den)
        } else {
            RatFun::from_coprime(RatFun::exact_div(&num, &h), RatFun::exact_div(&den, &h))
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::from_poly(Poly::zero(self.symbol()));
        }
        // Cancel across the diagonal before multiplying so intermediate
        // degrees never exceed the result's.
        let g1 = Poly::gcd(&self.num, &rhs.den);
        let g2 = Poly::gcd(&rhs.num, &self.den);
        let num = &RatFun::exact_div(&self.num, &g1) * &RatFun::exact_div(&rhs.num, &g2);
        let den = &RatFun::exact_div(&self.den, &g2) * &RatFun::exact_div(&rhs.den, &g1);
        RatFun::from_coprime(num, den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the reciprocal
    fn div(self, rhs: &RatFun) -> RatFun {
        let inv = rhs.recip().expect("division by zero rational function");
        self * &inv
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.num);
        }
        let num_simple = self.num.degree() == Some(0)
            || self.num.coeffs().iter().filter(|c| !c.is_zero()).count() <= 1;
        if num_simple {
            write!(f, "{}/({})", self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RatFunRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RatFunRepr {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<RatFun, D::Error> {
        let repr = RatFunRepr::deserialize(deserializer)?;
        RatFun::new(repr.num, repr.den).map_err(serde::de::Error::custom)
    }
}
