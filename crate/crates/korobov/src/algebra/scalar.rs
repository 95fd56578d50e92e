use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Poly, RatFun, Rational, Symbol};
use crate::error::Error;

/// An exact coefficient: a rational, a polynomial in one formal symbol, or a
/// reduced rational function in one formal symbol.
///
/// Arithmetic auto-promotes along Rational → Poly → RatFun as needed and
/// demotes results to the simplest representation (a RatFun with denominator
/// 1 becomes a Poly; a degree-0 Poly becomes a Rational), so equality of
/// values is equality of representations. Mixing two different symbols is a
/// caller bug and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Poly(Poly),
    RatFun(RatFun),
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(Rational::one())
    }

    /// The formal symbol as a scalar.
    pub fn variable(symbol: Symbol) -> Scalar {
        Scalar::Poly(Poly::variable(symbol))
    }

    /// Demoting constructor: collapses a constant polynomial to a Rational.
    pub fn from_poly(p: Poly) -> Scalar {
        match p.degree() {
            None => Scalar::Rational(Rational::zero()),
            Some(0) => Scalar::Rational(p.coeff(0)),
            _ => Scalar::Poly(p),
        }
    }

    /// Demoting constructor: collapses a denominator-1 RatFun to a Poly (and
    /// further to a Rational when constant).
    pub fn from_ratfun(f: RatFun) -> Scalar {
        if f.is_polynomial() {
            Scalar::from_poly(f.num().clone())
        } else {
            Scalar::RatFun(f)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_one())
    }

    /// The symbol this value involves, if it is not a plain rational.
    pub fn symbol(&self) -> Option<Symbol> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Poly(p) => Some(p.symbol()),
            Scalar::RatFun(f) => Some(f.symbol()),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// View as a polynomial, if the value is one (rationals count).
    pub fn as_poly(&self, symbol: Symbol) -> Option<Poly> {
        match self {
            Scalar::Rational(r) => Some(Poly::constant(symbol, r.clone())),
            Scalar::Poly(p) if p.symbol() == symbol => Some(p.clone()),
            _ => None,
        }
    }

    fn into_ratfun(self, symbol: Symbol) -> RatFun {
        match self {
            Scalar::Rational(r) => RatFun::from_poly(Poly::constant(symbol, r)),
            Scalar::Poly(p) => {
                assert_symbol(p.symbol(), symbol);
                RatFun::from_poly(p)
            }
            Scalar::RatFun(f) => {
                assert_symbol(f.symbol(), symbol);
                f
            }
        }
    }

    pub fn try_invert(&self) -> Result<Scalar, Error> {
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.try_recip()?)),
            Scalar::Poly(p) => {
                let f = RatFun::from_poly(p.clone());
                Ok(Scalar::from_ratfun(f.recip()?))
            }
            Scalar::RatFun(f) => Ok(Scalar::from_ratfun(f.recip()?)),
        }
    }

    /// Integer power; a negative exponent inverts, panicking on zero —
    /// callers raise to negative powers only where zero is impossible.
    pub fn pow(&self, exp: i64) -> Scalar {
        let base = if exp < 0 {
            self.try_invert().expect("negative power of zero scalar")
        } else {
            self.clone()
        };
        let mut result = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            result = &result * &base;
        }
        result
    }

    /// Substitute a rational value for the symbol; poles report an error.
    pub fn eval(&self, at: &Rational) -> Result<Rational, Error> {
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Poly(p) => Ok(p.eval(at)),
            Scalar::RatFun(f) => f.eval(at),
        }
    }
}

fn assert_symbol(got: Symbol, want: Symbol) {
    assert!(got == want, "symbol mismatch: {got} vs {want}");
}

/// Both operands lifted to a common level of the tower.
enum Promoted {
    Rational(Rational, Rational),
    Poly(Poly, Poly),
    RatFun(RatFun, RatFun),
}

fn promote(a: &Scalar, b: &Scalar) -> Promoted {
    let symbol = match (a.symbol(), b.symbol()) {
        (None, None) => {
            let (Scalar::Rational(x), Scalar::Rational(y)) = (a, b) else {
                unreachable!()
            };
            return Promoted::Rational(x.clone(), y.clone());
        }
        (Some(s), None) | (None, Some(s)) => s,
        (Some(s), Some(t)) => {
            assert_symbol(t, s);
            s
        }
    };
    let ratfun = matches!(a, Scalar::RatFun(_)) || matches!(b, Scalar::RatFun(_));
    if ratfun {
        Promoted::RatFun(a.clone().into_ratfun(symbol), b.clone().into_ratfun(symbol))
    } else {
        Promoted::Poly(a.as_poly(symbol).unwrap(), b.as_poly(symbol).unwrap())
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match promote(self, rhs) {
            Promoted::Rational(a, b) => Scalar::Rational(a + b),
            Promoted::Poly(a, b) => Scalar::from_poly(&a + &b),
            Promoted::RatFun(a, b) => Scalar::from_ratfun(&a + &b),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match promote(self, rhs) {
            Promoted::Rational(a, b) => Scalar::Rational(a - b),
            Promoted::Poly(a, b) => Scalar::from_poly(&a - &b),
            Promoted::RatFun(a, b) => Scalar::from_ratfun(&a - &b),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        match promote(self, rhs) {
            Promoted::Rational(a, b) => Scalar::Rational(a * b),
            Promoted::Poly(a, b) => Scalar::from_poly(&a * &b),
            Promoted::RatFun(a, b) => Scalar::from_ratfun(&a * &b),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is multiplication by the reciprocal
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.try_invert().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Poly(p) => Scalar::Poly(-p),
            Scalar::RatFun(f) => Scalar::RatFun(-f),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Scalar {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::Rational(Rational::from(n))
    }
}

impl From<i32> for Scalar {
    fn from(n: i32) -> Scalar {
        Scalar::Rational(Rational::from(n))
    }
}

impl From<usize> for Scalar {
    fn from(n: usize) -> Scalar {
        Scalar::Rational(Rational::from(n))
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, s| acc + s)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, s| acc * s)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Poly(p) => write!(f, "{p}"),
            Scalar::RatFun(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) => r.serialize(serializer),
            Scalar::Poly(p) => p.serialize(serializer),
            Scalar::RatFun(f) => f.serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Scalar, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Rational(Rational),
            RatFun(RatFun),
            Poly(Poly),
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Rational(r) => Scalar::Rational(r),
            Repr::RatFun(f) => Scalar::from_ratfun(f),
            Repr::Poly(p) => Scalar::from_poly(p),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda() -> Scalar {
        Scalar::variable(Symbol::Lambda)
    }

    #[test]
    fn promotion_and_demotion() {
        let l = lambda();
        // λ + 1 is a Poly; (λ+1) − λ demotes to the rational 1.
        let p = &l + &Scalar::one();
        assert!(matches!(p, Scalar::Poly(_)));
        assert_eq!(&p - &l, Scalar::one());
        // 1/λ is a RatFun; λ·(1/λ) demotes to 1.
        let inv = Scalar::one() / &l;
        assert!(matches!(inv, Scalar::RatFun(_)));
        assert_eq!(&l * &inv, Scalar::one());
    }

    #[test]
    fn pow_with_negative_exponent() {
        let l = lambda();
        let f = l.pow(-2);
        assert_eq!(&f * &l.pow(2), Scalar::one());
    }

    #[test]
    fn eval_substitutes() {
        // (1+3λ)/λ at λ=2 → 7/2
        let v = (Scalar::one() + Scalar::from(3) * lambda()) / lambda();
        assert_eq!(v.eval(&Rational::from(2)).unwrap(), Rational::new(7, 2));
        assert_eq!(v.eval(&Rational::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    #[should_panic(expected = "symbol mismatch")]
    fn mixed_symbols_panic() {
        let _ = lambda() + Scalar::variable(Symbol::Mu);
    }

    #[test]
    fn json_forms() {
        let one_over_lambda = Scalar::one() / lambda();
        let poly = Scalar::one() + Scalar::from(3) * lambda();
        assert_eq!(serde_json::to_string(&Scalar::one()).unwrap(), r#""1""#);
        assert_eq!(
            serde_json::to_string(&poly).unwrap(),
            r#"{"symbol":"lambda","coeffs":["1","3"]}"#
        );
        assert_eq!(
            serde_json::to_string(&one_over_lambda).unwrap(),
            r#"{"num":{"symbol":"lambda","coeffs":["1"]},"den":{"symbol":"lambda","coeffs":["0","1"]}}"#
        );
        for v in [Scalar::one(), poly, one_over_lambda] {
            let text = serde_json::to_string(&v).unwrap();
            let back: Scalar = serde_json::from_str(&text).unwrap();
            assert_eq!(back, v);
        }
    }
}
