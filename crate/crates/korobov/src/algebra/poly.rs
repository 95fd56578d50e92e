use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Rational, Symbol};
use crate::error::Error;

/// Dense univariate polynomial over the rationals, in one formal symbol.
///
/// `coeffs[k]` multiplies `symbol^k`; the highest-index coefficient is always
/// nonzero, and the zero polynomial stores an empty list (its degree is
/// `None`). Mixing two symbols in one operation is a caller bug and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    symbol: Symbol,
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(symbol: Symbol, mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { symbol, coeffs }
    }

    pub fn zero(symbol: Symbol) -> Poly {
        Poly {
            symbol,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(symbol: Symbol, value: Rational) -> Poly {
        Poly::new(symbol, vec![value])
    }

    /// The polynomial `s` itself.
    pub fn variable(symbol: Symbol) -> Poly {
        Poly::new(symbol, vec![Rational::zero(), Rational::one()])
    }

    pub fn monomial(symbol: Symbol, coeff: Rational, degree: usize) -> Poly {
        if coeff.is_zero() {
            return Poly::zero(symbol);
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Poly { symbol, coeffs }
    }

    pub fn symbol(&self) -> Symbol {
        self.symbol
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `symbol^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Smallest exponent with a nonzero coefficient, together with that
    /// coefficient. The zero polynomial has no trailing term.
    pub fn trailing(&self) -> Result<(usize, Rational), Error> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| (k, self.coeffs[k].clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Least positive integer D such that D·p has integer coefficients.
    pub fn denominator_lcm(&self) -> Rational {
        let mut d = num_bigint::BigInt::from(1);
        for c in &self.coeffs {
            d = num_integer::lcm(d, c.denom().clone());
        }
        Rational::from_bigint(d)
    }

    fn check_symbol(&self, other: &Poly) {
        assert!(
            self.symbol == other.symbol,
            "symbol mismatch: {} vs {}",
            self.symbol,
            other.symbol
        );
    }

    pub fn scale(&self, factor: &Rational) -> Poly {
        if factor.is_zero() {
            return Poly::zero(self.symbol);
        }
        Poly {
            symbol: self.symbol,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn pow(&self, exp: usize) -> Poly {
        let mut result = Poly::constant(self.symbol, Rational::one());
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    /// Leading coefficient scaled to 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Euclidean division: `self = q·div + r` with `deg r < deg div`.
    /// Panics on a zero divisor (caller bug).
    pub fn div_rem(&self, div: &Poly) -> (Poly, Poly) {
        self.check_symbol(div);
        let dd = div.degree().expect("division by zero polynomial");
        let dlc = div.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(self.symbol), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let factor = rem[k].clone() / &dlc;
            if !factor.is_zero() {
                for (i, dc) in div.coeffs.iter().enumerate() {
                    rem[k - dd + i] -= &(dc * &factor);
                }
            }
            quot[k - dd] = factor;
            rem.pop();
        }
        (Poly::new(self.symbol, quot), Poly::new(self.symbol, rem))
    }

    /// Synthetic division by `(s − root)`: returns the quotient when the
    /// remainder vanishes, i.e. when `root` is actually a root.
    pub fn deflate(&self, root: &Rational) -> Option<Poly> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        let mut quot = vec![Rational::zero(); d];
        let mut carry = Rational::zero();
        for k in (0..=d).rev() {
            let value = self.coeffs[k].clone() + &carry;
            if k == 0 {
                return value.is_zero().then(|| Poly::new(self.symbol, quot));
            }
            carry = &value * root;
            quot[k - 1] = value;
        }
        unreachable!()
    }

    /// Multiplicity of `root` in `self` (0 if not a root), with the fully
    /// deflated cofactor.
    pub fn root_multiplicity(&self, root: &Rational) -> (usize, Poly) {
        let mut mult = 0;
        let mut current = self.clone();
        while let Some(next) = current.deflate(root) {
            mult += 1;
            current = next;
        }
        (mult, current)
    }

    /// Detects the shape `lc·(s − r)^d` (d ≥ 1), returning `(r, d)`.
    ///
    /// Every denominator on the hot paths of this crate is a power of λ or of
    /// (μ − 1); recognizing the shape turns gcd into root-multiplicity
    /// counting.
    pub fn linear_power_root(&self) -> Option<(Rational, usize)> {
        let d = self.degree()?;
        if d == 0 {
            return None;
        }
        // (s−r)^d has s^(d−1) coefficient −d·r·lc, which pins down r.
        let lc = self.leading().unwrap();
        let root = -(&self.coeffs[d - 1] / &(Rational::from(d as i64) * lc));
        if d >= 2 {
            // Cheap rejection before the O(d·deg) deflation: the s^(d−2)
            // coefficient of lc·(s−r)^d is lc·C(d,2)·r². Candidate roots read
            // off arbitrary polynomials essentially never survive this.
            let pairs = Rational::new((d * (d - 1) / 2) as i64, 1);
            if self.coeffs[d - 2] != &(&pairs * lc) * &(&root * &root) {
                return None;
            }
        }
        let (mult, _) = self.root_multiplicity(&root);
        (mult == d).then_some((root, d))
    }

    /// Monic gcd. Powers of linear factors — the only denominators the
    /// generating functions here ever produce — short-circuit to root
    /// counting; everything else takes the Euclidean route.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        a.check_symbol(b);
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.degree() == Some(0) || b.degree() == Some(0) {
            return Poly::constant(a.symbol, Rational::one());
        }
        for (p, q) in [(a, b), (b, a)] {
            if let Some((root, d)) = p.linear_power_root() {
                let (mult, _) = q.root_multiplicity(&root);
                let shared = mult.min(d);
                if shared == 0 {
                    return Poly::constant(a.symbol, Rational::one());
                }
                let linear = Poly::new(a.symbol, vec![-root, Rational::one()]);
                return linear.pow(shared);
            }
        }
        let mut x = a.monic();
        let mut y = b.monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.check_symbol(rhs);
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::new(self.symbol, coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            symbol: self.symbol,
            coeffs: self.coeffs.iter().map(Neg::neg).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.check_symbol(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.symbol);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(self.symbol, coeffs)
    }
}

impl fmt::Display for Poly {
    /// Ascending-degree plain text, e.g. `1+3*lambda-1/2*lambda^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str("-")?;
            } else {
                f.write_str("+")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(self.symbol.name())?;
                if k > 1 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    symbol: Symbol,
    coeffs: Vec<Rational>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            symbol: self.symbol,
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Poly, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        Ok(Poly::new(repr.symbol, repr.coeffs))
    }
}

impl Serialize for Symbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Symbol, D::Error> {
        let name = String::deserialize(deserializer)?;
        Symbol::from_name(&name).ok_or_else(|| D::Error::custom(format!("unknown symbol {name:?}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam(coeffs: &[(i64, i64)]) -> Poly {
        Poly::new(
            Symbol::Lambda,
            coeffs.iter().map(|&(n, d)| Rational::new(n, d)).collect(),
        )
    }

    #[test]
    fn trims_and_reports_degree() {
        let p = lam(&[(1, 1), (0, 1), (0, 1)]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::zero(Symbol::Lambda).degree(), None);
    }

    #[test]
    fn trailing_term() {
        assert_eq!(
            lam(&[(0, 1), (2, 1)]).trailing().unwrap(),
            (1, Rational::from(2))
        );
        assert_eq!(
            lam(&[(1, 1), (3, 1)]).trailing().unwrap(),
            (0, Rational::one())
        );
        assert_eq!(
            lam(&[(0, 1), (0, 1), (0, 1), (1, 6)]).trailing().unwrap(),
            (3, Rational::new(1, 6))
        );
        assert_eq!(
            Poly::zero(Symbol::Lambda).trailing(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn div_rem_reconstructs() {
        let p = lam(&[(3, 1), (-2, 1), (0, 1), (5, 1)]);
        let d = lam(&[(1, 2), (1, 1)]);
        let (q, r) = p.div_rem(&d);
        assert_eq!(&(&q * &d) + &r, p);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_of_shifted_squares() {
        // (λ−1)²(λ+2) and (λ−1)(λ−3) share exactly (λ−1).
        let a = &lam(&[(-1, 1), (1, 1)]).pow(2) * &lam(&[(2, 1), (1, 1)]);
        let b = &lam(&[(-1, 1), (1, 1)]) * &lam(&[(-3, 1), (1, 1)]);
        assert_eq!(Poly::gcd(&a, &b), lam(&[(-1, 1), (1, 1)]));
    }

    #[test]
    fn linear_power_detection() {
        let p = lam(&[(-1, 1), (1, 1)]).pow(4).scale(&Rational::new(3, 2));
        assert_eq!(p.linear_power_root(), Some((Rational::one(), 4)));
        assert_eq!(
            Poly::monomial(Symbol::Lambda, Rational::from(2), 3).linear_power_root(),
            Some((Rational::zero(), 3))
        );
        assert_eq!(lam(&[(2, 1), (0, 1), (1, 1)]).linear_power_root(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(lam(&[(1, 1), (3, 1)]).to_string(), "1+3*lambda");
        assert_eq!(lam(&[(0, 1), (0, 1), (-1, 2)]).to_string(), "-1/2*lambda^2");
        assert_eq!(lam(&[(0, 1), (1, 1)]).to_string(), "lambda");
        assert_eq!(Poly::zero(Symbol::Lambda).to_string(), "0");
    }

    #[test]
    #[should_panic(expected = "symbol mismatch")]
    fn mixed_symbols_panic() {
        let _ = &Poly::variable(Symbol::Lambda) + &Poly::variable(Symbol::Mu);
    }

    #[test]
    fn json_round_trip() {
        let p = lam(&[(1, 1), (0, 1), (-7, 3)]);
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, r#"{"symbol":"lambda","coeffs":["1","0","-7/3"]}"#);
        let back: Poly = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
    }
}
