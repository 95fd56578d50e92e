//! The N-th derivative of 1/log(1+t) in closed form.
//!
//! The coefficients come from the triangular table H_{N,j} of iterated
//! harmonic sums; the closed form is
//!
//! ```text
//! d^N/dt^N 1/log(1+t)
//!   = ((−1)^N (N−1)!/(1+t)^N) · Σ_{i=2..N+1} (i−1)!·H_{N−1,i−2}/log^i(1+t),
//! ```
//!
//! and the same table shows up as the λ→0 limit of the a_j(N) triangle:
//! λ^(2−i)·a_{i−1}(N;λ) → (i−1)!(N−1)!·H_{N−1,i−2}. Both statements are
//! certified here, the first by exact Laurent-series comparison, the second
//! by trailing-coefficient extraction.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::{factorial, Poly, Rational, Scalar, Symbol};
use crate::error::{Error, Result};
use crate::korobov::TriangleA;
use crate::report::{equality_report, params, VerifyReport};
use crate::series::{compare_series, LaurentSeries, PowerSeries};

/// The table H_{N,j}: H_{N,0} = 1, H_{N,1} = 1 + 1/2 + … + 1/N, and
/// H_{N,j} = Σ_{i=1..N} H_{i−1,j−1}/i for deeper columns. Only the
/// triangular part j ≤ N is stored; the getter reads anything above the
/// diagonal as 0, which is what the recursion's out-of-range references
/// (H_{0,j−1} and friends) demand.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicTable {
    rows: Vec<Vec<Rational>>,
}

impl HarmonicTable {
    pub fn new(n_max: usize) -> HarmonicTable {
        let mut table = HarmonicTable { rows: Vec::new() };
        for n in 0..=n_max {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Rational::one());
            for j in 1..=n {
                let mut sum = Rational::zero();
                for i in 1..=n {
                    sum += &(table.entry(i - 1, j - 1) * Rational::from(i).recip());
                }
                row.push(sum);
            }
            table.rows.push(row);
        }
        table
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[Rational] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// H_{n,j}, with zeros above the diagonal (j > n).
    pub fn entry(&self, n: usize, j: usize) -> Rational {
        self.rows[n].get(j).cloned().unwrap_or_else(Rational::zero)
    }
}

impl Serialize for HarmonicTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

/// The closed form of d^N/dt^N 1/log(1+t): sign (−1)^N, outer factor
/// (N−1)!/(1+t)^N, and one term c_i/log^i(1+t) for each i = 2..N+1 with
/// c_i = (i−1)!·H_{N−1,i−2}.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeFormula {
    n: usize,
    terms: Vec<(usize, Rational)>,
}

impl DerivativeFormula {
    pub fn new(n: usize) -> Result<DerivativeFormula> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "derivative formula is stated for N >= 1".to_string(),
            ));
        }
        let table = HarmonicTable::new(n - 1);
        let terms = (2..=n + 1)
            .map(|i| (i, factorial(i - 1) * table.entry(n - 1, i - 2)))
            .collect();
        Ok(DerivativeFormula { n, terms })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> i32 {
        if self.n % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The (N−1)! pulled out in front of the sum.
    pub fn prefactor_factorial(&self) -> Rational {
        factorial(self.n - 1)
    }

    /// The (i, c_i) pairs, i = 2..N+1.
    pub fn terms(&self) -> &[(usize, Rational)] {
        &self.terms
    }

    /// Display numerators with the (N−1)! folded in: always integers.
    fn merged_terms(&self) -> Vec<(usize, Rational)> {
        let front = self.prefactor_factorial();
        self.terms.iter().map(|(i, c)| (*i, &front * c)).collect()
    }

    pub fn latex(&self) -> String {
        let sign = if self.sign() < 0 { "-1" } else { "1" };
        let outer = if self.n == 1 {
            format!("\\frac{{{sign}}}{{1+t}}")
        } else {
            format!("\\frac{{{sign}}}{{(1+t)^{}}}", self.n)
        };
        let body: Vec<String> = self
            .merged_terms()
            .iter()
            .map(|(i, d)| format!("\\frac{{{d}}}{{\\log^{i}(1+t)}}"))
            .collect();
        if body.len() == 1 {
            format!("{outer}{}", body[0])
        } else {
            format!("{outer}\\left({}\\right)", body.join("+"))
        }
    }

    pub fn plain(&self) -> String {
        let sign = if self.sign() < 0 { "-" } else { "" };
        let merged = self.merged_terms();
        if let [(i, d)] = merged.as_slice() {
            // Single term: everything on one denominator.
            return format!("{sign}{d}/((1+t) log^{i}(1+t))");
        }
        let body: Vec<String> = merged
            .iter()
            .map(|(i, d)| format!("{d}/log^{i}(1+t)"))
            .collect();
        format!("{sign}1/(1+t)^{} ({})", self.n, body.join(" + "))
    }
}

impl Serialize for DerivativeFormula {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            i: usize,
            coeff: Rational,
        }
        let mut s = serializer.serialize_struct("DerivativeFormula", 4)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("sign", &self.sign())?;
        s.serialize_field("prefactor_factorial", &self.prefactor_factorial())?;
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(i, c)| Term {
                i: *i,
                coeff: c.clone(),
            })
            .collect();
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

/// 1/log(1+t) as an exact Laurent series: valuation −1, rational
/// coefficients, known through t^(order−2).
pub fn loginv_series(order: usize) -> LaurentSeries {
    LaurentSeries::from_power(PowerSeries::log1p(order))
        .invert()
        .expect("log(1+t) has valuation 1")
}

/// Certifies the derivative formula for one N by comparing the N-fold
/// derivative of 1/log(1+t) against the assembled closed form.
pub fn verify_loginv(n: usize, order: usize) -> Result<VerifyReport> {
    assert!(n >= 1, "derivative formula needs N >= 1");
    let inv = loginv_series(order);
    let mut lhs = inv.clone();
    for _ in 0..n {
        lhs = lhs.derivative();
    }

    let formula = DerivativeFormula::new(n)?;
    let mut power = inv.clone(); // 1/log^i(1+t), raised as i advances
    let mut sum: Option<LaurentSeries> = None;
    for (_, c) in formula.terms() {
        power = &power * &inv;
        let term = power.mul_scalar(&Scalar::from(c.clone()));
        sum = Some(match sum {
            None => term,
            Some(s) => &s + &term,
        });
    }
    let front = if formula.sign() < 0 {
        -&Scalar::from(formula.prefactor_factorial())
    } else {
        Scalar::from(formula.prefactor_factorial())
    };
    let pref = PowerSeries::binomial_pow(&Scalar::from(-(n as i64)), order);
    let rhs =
        (&sum.expect("at least one term") * &LaurentSeries::from_power(pref)).mul_scalar(&front);

    VerifyReport::from_comparison(
        "loginv",
        params(&[("N", n.to_string())]),
        &compare_series(&lhs, &rhs),
    )
}

/// Certifies the λ→0 limit λ^(2−i)·a_{i−1}(N;λ) → (i−1)!(N−1)!·H_{N−1,i−2}
/// for i = 2..N+1: each a_{i−1}(N;λ) must have λ-valuation exactly i−2 with
/// the predicted trailing coefficient. Also checks a_0(N) has λ-valuation 0
/// (its limit is the N = i−1 case the sum starts after).
///
/// The triangle must be built with symbolic λ and reach row `n`.
pub fn verify_lambda_limit(triangle: &TriangleA, n: usize) -> Result<VerifyReport> {
    assert!(n >= 1, "limit identity needs N >= 1");
    assert!(
        triangle.is_symbolic() && triangle.n_max() >= n,
        "limit extraction needs a symbolic triangle through row {n}"
    );
    let table = HarmonicTable::new(n - 1);

    let mut checks: Vec<(String, Scalar, Scalar)> = Vec::new();
    let trailing_monomial = |value: &Scalar| -> Scalar {
        let poly = value
            .as_poly(Symbol::Lambda)
            .expect("rows past the first are polynomial in lambda");
        match poly.trailing() {
            Ok((degree, coeff)) => Scalar::from_poly(Poly::monomial(Symbol::Lambda, coeff, degree)),
            Err(_) => Scalar::zero(),
        }
    };
    for i in 2..=n + 1 {
        let expect = factorial(i - 1) * factorial(n - 1) * table.entry(n - 1, i - 2);
        checks.push((
            format!("trailing term of a_{}({n})", i - 1),
            trailing_monomial(triangle.entry(n, i - 1)),
            Scalar::from_poly(Poly::monomial(Symbol::Lambda, expect, i - 2)),
        ));
    }
    // a_0(N) = (N+λ−1)_{N−1} has nonzero constant term (N−1)!.
    checks.push((
        format!("trailing term of a_0({n})"),
        trailing_monomial(triangle.entry(n, 0)),
        Scalar::from(factorial(n - 1)),
    ));

    Ok(equality_report(
        "lambda-limit",
        params(&[("N", n.to_string())]),
        checks,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Binding;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn table_pinned_entries() {
        let t = HarmonicTable::new(4);
        for n in 0..=4 {
            assert!(t.entry(n, 0).is_one());
        }
        // Column 1 holds the harmonic numbers.
        assert_eq!(t.entry(3, 1), rat(11, 6));
        assert_eq!(t.entry(4, 1), rat(25, 12));
        // Deeper columns: H_{2,2} = 1/2, H_{3,2} = 1, H_{3,3} = 1/6.
        assert_eq!(t.entry(2, 2), rat(1, 2));
        assert_eq!(t.entry(3, 2), Rational::one());
        assert_eq!(t.entry(3, 3), rat(1, 6));
        // Above the diagonal everything reads 0.
        assert!(t.entry(0, 1).is_zero());
        assert!(t.entry(2, 5).is_zero());
    }

    #[test]
    fn table_diagonal_is_inverse_factorial() {
        let t = HarmonicTable::new(8);
        for n in 1..=8 {
            assert_eq!(t.entry(n, n), factorial(n).recip(), "H_{{{n},{n}}}");
        }
    }

    #[test]
    fn formula_terms_come_from_the_table() {
        let f = DerivativeFormula::new(3).unwrap();
        assert_eq!(f.sign(), -1);
        assert_eq!(f.prefactor_factorial(), rat(2, 1));
        assert_eq!(
            f.terms(),
            &[(2, Rational::one()), (3, rat(3, 1)), (4, rat(3, 1))]
        );

        let f = DerivativeFormula::new(5).unwrap();
        let table = HarmonicTable::new(4);
        assert_eq!(f.terms().len(), 5);
        for (i, c) in f.terms() {
            assert_eq!(c, &(factorial(i - 1) * table.entry(4, i - 2)));
        }

        assert!(matches!(
            DerivativeFormula::new(0).unwrap_err(),
            Error::InvalidParameter(_)
        ));
    }

    #[test]
    fn latex_matches_displayed_examples() {
        assert_eq!(
            DerivativeFormula::new(1).unwrap().latex(),
            r"\frac{-1}{1+t}\frac{1}{\log^2(1+t)}"
        );
        assert_eq!(
            DerivativeFormula::new(2).unwrap().latex(),
            r"\frac{1}{(1+t)^2}\left(\frac{1}{\log^2(1+t)}+\frac{2}{\log^3(1+t)}\right)"
        );
        assert_eq!(
            DerivativeFormula::new(3).unwrap().latex(),
            r"\frac{-1}{(1+t)^3}\left(\frac{2}{\log^2(1+t)}+\frac{6}{\log^3(1+t)}+\frac{6}{\log^4(1+t)}\right)"
        );
    }

    #[test]
    fn plain_rendering() {
        assert_eq!(
            DerivativeFormula::new(1).unwrap().plain(),
            "-1/((1+t) log^2(1+t))"
        );
        assert_eq!(
            DerivativeFormula::new(2).unwrap().plain(),
            "1/(1+t)^2 (1/log^2(1+t) + 2/log^3(1+t))"
        );
    }

    #[test]
    fn json_rendering_carries_raw_coefficients() {
        let f = DerivativeFormula::new(3).unwrap();
        let value = serde_json::to_value(&f).unwrap();
        let expect = serde_json::json!({
            "n": 3,
            "sign": -1,
            "prefactor_factorial": "2",
            "terms": [
                {"i": 2, "coeff": "1"},
                {"i": 3, "coeff": "3"},
                {"i": 4, "coeff": "3"}
            ]
        });
        assert_eq!(value, expect);
    }

    #[test]
    fn loginv_series_leading_terms() {
        // 1/log(1+t) = 1/t + 1/2 − t/12 + t²/24 − …
        let s = loginv_series(10);
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1).unwrap(), Scalar::one());
        assert_eq!(s.coeff(0).unwrap(), Scalar::from(rat(1, 2)));
        assert_eq!(s.coeff(1).unwrap(), Scalar::from(rat(-1, 12)));
        assert_eq!(s.coeff(2).unwrap(), Scalar::from(rat(1, 24)));
    }

    #[test]
    fn derivative_formula_verifies() {
        for n in 1..=4 {
            let report = verify_loginv(n, 16).unwrap();
            assert!(report.passed(), "N={n}: {report}");
        }
    }

    #[test]
    fn lambda_limit_holds_on_small_triangle() {
        let triangle = TriangleA::by_recurrence(&Binding::Symbolic, 6).unwrap();
        for n in 1..=6 {
            let report = verify_lambda_limit(&triangle, n).unwrap();
            assert!(report.passed(), "N={n}: {report}");
        }
    }

    #[test]
    fn lambda_limit_pinned_instances() {
        // a_1(2) = 1+3λ → λ⁰-coefficient 1 = 1!·1!·H_{1,0};
        // a_2(2) = 2λ → λ¹-coefficient 2 = 2!·1!·H_{1,1}.
        let triangle = TriangleA::by_recurrence(&Binding::Symbolic, 2).unwrap();
        let report = verify_lambda_limit(&triangle, 2).unwrap();
        assert!(report.passed(), "{report}");
        let table = HarmonicTable::new(1);
        assert_eq!(
            factorial(1) * factorial(1) * table.entry(1, 0),
            Rational::one()
        );
        assert_eq!(factorial(2) * factorial(1) * table.entry(1, 1), rat(2, 1));
    }
}
