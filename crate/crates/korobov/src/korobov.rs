//! Korobov numbers and polynomials, the coefficient triangle a_j(N), and the
//! identities tying them together.
//!
//! Everything here is built from two exact series: the generating function
//! λt(1+t)^x/((1+t)^λ − 1) and the Laurent series F = 1/((1+t)^λ − 1). The
//! triangle a_j(N) gives the closed form of the N-th derivative,
//!
//! ```text
//! F^(N) = ((−1)^N λ/(1+t)^N) · Σ_{i=1..N+1} a_{i−1}(N)·F^i,
//! ```
//!
//! and the verify functions certify that equation, the triangle's closed
//! forms, and the order-m sum rule by exact coefficient comparison.

use serde::{Serialize, Serializer};

use crate::algebra::{binomial, factorial, falling_factorial, Binding, Rational, Scalar, Symbol};
use crate::error::{Error, Result};
use crate::report::{equality_report, params, VerifyReport};
use crate::series::{compare_series, Domain, LaurentSeries, PowerSeries};

/// λ as a scalar, rejecting the degenerate value 0 (the generating function
/// has no expansion there: (1+t)^0 − 1 vanishes identically).
fn lambda_scalar(lambda: &Binding) -> Result<Scalar> {
    match lambda {
        Binding::Symbolic => Ok(Scalar::variable(Symbol::Lambda)),
        Binding::Bound(r) if r.is_zero() => Err(Error::LambdaZero),
        Binding::Bound(r) => Ok(Scalar::Rational(r.clone())),
    }
}

fn x_scalar(x: &Binding) -> Scalar {
    match x {
        Binding::Symbolic => Scalar::variable(Symbol::X),
        Binding::Bound(r) => Scalar::Rational(r.clone()),
    }
}

/// ((1+t)^λ − 1)/(λt), the unit-constant-term factor of the denominator:
/// its t^k coefficient is (λ−1)_k/(k+1)!.
fn gf_unit(lam: &Scalar, order: usize) -> PowerSeries {
    let base = lam - &Scalar::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut ff = Scalar::one(); // (λ−1)_k, extended one factor per step
    for k in 0..=order {
        if k > 0 {
            ff = &ff * &(&base - &Scalar::from(k as i64 - 1));
        }
        coeffs.push(&ff * &Scalar::from(factorial(k + 1).recip()));
    }
    PowerSeries::new(Domain::of_scalar(lam), coeffs)
}

/// The generating function λt(1+t)^x/((1+t)^λ − 1), whose t^n coefficient is
/// K_n(λ, x)/n!. At most one of λ, x may stay symbolic.
pub fn korobov_gf(lambda: &Binding, x: &Binding, order: usize) -> Result<PowerSeries> {
    if lambda.is_symbolic() && x.is_symbolic() {
        return Err(Error::BothSymbolic(Symbol::Lambda, Symbol::X));
    }
    let lam = lambda_scalar(lambda)?;
    let gf = gf_unit(&lam, order)
        .invert()
        .expect("unit factor has constant term 1");
    let xs = x_scalar(x);
    if xs.is_zero() {
        return Ok(gf);
    }
    Ok(&gf * &PowerSeries::binomial_pow(&xs, order))
}

/// F = 1/((1+t)^λ − 1): valuation −1, leading coefficient 1/λ, known through
/// t^order. Built by factoring λt out of the denominator and inverting the
/// unit part.
pub fn korobov_f(lambda: &Binding, order: usize) -> Result<LaurentSeries> {
    let lam = lambda_scalar(lambda)?;
    let body = gf_unit(&lam, order + 1).mul_scalar(&lam);
    LaurentSeries::from_power_at(1, body).invert()
}

/// A prefix K_0..K_{n_max} of one Korobov sequence: numbers (x = 0, m = 1),
/// polynomials in x, or order-m numbers from the m-th power of the
/// generating function. Values carry the n! normalization, so K_n is n!
/// times the series coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct KorobovSequence {
    m: usize,
    lambda: Binding,
    x: Binding,
    values: Vec<Scalar>,
}

impl KorobovSequence {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> &Binding {
        &self.lambda
    }

    pub fn x(&self) -> &Binding {
        &self.x
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value(&self, n: usize) -> &Scalar {
        &self.values[n]
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }
}

impl Serialize for KorobovSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.values.serialize(serializer)
    }
}

fn sequence_from_series(
    series: &PowerSeries,
    m: usize,
    lambda: &Binding,
    x: &Binding,
) -> KorobovSequence {
    let values = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * &Scalar::from(factorial(n)))
        .collect();
    KorobovSequence {
        m,
        lambda: lambda.clone(),
        x: x.clone(),
        values,
    }
}

/// K_n^{(m)}(λ) = n!·[t^n] gf^m for n ≤ n_max; m = 1 gives the Korobov
/// numbers K_n(λ).
pub fn korobov_numbers(lambda: &Binding, n_max: usize, m: usize) -> Result<KorobovSequence> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "sequence order m must be at least 1".to_string(),
        ));
    }
    let x = Binding::Bound(Rational::zero());
    let gf = korobov_gf(lambda, &x, n_max)?;
    let mut power = gf.clone();
    for _ in 1..m {
        power = &power * &gf;
    }
    Ok(sequence_from_series(&power, m, lambda, &x))
}

/// K_n(λ, x) = n!·[t^n] gf·(1+t)^x with exactly one of λ, x symbolic; the
/// values are then univariate polynomials in the free parameter.
pub fn korobov_polynomials(lambda: &Binding, x: &Binding, n_max: usize) -> Result<KorobovSequence> {
    match (lambda.is_symbolic(), x.is_symbolic()) {
        (true, true) => return Err(Error::BothSymbolic(Symbol::Lambda, Symbol::X)),
        (false, false) => {
            return Err(Error::InvalidParameter(
                "korobov polynomials need exactly one of lambda, x symbolic".to_string(),
            ))
        }
        _ => {}
    }
    let gf = korobov_gf(lambda, x, n_max)?;
    Ok(sequence_from_series(&gf, 1, lambda, x))
}

/// The triangle a_j(N) for 0 ≤ j ≤ N ≤ n_max. Row 0 is the lone entry 1/λ;
/// every entry in rows N ≥ 1 is a polynomial in λ.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleA {
    lambda: Binding,
    rows: Vec<Vec<Scalar>>,
}

impl TriangleA {
    /// Fills rows from a_0(0) = 1/λ by
    /// a_j(N+1) = (N + (j+1)λ)·a_j(N) + λj·a_{j−1}(N),
    /// reading entries outside the triangle as zero.
    pub fn by_recurrence(lambda: &Binding, n_max: usize) -> Result<TriangleA> {
        let lam = lambda_scalar(lambda)?;
        let mut rows = vec![vec![lam.try_invert().expect("lambda is nonzero")]];
        for n in 0..n_max {
            let prev = &rows[n];
            let mut row = Vec::with_capacity(n + 2);
            for j in 0..=n + 1 {
                let mut entry = Scalar::zero();
                if j <= n {
                    let factor = &Scalar::from(n as i64) + &(&lam * &Scalar::from(j as i64 + 1));
                    entry = &factor * &prev[j];
                }
                if j >= 1 {
                    entry = &entry + &(&(&lam * &Scalar::from(j as i64)) * &prev[j - 1]);
                }
                row.push(entry);
            }
            rows.push(row);
        }
        Ok(TriangleA {
            lambda: lambda.clone(),
            rows,
        })
    }

    /// Fills column j from column j−1 by the summed closed form
    /// a_j(N) = jλ·Σ_{i=0..N−j} (N + (j+1)λ − 1)_i · a_{j−1}(N−i−1),
    /// seeding column 0 with a_0(0) = 1/λ and a_0(N) = (N+λ−1)_{N−1}.
    pub fn by_closed_form(lambda: &Binding, n_max: usize) -> Result<TriangleA> {
        let lam = lambda_scalar(lambda)?;
        // cols[j][k] holds a_j(j + k).
        let mut col0 = vec![lam.try_invert().expect("lambda is nonzero")];
        for n in 1..=n_max {
            let base = &lam + &Scalar::from(n as i64 - 1);
            col0.push(falling_factorial(&base, n - 1));
        }
        let mut cols = vec![col0];
        for j in 1..=n_max {
            let prev = &cols[j - 1];
            let mut col = Vec::with_capacity(n_max - j + 1);
            for n in j..=n_max {
                let base = &(&Scalar::from(n as i64) + &(&lam * &Scalar::from(j as i64 + 1)))
                    - &Scalar::one();
                let mut ff = Scalar::one(); // (N + (j+1)λ − 1)_i
                let mut sum = Scalar::zero();
                for i in 0..=n - j {
                    if i > 0 {
                        ff = &ff * &(&base - &Scalar::from(i as i64 - 1));
                    }
                    // a_{j−1}(N−i−1) sits at offset N−i−j in column j−1.
                    sum = &sum + &(&ff * &prev[n - i - j]);
                }
                col.push(&(&lam * &Scalar::from(j as i64)) * &sum);
            }
            cols.push(col);
        }
        let mut rows: Vec<Vec<Scalar>> = (0..=n_max).map(|n| Vec::with_capacity(n + 1)).collect();
        for (j, col) in cols.iter().enumerate() {
            for (k, value) in col.iter().enumerate() {
                rows[j + k].push(value.clone());
            }
        }
        Ok(TriangleA {
            lambda: lambda.clone(),
            rows,
        })
    }

    pub fn lambda(&self) -> &Binding {
        &self.lambda
    }

    pub fn is_symbolic(&self) -> bool {
        self.lambda.is_symbolic()
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn entry(&self, n: usize, j: usize) -> &Scalar {
        &self.rows[n][j]
    }

    /// Overwrites one entry in place. Exists so the failure path of the
    /// verification pipeline can be exercised end-to-end; library code never
    /// calls it.
    #[doc(hidden)]
    pub fn corrupt_entry(&mut self, n: usize, j: usize, value: Scalar) {
        self.rows[n][j] = value;
    }
}

impl Serialize for TriangleA {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows.serialize(serializer)
    }
}

/// Certifies F^(N) = ((−1)^N λ/(1+t)^N)·Σ_{i=1..N+1} a_{i−1}(N)·F^i by
/// comparing the N-th derivative of F against the triangle-built right-hand
/// side on the full window both sides are known on.
///
/// Both sides are multiplied by the unit λ^(N+1) first, which restates the
/// identity in terms of H = λF: coefficient k of the difference picks up the
/// nonzero factor λ^(N+1), so it vanishes exactly when the original does.
/// The payoff is that H and every weight below live in ℚ[λ] — the whole
/// comparison runs on polynomial coefficients instead of rational functions.
pub fn verify_ode_korobov(n: usize, lambda: &Binding, order: usize) -> Result<VerifyReport> {
    let f = korobov_f(lambda, order)?;
    let lam = lambda_scalar(lambda)?;
    let h = f.mul_scalar(&lam);

    // λ^(N+1)·F^(N) = λ^N·H^(N).
    let mut lhs = h.clone();
    for _ in 0..n {
        lhs = lhs.derivative();
    }
    lhs = lhs.mul_scalar(&lam.pow(n as i64));

    let triangle = TriangleA::by_recurrence(lambda, n)?;
    let row = triangle.row(n);
    // λ^(N+1)·λ·Σ a_{i−1}(N)·F^i = Σ a_{i−1}(N)·λ^(N+2−i)·H^i, assembled as
    // (((a_N·λ·H + a_{N−1}·λ²)·H + …)·H + a_0·λ^(N+1))·H.
    let kt = h.known_through();
    let mut lam_pow = lam.clone();
    let mut sum = h.mul_scalar(&(&row[n] * &lam_pow));
    for j in (0..n).rev() {
        lam_pow = &lam_pow * &lam;
        let c = &row[j] * &lam_pow;
        sum = &(&sum + &LaurentSeries::constant(c, kt)) * &h;
    }

    let mut rhs = if n % 2 == 0 { sum } else { -&sum };
    if n > 0 {
        // One past `order` so this factor does not shave the window below
        // the derivative's natural reach of t^(order−N).
        let pref = PowerSeries::binomial_pow(&Scalar::from(-(n as i64)), order + 1);
        rhs = &rhs * &LaurentSeries::from_power(pref);
    }

    VerifyReport::from_comparison(
        "ode-korobov",
        params(&[("N", n.to_string()), ("lambda", lambda.label())]),
        &compare_series(&lhs, &rhs),
    )
}

/// Runs the derivative-identity check for every N in 0..=n_max, reusing one
/// series, one triangle and one ladder of powers H^1..H^(n_max+1) across the
/// whole family. Report for report this matches [`verify_ode_korobov`]; the
/// sharing just removes the per-N rebuild, which dominates at depth 8.
pub fn verify_ode_korobov_family(
    lambda: &Binding,
    n_max: usize,
    order: usize,
) -> Result<Vec<VerifyReport>> {
    let f = korobov_f(lambda, order)?;
    let lam = lambda_scalar(lambda)?;
    let h = f.mul_scalar(&lam);
    let triangle = TriangleA::by_recurrence(lambda, n_max)?;

    let mut powers = vec![h.clone()];
    for _ in 1..=n_max {
        let next = powers.last().expect("nonempty") * &h;
        powers.push(next);
    }

    let mut deriv = h.clone();
    let mut reports = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            deriv = deriv.derivative();
        }
        let lhs = deriv.mul_scalar(&lam.pow(n as i64));

        let row = triangle.row(n);
        // Σ a_{i−1}(N)·λ^(N+2−i)·H^i, drawn from the cached powers. Each
        // power is truncated exactly as the Horner intermediates are, so the
        // coefficients agree term for term with the single-N assembly.
        let mut lam_pow = lam.clone();
        let mut sum = powers[n].mul_scalar(&(&row[n] * &lam_pow));
        for j in (0..n).rev() {
            lam_pow = &lam_pow * &lam;
            sum = &sum + &powers[j].mul_scalar(&(&row[j] * &lam_pow));
        }

        let mut rhs = if n % 2 == 0 { sum } else { -&sum };
        if n > 0 {
            let pref = PowerSeries::binomial_pow(&Scalar::from(-(n as i64)), order + 1);
            rhs = &rhs * &LaurentSeries::from_power(pref);
        }

        reports.push(VerifyReport::from_comparison(
            "ode-korobov",
            params(&[("N", n.to_string()), ("lambda", lambda.label())]),
            &compare_series(&lhs, &rhs),
        )?);
    }
    Ok(reports)
}

/// Certifies the order-m sum rule with symbolic λ:
///
/// ```text
/// Σ_{i=0..min(n,N)} λ^(i−N+1)·(n)_i·a_{N−i}(N)·K_{n−i}^{(N+1−i)}(λ)
///   = N!·(N)_n                                              for 0 ≤ n ≤ N,
///   = (−1)^N Σ_{ℓ=0..n−N−1} C(N,ℓ)·K_{n−ℓ}(λ)·(n)_{N+1+ℓ}/(n−ℓ)   for n > N.
/// ```
///
/// Both sides are evaluated in ℚ(λ) (the λ-powers may be negative) and
/// compared exactly.
pub fn verify_order_m_identity(n: usize, big_n: usize) -> Result<VerifyReport> {
    assert!(big_n >= 1, "order-m identity needs N >= 1");
    let lambda = Binding::Symbolic;
    let lam = Scalar::variable(Symbol::Lambda);
    let triangle = TriangleA::by_recurrence(&lambda, big_n)?;
    let row = triangle.row(big_n);

    // Powers gf^1..gf^(N+1), each truncated at t^n.
    let gf = korobov_gf(&lambda, &Binding::Bound(Rational::zero()), n)?;
    let mut powers = vec![gf.clone()];
    for _ in 1..=big_n {
        let next = powers.last().expect("nonempty") * &gf;
        powers.push(next);
    }
    let k_value = |idx: usize, m: usize| -> Scalar {
        powers[m - 1].coeff(idx).expect("within order") * &Scalar::from(factorial(idx))
    };

    let nn = Scalar::from(n as i64);
    let mut lhs = Scalar::zero();
    for i in 0..=n.min(big_n) {
        let weight = &lam.pow(i as i64 - big_n as i64 + 1) * &falling_factorial(&nn, i);
        lhs = &lhs + &(&weight * &(&row[big_n - i] * &k_value(n - i, big_n + 1 - i)));
    }

    let rhs = if n <= big_n {
        &Scalar::from(factorial(big_n)) * &falling_factorial(&Scalar::from(big_n as i64), n)
    } else {
        let mut acc = Scalar::zero();
        for l in 0..=n - big_n - 1 {
            let term = &(&Scalar::from(binomial(big_n, l)) * &k_value(n - l, 1))
                * &(&falling_factorial(&nn, big_n + 1 + l) / &Scalar::from(n as i64 - l as i64));
            acc = &acc + &term;
        }
        if big_n % 2 == 0 {
            acc
        } else {
            -&acc
        }
    };

    Ok(equality_report(
        "order-m",
        params(&[
            ("N", big_n.to_string()),
            ("lambda", "sym".to_string()),
            ("n", n.to_string()),
        ]),
        vec![(format!("(n={n}, N={big_n})"), lhs, rhs)],
    ))
}

/// Certifies the series identity the order-m rule is read off from:
///
/// ```text
/// (1+t)^N t^(N+1) F^(N) = (1/λ)·[ (−1)^N N! Σ_{n=0..N} (N)_n t^n/n!
///     + Σ_{n>N} ( Σ_{ℓ=0..n−N−1} C(N,ℓ)·K_{n−ℓ}(λ)·(n)_{N+1+ℓ}/(n−ℓ) ) t^n/n! ].
/// ```
pub fn verify_order_m_series(big_n: usize, order: usize) -> Result<VerifyReport> {
    assert!(big_n >= 1, "order-m series identity needs N >= 1");
    let lambda = Binding::Symbolic;
    let lam = Scalar::variable(Symbol::Lambda);

    let mut deriv = korobov_f(&lambda, order)?;
    for _ in 0..big_n {
        deriv = deriv.derivative();
    }
    let pref = PowerSeries::binomial_pow(&Scalar::from(big_n as i64), order);
    let lhs = &deriv.shift(big_n as i64 + 1) * &LaurentSeries::from_power(pref);

    let numbers = korobov_numbers(&lambda, order, 1)?;
    let big = Scalar::from(big_n as i64);
    let sign = if big_n % 2 == 0 {
        Scalar::one()
    } else {
        -&Scalar::one()
    };
    let body = PowerSeries::from_fn(Domain::Symbolic(Symbol::Lambda), order, |n| {
        let numerator = if n <= big_n {
            &(&sign * &Scalar::from(factorial(big_n))) * &falling_factorial(&big, n)
        } else {
            let nn = Scalar::from(n as i64);
            let mut acc = Scalar::zero();
            for l in 0..=n - big_n - 1 {
                let term = &(&Scalar::from(binomial(big_n, l)) * numbers.value(n - l))
                    * &(&falling_factorial(&nn, big_n + 1 + l)
                        / &Scalar::from(n as i64 - l as i64));
                acc = &acc + &term;
            }
            acc
        };
        &numerator / &Scalar::from(factorial(n))
    });
    let rhs = LaurentSeries::from_power(body.mul_scalar(&lam.try_invert().expect("nonzero")));

    VerifyReport::from_comparison(
        "order-m-series",
        params(&[("N", big_n.to_string()), ("lambda", "sym".to_string())]),
        &compare_series(&lhs, &rhs),
    )
}

/// Cross-checks the two triangle builders entry-for-entry, then the boundary
/// closed forms a_0(N) = (N+λ−1)_{N−1} and a_N(N) = λ^(N−1)·N!, and — in
/// symbolic mode — that every row past the first is polynomial in λ.
pub fn verify_triangle_a(lambda: &Binding, n_max: usize) -> Result<VerifyReport> {
    let rec = TriangleA::by_recurrence(lambda, n_max)?;
    let closed = TriangleA::by_closed_form(lambda, n_max)?;
    let lam = lambda_scalar(lambda)?;

    let mut checks = triangle_a_entry_checks(&rec, &closed);
    for n in 1..=n_max {
        let first = falling_factorial(&(&lam + &Scalar::from(n as i64 - 1)), n - 1);
        checks.push((format!("a_0({n})"), rec.entry(n, 0).clone(), first));
        let diag = &lam.pow(n as i64 - 1) * &Scalar::from(factorial(n));
        checks.push((format!("a_{n}({n})"), rec.entry(n, n).clone(), diag));
    }
    if lambda.is_symbolic() {
        for n in 1..=n_max {
            for j in 0..=n {
                let entry = rec.entry(n, j);
                let witness = if matches!(entry, Scalar::RatFun(_)) {
                    Scalar::zero()
                } else {
                    Scalar::one()
                };
                checks.push((format!("polynomial ({n}, {j})"), witness, Scalar::one()));
            }
        }
    }

    Ok(equality_report(
        "triangle-a",
        params(&[("lambda", lambda.label()), ("n_max", n_max.to_string())]),
        checks,
    ))
}

fn triangle_a_entry_checks(rec: &TriangleA, closed: &TriangleA) -> Vec<(String, Scalar, Scalar)> {
    let mut checks = Vec::new();
    for n in 0..=rec.n_max().min(closed.n_max()) {
        for j in 0..=n {
            checks.push((
                format!("entry ({n}, {j})"),
                rec.entry(n, j).clone(),
                closed.entry(n, j).clone(),
            ));
        }
    }
    checks
}

/// Entry-for-entry comparison of two prebuilt triangles. Exists so the
/// command-line failure-injection hook can push a corrupted triangle through
/// the real reporting path; everything else goes through `verify_triangle_a`.
#[doc(hidden)]
pub fn verify_triangle_a_pair(rec: &TriangleA, closed: &TriangleA) -> VerifyReport {
    equality_report(
        "triangle-a",
        params(&[
            ("lambda", rec.lambda().label()),
            ("n_max", rec.n_max().to_string()),
        ]),
        triangle_a_entry_checks(rec, closed),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{sample_points, Poly};
    use crate::report::{Checked, Status};

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn lam_poly(coeffs: &[Rational]) -> Scalar {
        Scalar::from_poly(Poly::new(Symbol::Lambda, coeffs.to_vec()))
    }

    #[test]
    fn gf_low_coefficients_symbolic() {
        let gf = korobov_gf(&Binding::Symbolic, &Binding::Bound(Rational::zero()), 3).unwrap();
        assert!(gf.coeff(0).unwrap().is_one());
        // [t] = (1−λ)/2, [t²] = (λ²−1)/12, [t³] = (1−λ²)/24.
        assert_eq!(gf.coeff(1).unwrap(), &lam_poly(&[rat(1, 2), rat(-1, 2)]));
        assert_eq!(
            gf.coeff(2).unwrap(),
            &lam_poly(&[rat(-1, 12), Rational::zero(), rat(1, 12)])
        );
        assert_eq!(
            gf.coeff(3).unwrap(),
            &lam_poly(&[rat(1, 24), Rational::zero(), rat(-1, 24)])
        );
    }

    #[test]
    fn gf_at_lambda_two_is_geometric() {
        // λ=2: gf = 2t/((1+t)²−1) = 1/(1 + t/2).
        let gf = korobov_gf(&Binding::bound(2, 1), &Binding::Bound(Rational::zero()), 6).unwrap();
        for k in 0..=6 {
            assert_eq!(
                gf.coeff(k).unwrap(),
                &Scalar::from(rat(-1, 2).pow(k as i32))
            );
        }
    }

    #[test]
    fn gf_rejects_degenerate_and_doubly_symbolic_input() {
        assert_eq!(
            korobov_gf(&Binding::bound(0, 1), &Binding::Bound(Rational::zero()), 4).unwrap_err(),
            Error::LambdaZero
        );
        assert_eq!(
            korobov_gf(&Binding::Symbolic, &Binding::Symbolic, 4).unwrap_err(),
            Error::BothSymbolic(Symbol::Lambda, Symbol::X)
        );
    }

    #[test]
    fn numbers_match_known_values() {
        let seq = korobov_numbers(&Binding::Symbolic, 3, 1).unwrap();
        assert!(seq.value(0).is_one());
        // K_1 = (1−λ)/2, K_2 = (λ²−1)/6, K_3 = (1−λ²)/4.
        assert_eq!(seq.value(1), &lam_poly(&[rat(1, 2), rat(-1, 2)]));
        assert_eq!(
            seq.value(2),
            &lam_poly(&[rat(-1, 6), Rational::zero(), rat(1, 6)])
        );
        assert_eq!(
            seq.value(3),
            &lam_poly(&[rat(1, 4), Rational::zero(), rat(-1, 4)])
        );
    }

    #[test]
    fn numbers_vanish_at_lambda_one() {
        // λ=1: the gf collapses to 1, so K_n(1) = 0 for n ≥ 1.
        let seq = korobov_numbers(&Binding::bound(1, 1), 5, 1).unwrap();
        for n in 1..=5 {
            assert!(seq.value(n).is_zero(), "K_{n}(1) should vanish");
        }
    }

    #[test]
    fn order_two_numbers() {
        let seq = korobov_numbers(&Binding::Symbolic, 2, 2).unwrap();
        assert!(seq.value(0).is_one());
        // K_1^{(2)} = 1 − λ.
        assert_eq!(seq.value(1), &lam_poly(&[Rational::one(), rat(-1, 1)]));
        assert_eq!(
            korobov_numbers(&Binding::Symbolic, 2, 0).unwrap_err(),
            Error::InvalidParameter("sequence order m must be at least 1".to_string())
        );
    }

    #[test]
    fn polynomials_at_lambda_one_are_falling_factorials() {
        // λ=1: gf·(1+t)^x = (1+t)^x, so K_n(1, x) = (x)_n.
        let seq = korobov_polynomials(&Binding::bound(1, 1), &Binding::Symbolic, 4).unwrap();
        let x = Scalar::variable(Symbol::X);
        for n in 0..=4 {
            assert_eq!(seq.value(n), &falling_factorial(&x, n));
        }
    }

    #[test]
    fn polynomials_pinned_rows() {
        // K_1(2, x) = x − 1/2.
        let seq = korobov_polynomials(&Binding::bound(2, 1), &Binding::Symbolic, 1).unwrap();
        assert_eq!(
            seq.value(1),
            &Scalar::from_poly(Poly::new(Symbol::X, vec![rat(-1, 2), Rational::one()]))
        );
        // K_2(3, x) = x² − 3x + 4/3.
        let seq = korobov_polynomials(&Binding::bound(3, 1), &Binding::Symbolic, 2).unwrap();
        assert_eq!(
            seq.value(2),
            &Scalar::from_poly(Poly::new(
                Symbol::X,
                vec![rat(4, 3), rat(-3, 1), Rational::one()]
            ))
        );
    }

    #[test]
    fn polynomials_reject_zero_or_two_free_parameters() {
        assert!(matches!(
            korobov_polynomials(&Binding::bound(2, 1), &Binding::bound(1, 2), 3).unwrap_err(),
            Error::InvalidParameter(_)
        ));
        assert_eq!(
            korobov_polynomials(&Binding::Symbolic, &Binding::Symbolic, 3).unwrap_err(),
            Error::BothSymbolic(Symbol::Lambda, Symbol::X)
        );
    }

    #[test]
    fn f_has_simple_pole_with_residue_one_over_lambda() {
        let f = korobov_f(&Binding::Symbolic, 8).unwrap();
        assert_eq!(f.valuation(), Some(-1));
        assert_eq!(f.known_through(), 8);
        let lead = f.coeff(-1).unwrap();
        assert_eq!(lead, Scalar::variable(Symbol::Lambda).try_invert().unwrap());
        // Constant term (1−λ)/(2λ): t¹-coefficient of the gf divided by λ.
        let expect = &lam_poly(&[rat(1, 2), rat(-1, 2)]) / &Scalar::variable(Symbol::Lambda);
        assert_eq!(f.coeff(0).unwrap(), expect);
    }

    #[test]
    fn lambda_t_f_reproduces_the_gf() {
        let order = 7;
        let f = korobov_f(&Binding::Symbolic, order).unwrap();
        let gf = korobov_gf(&Binding::Symbolic, &Binding::Bound(Rational::zero()), order).unwrap();
        let lam = Scalar::variable(Symbol::Lambda);
        let shifted = f.shift(1).mul_scalar(&lam);
        for k in 0..=order as i64 {
            assert_eq!(
                shifted.coeff(k).unwrap(),
                gf.coeff(k as usize).unwrap().clone(),
                "t^{k} mismatch"
            );
        }
    }

    #[test]
    fn triangle_first_rows() {
        let t = TriangleA::by_recurrence(&Binding::Symbolic, 3).unwrap();
        let lam = Scalar::variable(Symbol::Lambda);
        assert_eq!(t.row(0), &[lam.try_invert().unwrap()]);
        assert_eq!(t.row(1), &[Scalar::one(), Scalar::one()]);
        assert_eq!(
            t.row(2),
            &[
                lam_poly(&[Rational::one(), Rational::one()]),
                lam_poly(&[Rational::one(), rat(3, 1)]),
                lam_poly(&[Rational::zero(), rat(2, 1)]),
            ]
        );
        // a_0(3) = (2+λ)(1+λ), a_3(3) = λ²·3!.
        assert_eq!(
            t.entry(3, 0),
            &lam_poly(&[rat(2, 1), rat(3, 1), Rational::one()])
        );
        assert_eq!(
            t.entry(3, 3),
            &lam_poly(&[Rational::zero(), Rational::zero(), rat(6, 1)])
        );
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for lambda in [Binding::Symbolic, Binding::bound(3, 2)] {
            let rec = TriangleA::by_recurrence(&lambda, 6).unwrap();
            let closed = TriangleA::by_closed_form(&lambda, 6).unwrap();
            assert_eq!(rec, closed);
        }
    }

    #[test]
    fn symbolic_triangle_specializes_to_bound_triangles() {
        let sym = TriangleA::by_recurrence(&Binding::Symbolic, 5).unwrap();
        for r in sample_points(5, &[Rational::zero()]) {
            let bound = TriangleA::by_recurrence(&Binding::Bound(r.clone()), 5).unwrap();
            for n in 0..=5 {
                for j in 0..=n {
                    assert_eq!(
                        sym.entry(n, j).eval(&r).unwrap(),
                        bound.entry(n, j).eval(&r).unwrap(),
                        "a_{j}({n}) at lambda = {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn triangle_serializes_as_rows_of_scalars() {
        let t = TriangleA::by_recurrence(&Binding::Symbolic, 2).unwrap();
        let value = serde_json::to_value(&t).unwrap();
        let expect = serde_json::json!([
            [{"num": {"symbol": "lambda", "coeffs": ["1"]},
              "den": {"symbol": "lambda", "coeffs": ["0", "1"]}}],
            ["1", "1"],
            [{"symbol": "lambda", "coeffs": ["1", "1"]},
             {"symbol": "lambda", "coeffs": ["1", "3"]},
             {"symbol": "lambda", "coeffs": ["0", "2"]}]
        ]);
        assert_eq!(value, expect);
        let back: Vec<Vec<Scalar>> = serde_json::from_value(value).unwrap();
        assert_eq!(back, t.rows());
    }

    #[test]
    fn ode_holds_for_small_orders() {
        for n in 0..=3 {
            let report = verify_ode_korobov(n, &Binding::Symbolic, 14).unwrap();
            assert!(report.passed(), "symbolic N={n}: {report}");
        }
        let report = verify_ode_korobov(2, &Binding::bound(3, 2), 14).unwrap();
        assert!(report.passed(), "{report}");
        let report = verify_ode_korobov(4, &Binding::bound(-1, 3), 14).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn ode_family_reproduces_single_runs() {
        for lambda in [Binding::Symbolic, Binding::bound(3, 2)] {
            let family = verify_ode_korobov_family(&lambda, 3, 12).unwrap();
            assert_eq!(family.len(), 4);
            for (n, shared) in family.iter().enumerate() {
                let single = verify_ode_korobov(n, &lambda, 12).unwrap();
                assert_eq!(
                    serde_json::to_value(shared).unwrap(),
                    serde_json::to_value(&single).unwrap(),
                    "N={n} lambda={}",
                    lambda.label()
                );
            }
        }
    }

    #[test]
    fn ode_report_window_is_tight() {
        let report = verify_ode_korobov(1, &Binding::bound(2, 1), 10).unwrap();
        assert_eq!(
            report.checked,
            Checked::Exponents { lo: -2, hi: 9 },
            "{report}"
        );
    }

    #[test]
    fn order_m_identity_instances() {
        // Low branch: (n, N) = (1, 1) gives (1−λ) + λ = 1; (0, 2) gives 2.
        for (n, big_n) in [(1, 1), (0, 2), (2, 2), (5, 2), (3, 1), (6, 3)] {
            let report = verify_order_m_identity(n, big_n).unwrap();
            assert!(report.passed(), "(n={n}, N={big_n}): {report}");
        }
    }

    #[test]
    fn order_m_series_identity_small() {
        for big_n in 1..=2 {
            let report = verify_order_m_series(big_n, 12).unwrap();
            assert!(report.passed(), "N={big_n}: {report}");
        }
    }

    #[test]
    fn triangle_report_passes_and_localizes_corruption() {
        let report = verify_triangle_a(&Binding::Symbolic, 5).unwrap();
        assert!(report.passed(), "{report}");

        // A corrupted entry must surface as the first mismatch.
        let mut rec = TriangleA::by_recurrence(&Binding::Symbolic, 3).unwrap();
        rec.corrupt_entry(2, 1, Scalar::one());
        let closed = TriangleA::by_closed_form(&Binding::Symbolic, 3).unwrap();
        let report = verify_triangle_a_pair(&rec, &closed);
        assert!(!report.passed());
        match &report.status {
            Status::Fail { position, .. } => assert_eq!(position, "entry (2, 1)"),
            Status::Pass => unreachable!(),
        }
    }
}
