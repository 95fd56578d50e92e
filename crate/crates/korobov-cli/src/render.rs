//! Output back ends: LaTeX normalization for exact scalars and the flat
//! CSV / JSON renderings shared by the table and verify commands.
//!
//! LaTeX polynomials are printed descending-degree and integer-cleared —
//! a common denominator D is pulled out as \frac{1}{D}(...) — which is the
//! display style of the source tables this tool reproduces.

use korobov::report::Status;
use korobov::{Poly, Rational, Scalar, VerifyReport};

pub fn latex_rational(r: &Rational) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let mag = r.abs();
    if mag.is_integer() {
        format!("{sign}{}", mag.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
    }
}

/// Descending-degree rendering with no clearing: `2\lambda^{2}-\frac{1}{2}`.
fn latex_poly_terms(p: &Poly) -> String {
    let Some(degree) = p.degree() else {
        return "0".to_string();
    };
    let mut out = String::new();
    for k in (0..=degree).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push(if c.is_negative() { '-' } else { '+' });
        } else if c.is_negative() {
            out.push('-');
        }
        let mag = c.abs();
        if k == 0 {
            out.push_str(&latex_rational(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&latex_rational(&mag));
            }
            out.push_str(p.symbol().latex());
            if k > 1 {
                out.push_str(&format!("^{{{k}}}"));
            }
        }
    }
    out
}

/// Integer-cleared polynomial: plain if the coefficients are already
/// integers, otherwise \frac{1}{D}\left(...\right) with D the denominator lcm.
fn latex_poly(p: &Poly) -> String {
    let d = p.denominator_lcm();
    if d.is_one() {
        latex_poly_terms(p)
    } else {
        format!(
            "\\frac{{1}}{{{}}}\\left({}\\right)",
            d.numer(),
            latex_poly_terms(&p.scale(&d))
        )
    }
}

pub fn latex_scalar(s: &Scalar) -> String {
    match s {
        Scalar::Rational(r) => latex_rational(r),
        Scalar::Poly(p) => latex_poly(p),
        Scalar::RatFun(f) => format!(
            "\\frac{{{}}}{{{}}}",
            latex_poly(f.num()),
            latex_poly(f.den())
        ),
    }
}

/// Minimal CSV quoting: only fields containing a comma or quote get wrapped.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| csv_field(f))
        .collect::<Vec<_>>()
        .join(",")
}

/// One CSV line per report: id, k=v params joined by ';', status, and the
/// mismatch columns (empty on a pass).
pub fn reports_csv(reports: &[VerifyReport]) -> String {
    let mut lines = Vec::with_capacity(reports.len());
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let (status, position, lhs, rhs) = match &r.status {
            Status::Pass => ("pass", String::new(), String::new(), String::new()),
            Status::Fail { position, lhs, rhs } => {
                ("fail", position.clone(), lhs.clone(), rhs.clone())
            }
        };
        lines.push(csv_row(&[
            r.id.clone(),
            params,
            status.to_string(),
            position,
            lhs,
            rhs,
        ]));
    }
    lines.join("\n")
}
