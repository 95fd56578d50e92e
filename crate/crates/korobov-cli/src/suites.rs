//! The `verify` subcommand: expands a suite name and parameter ranges into
//! identity instances, runs them, and renders the report stream.
//!
//! Reports are sorted by identity id and then by parameter map before
//! rendering, so output is byte-identical across runs regardless of
//! execution order.

use korobov::algebra::sample_points;
use korobov::frobenius::{
    verify_limit_consistency, verify_ode_frobenius_family, verify_triangle_b,
    verify_triangle_b_pair, TriangleB, TriangleBMode,
};
use korobov::korobov::{
    verify_ode_korobov_family, verify_order_m_identity, verify_order_m_series, verify_triangle_a,
    verify_triangle_a_pair, TriangleA,
};
use korobov::loginv::{verify_lambda_limit, verify_loginv};
use korobov::{Binding, Scalar, VerifyReport};

use crate::render::reports_csv;
use crate::{Format, Suite, VerifyArgs};

pub fn run(args: &VerifyArgs) -> Result<(String, bool), String> {
    crate::require_symbolic_mu(&args.mu)?;
    if args.inject_failure && !matches!(args.suite, Suite::TriangleA | Suite::TriangleB) {
        return Err("--inject-failure applies only to the triangle suites".to_string());
    }

    let mut reports = Vec::new();
    collect(args.suite, args, &mut reports)?;
    reports.sort_by(|a, b| (&a.id, &a.params).cmp(&(&b.id, &b.params)));

    let all_passed = reports.iter().all(|r| r.passed());
    let document = match args.format {
        Format::Json => serde_json::to_string(&reports).expect("reports serialize infallibly"),
        Format::Csv => reports_csv(&reports),
        Format::Latex => {
            return Err("verify reports have no latex rendering; use json or csv".to_string())
        }
    };
    Ok((document, all_passed))
}

fn collect(suite: Suite, args: &VerifyArgs, reports: &mut Vec<VerifyReport>) -> Result<(), String> {
    let fail = |e: korobov::Error| e.to_string();
    match suite {
        Suite::OdeKorobov => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            reports
                .extend(verify_ode_korobov_family(&lambda, args.nmax, args.order).map_err(fail)?);
        }
        Suite::OrderM => {
            // n runs to twice the triangle depth so both branches of the sum
            // rule (n ≤ N and n > N) get exercised.
            for big_n in 1..=args.nmax {
                reports.push(verify_order_m_series(big_n, args.order).map_err(fail)?);
                for n in 0..=2 * args.nmax {
                    reports.push(verify_order_m_identity(n, big_n).map_err(fail)?);
                }
            }
        }
        Suite::TriangleA => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            if args.inject_failure {
                let mut rec = TriangleA::by_recurrence(&lambda, args.nmax).map_err(fail)?;
                rec.corrupt_entry(args.nmax, 1.min(args.nmax), Scalar::from(41));
                let closed = TriangleA::by_closed_form(&lambda, args.nmax).map_err(fail)?;
                reports.push(verify_triangle_a_pair(&rec, &closed));
            } else {
                reports.push(verify_triangle_a(&lambda, args.nmax).map_err(fail)?);
            }
        }
        Suite::LambdaLimit => {
            match crate::binding_or_symbolic(&args.lambda)? {
                Binding::Symbolic => {}
                Binding::Bound(_) => {
                    return Err("lambda-limit extracts trailing λ-terms and only runs with \
                         --lambda sym"
                        .to_string())
                }
            }
            let triangle = TriangleA::by_recurrence(&Binding::Symbolic, args.nmax).map_err(fail)?;
            for n in 1..=args.nmax {
                reports.push(verify_lambda_limit(&triangle, n).map_err(fail)?);
            }
        }
        Suite::Loginv => {
            for n in 1..=args.nmax {
                reports.push(verify_loginv(n, args.order).map_err(fail)?);
            }
        }
        Suite::OdeFrobenius => {
            for mode in frobenius_modes(&args.lambda)? {
                reports.extend(
                    verify_ode_frobenius_family(&mode, args.nmax, args.order).map_err(fail)?,
                );
            }
        }
        Suite::TriangleB => {
            for mode in frobenius_modes(&args.lambda)? {
                if args.inject_failure {
                    let mut rec = TriangleB::by_recurrence(&mode, args.nmax).map_err(fail)?;
                    rec.corrupt_entry(args.nmax, 1.min(args.nmax), Scalar::from(41));
                    let closed = TriangleB::by_closed_form(&mode, args.nmax).map_err(fail)?;
                    reports.push(verify_triangle_b_pair(&rec, &closed));
                } else {
                    reports.push(verify_triangle_b(&mode, args.nmax).map_err(fail)?);
                }
            }
        }
        Suite::LimitConsistency => {
            reports.push(verify_limit_consistency(args.nmax).map_err(fail)?);
        }
        Suite::All => {
            for suite in [
                Suite::OdeKorobov,
                Suite::OrderM,
                Suite::TriangleA,
                Suite::LambdaLimit,
                Suite::Loginv,
                Suite::OdeFrobenius,
                Suite::TriangleB,
                Suite::LimitConsistency,
            ] {
                collect(suite, args, reports)?;
            }
        }
    }
    Ok(())
}

/// Mode spread for the frobenius suites: an explicit --lambda names one mode
/// (0 is the limit triangle); omitting it runs the deterministic λ-sample
/// spread plus the limit mode.
fn frobenius_modes(lambda: &Option<String>) -> Result<Vec<TriangleBMode>, String> {
    match lambda {
        Some(text) => match crate::parse_binding(text)? {
            Binding::Symbolic => Err(
                "frobenius identities keep μ symbolic; λ must be a bound rational \
                 (0 selects the limit mode)"
                    .to_string(),
            ),
            Binding::Bound(r) => Ok(vec![TriangleBMode::from_lambda(r)]),
        },
        None => {
            let mut modes: Vec<TriangleBMode> = sample_points(5, &[])
                .into_iter()
                .map(|r| TriangleBMode::Degenerate { lambda: r })
                .collect();
            modes.push(TriangleBMode::Limit);
            Ok(modes)
        }
    }
}
