//! The `table` subcommand: one renderer per number family.
//!
//! JSON output is the family object's own serialization (arrays of exact
//! scalars), CSV is `n,value` lines for sequences and ragged rows for
//! triangles, and LaTeX renders each value in cleared normal form. For the
//! polynomial family, LaTeX divides row n by n! so the printed entries are
//! the generating-function coefficients — the form the classical table
//! displays — while JSON and CSV carry the n!-normalized values themselves.

use korobov::algebra::factorial;
use korobov::frobenius::{frobenius_euler_numbers, TriangleB};
use korobov::korobov::{korobov_numbers, korobov_polynomials, TriangleA};
use korobov::loginv::HarmonicTable;
use korobov::{Rational, Scalar};
use serde::Serialize;

use crate::render::{csv_row, latex_rational, latex_scalar};
use crate::{Family, Format, TableArgs};

pub fn run(args: &TableArgs) -> Result<String, String> {
    crate::require_symbolic_mu(&args.mu)?;
    match args.family {
        Family::Korobov => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            let seq = korobov_numbers(&lambda, args.nmax, 1).map_err(|e| e.to_string())?;
            Ok(sequence(&seq, seq.values(), args.format, false))
        }
        Family::KorobovOrderM => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            let m = args.m.unwrap_or(2);
            let seq = korobov_numbers(&lambda, args.nmax, m).map_err(|e| e.to_string())?;
            Ok(sequence(&seq, seq.values(), args.format, false))
        }
        Family::KorobovPoly => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            let x = match &args.x {
                Some(text) => crate::parse_binding(text)?,
                None => korobov::Binding::Bound(Rational::zero()),
            };
            let seq = korobov_polynomials(&lambda, &x, args.nmax).map_err(|e| e.to_string())?;
            Ok(sequence(&seq, seq.values(), args.format, true))
        }
        Family::FrobeniusEuler => {
            let seq = frobenius_euler_numbers(args.nmax);
            Ok(sequence(&seq, seq.values(), args.format, false))
        }
        Family::TriangleA => {
            let lambda = crate::binding_or_symbolic(&args.lambda)?;
            let triangle =
                TriangleA::by_recurrence(&lambda, args.nmax).map_err(|e| e.to_string())?;
            Ok(rows(&triangle, triangle.rows(), args.format))
        }
        Family::TriangleB => {
            let mode = crate::triangle_b_mode(&args.lambda)?;
            let triangle = TriangleB::by_recurrence(&mode, args.nmax).map_err(|e| e.to_string())?;
            Ok(rows(&triangle, triangle.rows(), args.format))
        }
        Family::Harmonic => Ok(harmonic(&HarmonicTable::new(args.nmax), args.format)),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("table values serialize infallibly")
}

fn sequence<T: Serialize>(
    object: &T,
    values: &[Scalar],
    format: Format,
    gf_normalized_latex: bool,
) -> String {
    match format {
        Format::Json => to_json(object),
        Format::Csv => values
            .iter()
            .enumerate()
            .map(|(n, v)| csv_row(&[n.to_string(), v.to_string()]))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => values
            .iter()
            .enumerate()
            .map(|(n, v)| {
                let shown = if gf_normalized_latex {
                    v * &Scalar::from(factorial(n).recip())
                } else {
                    v.clone()
                };
                format!("{} \\\\", latex_scalar(&shown))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn rows<T: Serialize>(object: &T, rows: &[Vec<Scalar>], format: Format) -> String {
    match format {
        Format::Json => to_json(object),
        Format::Csv => rows
            .iter()
            .map(|row| csv_row(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => rows
            .iter()
            .map(|row| {
                let cells = row.iter().map(latex_scalar).collect::<Vec<_>>();
                format!("{} \\\\", cells.join(" & "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn harmonic(table: &HarmonicTable, format: Format) -> String {
    match format {
        Format::Json => to_json(table),
        Format::Csv => table
            .rows()
            .iter()
            .map(|row| csv_row(&row.iter().map(|v| v.to_string()).collect::<Vec<_>>()))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Latex => table
            .rows()
            .iter()
            .map(|row| {
                let cells = row.iter().map(latex_rational).collect::<Vec<_>>();
                format!("{} \\\\", cells.join(" & "))
            })
            .collect::<Vec<_>>()
            .join("\n"),
    }
}
