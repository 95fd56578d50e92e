use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::Comparison;

/// What a verification instance examined: a window of series exponents, or a
/// finite set of discrete checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Checked {
    Exponents { lo: i64, hi: i64 },
    Indices { count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail {
        /// First mismatching position (an exponent `t^e`, a triangle entry
        /// `(N, j)`, …) with both exact values.
        position: String,
        lhs: String,
        rhs: String,
    },
}

/// Machine-readable pass/fail evidence for one identity instance.
///
/// Params use a BTreeMap and the fields serialize in declaration order, so a
/// report always renders byte-identically for the same inputs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub checked: Checked,
    pub status: Status,
}

/// Minimum number of coefficients a series comparison must examine before a
/// pass is meaningful.
pub const MIN_WINDOW: usize = 5;

impl VerifyReport {
    /// Wraps a series comparison. A pass on a window narrower than
    /// [`MIN_WINDOW`] is refused — the caller must raise the truncation
    /// order instead of accepting weak evidence.
    pub fn from_comparison(
        id: &str,
        params: BTreeMap<String, String>,
        cmp: &Comparison,
    ) -> Result<VerifyReport> {
        let status = match &cmp.mismatch {
            None => {
                if cmp.width() < MIN_WINDOW {
                    return Err(Error::WindowTooSmall {
                        got: cmp.width(),
                        need: MIN_WINDOW,
                    });
                }
                Status::Pass
            }
            Some((e, lhs, rhs)) => Status::Fail {
                position: format!("t^{e}"),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        };
        Ok(VerifyReport {
            id: id.to_string(),
            params,
            checked: Checked::Exponents {
                lo: cmp.lo,
                hi: cmp.hi,
            },
            status,
        })
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.id)?;
        for (k, (key, value)) in self.params.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{key}={value}")?;
        }
        f.write_str("] ")?;
        match &self.checked {
            Checked::Exponents { lo, hi } => write!(f, "window t^{lo}..t^{hi}")?,
            Checked::Indices { count } => write!(f, "{count} checks")?,
        }
        match &self.status {
            Status::Pass => f.write_str(": pass"),
            Status::Fail { position, lhs, rhs } => {
                write!(f, ": FAIL at {position}: {lhs} != {rhs}")
            }
        }
    }
}

/// Convenience for building the params map in one expression.
pub fn params(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// Report for a batch of discrete exact-equality checks; the first failing
/// pair (in the given order) is reported with both values.
pub(crate) fn equality_report(
    id: &str,
    params: BTreeMap<String, String>,
    checks: Vec<(String, crate::algebra::Scalar, crate::algebra::Scalar)>,
) -> VerifyReport {
    let count = checks.len();
    let status = checks
        .into_iter()
        .find(|(_, lhs, rhs)| lhs != rhs)
        .map(|(position, lhs, rhs)| Status::Fail {
            position,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
        .unwrap_or(Status::Pass);
    VerifyReport {
        id: id.to_string(),
        params,
        checked: Checked::Indices { count },
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Scalar;

    #[test]
    fn refuses_narrow_pass_windows() {
        let cmp = Comparison {
            lo: 0,
            hi: 2,
            mismatch: None,
        };
        assert_eq!(
            VerifyReport::from_comparison("x", params(&[]), &cmp),
            Err(Error::WindowTooSmall { got: 3, need: 5 })
        );
    }

    #[test]
    fn failure_beats_window_size() {
        // A mismatch is reported even when found on a narrow window.
        let cmp = Comparison {
            lo: 0,
            hi: 1,
            mismatch: Some((1, Scalar::one(), Scalar::zero())),
        };
        let report =
            VerifyReport::from_comparison("x", params(&[("N", "1".into())]), &cmp).unwrap();
        assert!(!report.passed());
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"id":"x","params":{"N":"1"},"checked":{"kind":"exponents","lo":0,"hi":1},"status":{"result":"fail","position":"t^1","lhs":"1","rhs":"0"}}"#
        );
    }

    #[test]
    fn pass_report_serialization_is_stable() {
        let cmp = Comparison {
            lo: -3,
            hi: 4,
            mismatch: None,
        };
        let report =
            VerifyReport::from_comparison("ode", params(&[("lambda", "sym".into())]), &cmp)
                .unwrap();
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&report).unwrap();
        assert_eq!(a, b);
        let back: VerifyReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back, report);
    }
}
