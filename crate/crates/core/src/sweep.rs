//! One row of bounds per family member, for CSV reporting.

use std::fmt::Write as _;

use serde::Serialize;

use crate::bounds::{bound_report, BoundError, BoundReport};
use crate::solver::SolveOptions;
use crate::spire::{SpireSpec, Variant};

/// Column order of [`SweepRow::csv_line`]. New columns go at the end.
pub const CSV_HEADER: &str =
    "family,n,s,formula,lb_generic,lb_closed,ub_constructive,exact,consistent";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub family: Variant,
    pub n: usize,
    pub s: usize,
    pub formula: u64,
    pub lb_generic: u64,
    pub lb_closed: u64,
    pub ub_constructive: u64,
    pub exact: Option<u64>,
    pub consistent: bool,
}

impl From<&BoundReport> for SweepRow {
    fn from(r: &BoundReport) -> Self {
        let consistent = r.lb_closed == r.formula
            && r.formula == r.ub_constructive
            && r.exact.is_none_or(|e| e == r.formula);
        SweepRow {
            family: r.spec.variant,
            n: r.spec.n,
            s: r.spec.s,
            formula: r.formula,
            lb_generic: r.lb_generic,
            lb_closed: r.lb_closed,
            ub_constructive: r.ub_constructive,
            exact: r.exact,
            consistent: consistent && r.consistent,
        }
    }
}

impl SweepRow {
    pub fn csv_line(&self) -> String {
        let mut line = String::new();
        let _ = write!(
            line,
            "{},{},{},{},{},{},{},",
            self.family,
            self.n,
            self.s,
            self.formula,
            self.lb_generic,
            self.lb_closed,
            self.ub_constructive
        );
        if let Some(e) = self.exact {
            let _ = write!(line, "{e}");
        }
        let _ = write!(line, ",{}", self.consistent);
        line
    }
}

/// Rows for every normalized member with `n_min <= n <= n_max`, ordered by
/// `(n, family, s)`.
pub fn sweep(
    n_min: usize,
    n_max: usize,
    exact: Option<&SolveOptions>,
) -> Result<Vec<SweepRow>, BoundError> {
    let mut rows = Vec::new();
    for n in n_min.max(4)..=n_max {
        for spec in SpireSpec::normalized_of_order(n) {
            rows.push(SweepRow::from(&bound_report(&spec, exact)?));
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.csv_line());
        out.push('\n');
    }
    out
}
