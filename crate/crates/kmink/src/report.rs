//! Pass/fail reports produced by the verification suites.
//!
//! Every suite evaluates a list of identities case by case (one case per
//! normally ordered monomial, or per monomial pair) and records one result
//! line per case. Residuals are kept as canonical text so a report can be
//! serialized and inspected without the symbolic types; `"0"` means the case
//! passed.

use serde::Serialize;
use std::fmt;

/// One (identity, input) evaluation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    /// Human-readable name of the identity, e.g. `[N1, P1] - rhs`.
    pub relation: String,
    /// The input the identity was evaluated on, in canonical text.
    pub monomial: String,
    /// The residual in canonical text; `"0"` iff the case passed.
    pub residual: String,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.residual == "0"
    }
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{} @ {}: PASS", self.relation, self.monomial)
        } else {
            write!(
                f,
                "{} @ {}: residual = {}",
                self.relation, self.monomial, self.residual
            )
        }
    }
}

/// A full suite report: one entry per case, in evaluation order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record one case; the residual must already be canonical text.
    pub fn record(
        &mut self,
        relation: impl Into<String>,
        monomial: impl ToString,
        residual: impl ToString,
    ) {
        self.cases.push(CaseResult {
            relation: relation.into(),
            monomial: monomial.to_string(),
            residual: residual.to_string(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    /// `(passed, total)` counts.
    pub fn tally(&self) -> (usize, usize) {
        let total = self.cases.len();
        let passed = total - self.failures().count();
        (passed, total)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for case in &self.cases {
            writeln!(f, "{case}")?;
        }
        let (passed, total) = self.tally();
        if passed == total {
            write!(f, "all {total} cases passed")
        } else {
            write!(f, "{} of {total} cases FAILED", total - passed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cases_render_pass_or_residual() {
        let mut r = Report::new();
        r.record("[P1, P2]", ":x0:", "0");
        r.record("[N1, P1] - rhs", ":x0:", "2*i");
        assert!(!r.passed());
        assert_eq!(r.tally(), (1, 2));
        assert_eq!(
            r.to_string(),
            "[P1, P2] @ :x0:: PASS\n\
             [N1, P1] - rhs @ :x0:: residual = 2*i\n\
             1 of 2 cases FAILED"
        );
    }

    #[test]
    fn reports_serialize_to_the_line_mirror() {
        let mut r = Report::new();
        r.record("d tau = 0", "1", "0");
        assert!(r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json["cases"][0],
            serde_json::json!({"relation": "d tau = 0", "monomial": "1", "residual": "0"})
        );
    }
}
