//! Verification report: one row per identity, self-documenting through the
//! algebraic anchor string, plus free-form findings (e.g. which closed-form
//! spectrum variant the eigensolver supports).

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub identity: String,
    /// The relation being checked, written out algebraically.
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub label: String,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Report {
    pub rows: Vec<ReportRow>,
    pub findings: Vec<Finding>,
}

impl Report {
    pub fn push(&mut self, identity: impl Into<String>, anchor: impl Into<String>, residual: f64, tol: f64) {
        self.rows.push(ReportRow {
            identity: identity.into(),
            anchor: anchor.into(),
            residual,
            tol,
            pass: residual <= tol && residual.is_finite(),
        });
    }

    pub fn finding(&mut self, label: impl Into<String>, detail: impl Into<String>) {
        self.findings.push(Finding {
            label: label.into(),
            detail: detail.into(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.rows.extend(other.rows);
        self.findings.extend(other.findings);
    }

    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failed(&self) -> Vec<&ReportRow> {
        self.rows.iter().filter(|r| !r.pass).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_and_json() {
        let mut rep = Report::default();
        rep.push("a", "x = x", 1e-12, 1e-8);
        rep.push("b", "y = y", 1.0, 1e-8);
        assert!(!rep.pass());
        assert_eq!(rep.failed().len(), 1);
        let js = rep.to_json();
        assert!(js.contains("\"identity\": \"a\""));
        assert!(js.contains("\"pass\": false"));
        // deterministic serialization
        assert_eq!(js, rep.to_json());
    }
}
