use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Borderline,
    Informational,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Borderline => "BORDERLINE",
            Status::Informational => "INFO",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub check: String,
    pub status: Status,
    pub measured: Option<f64>,
    pub expected: Option<f64>,
    pub provenance: Option<String>,
    pub tolerance: Option<f64>,
    pub note: Option<String>,
}

impl ReportRecord {
    /// Quantitative check: passes iff `|measured − expected| ≤ tol`.
    pub fn compare(
        check: impl Into<String>,
        measured: f64,
        expected: f64,
        tol: f64,
        provenance: &str,
    ) -> Self {
        let pass = (measured - expected).abs() <= tol;
        ReportRecord {
            check: check.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            measured: Some(measured),
            expected: Some(expected),
            provenance: Some(provenance.to_string()),
            tolerance: Some(tol),
            note: None,
        }
    }

    /// A defect that must stay below `tol`.
    pub fn bound(check: impl Into<String>, defect: f64, tol: f64, provenance: &str) -> Self {
        Self::compare(check, defect, 0.0, tol, provenance)
    }

    /// A yes/no outcome against its expected answer (encoded as 1/0, zero tolerance).
    pub fn verdict(
        check: impl Into<String>,
        measured: bool,
        expected: bool,
        provenance: &str,
    ) -> Self {
        Self::compare(
            check,
            f64::from(u8::from(measured)),
            f64::from(u8::from(expected)),
            0.0,
            provenance,
        )
    }

    pub fn info(check: impl Into<String>, measured: Option<f64>, note: impl Into<String>) -> Self {
        ReportRecord {
            check: check.into(),
            status: Status::Informational,
            measured,
            expected: None,
            provenance: None,
            tolerance: None,
            note: Some(note.into()),
        }
    }

    pub fn failed(check: impl Into<String>, note: impl Into<String>) -> Self {
        ReportRecord {
            status: Status::Fail,
            ..Self::info(check, None, note)
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn line(&self) -> String {
        let mut s = format!("{:<10} {}", self.status.tag(), self.check);
        if let Some(m) = self.measured {
            let _ = write!(s, " | measured {m:.16e}");
        }
        if let Some(e) = self.expected {
            let _ = write!(s, " | expected {e:.16e}");
        }
        if let Some(t) = self.tolerance {
            let _ = write!(s, " | tol {t:.3e}");
        }
        if let Some(p) = &self.provenance {
            let _ = write!(s, " | {p}");
        }
        if let Some(n) = &self.note {
            let _ = write!(s, " | {n}");
        }
        s
    }
}

#[derive(Debug, Default, Clone)]
pub struct Report {
    pub records: Vec<ReportRecord>,
}

impl Report {
    pub fn push(&mut self, r: ReportRecord) {
        self.records.push(r);
    }

    /// Records that are neither passing nor informational.
    pub fn failures(&self) -> usize {
        self.records
            .iter()
            .filter(|r| matches!(r.status, Status::Fail | Status::Borderline))
            .count()
    }

    pub fn text(&self) -> String {
        let mut s: String = self.records.iter().map(|r| r.line() + "\n").collect();
        let _ = writeln!(
            s,
            "{} checks, {} not passing",
            self.records.len(),
            self.failures()
        );
        s
    }

    pub fn jsonl(&self) -> String {
        self.records
            .iter()
            .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
            .collect()
    }

    pub fn write(&self, dir: &Path) -> Result<(), CliError> {
        write_file(&dir.join("report.txt"), &self.text())?;
        write_file(&dir.join("report.jsonl"), &self.jsonl())
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

/// Comma-separated table with a header and `{:.16e}` numbers.
pub fn csv<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> String {
    let mut s = header.join(",") + "\n";
    for row in rows {
        s += &row.join(",");
        s.push('\n');
    }
    s
}

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}
