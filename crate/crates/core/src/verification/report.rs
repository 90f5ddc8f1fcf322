use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_form::SeriesSpec;

/// Identity classes checked by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    TheoremVsOracle,
    CatalogVsTheorem,
    CatalogPrintedVsTheorem,
    IntroFormula,
    PartitionOfUnity,
    Periodicity,
    SignShift,
    CrossTheorem,
    Reality,
    JacobiAnger,
    Reflection,
}

impl CheckKind {
    pub const STRUCTURAL: [CheckKind; 7] = [
        CheckKind::PartitionOfUnity,
        CheckKind::Periodicity,
        CheckKind::SignShift,
        CheckKind::CrossTheorem,
        CheckKind::Reality,
        CheckKind::JacobiAnger,
        CheckKind::Reflection,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::TheoremVsOracle => "theorem_vs_oracle",
            CheckKind::CatalogVsTheorem => "catalog_vs_theorem",
            CheckKind::CatalogPrintedVsTheorem => "catalog_printed_vs_theorem",
            CheckKind::IntroFormula => "intro_formula",
            CheckKind::PartitionOfUnity => "partition_of_unity",
            CheckKind::Periodicity => "periodicity",
            CheckKind::SignShift => "sign_shift",
            CheckKind::CrossTheorem => "cross_theorem",
            CheckKind::Reality => "reality",
            CheckKind::JacobiAnger => "jacobi_anger",
            CheckKind::Reflection => "reflection",
        }
    }
}

/// One comparison `|lhs - rhs| <= tol` at one point.
///
/// Value fields are `None` when evaluation failed; `note` then carries the error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: CheckKind,
    #[serde(rename = "N")]
    pub modulus: Option<u32>,
    pub p: Option<i64>,
    pub alternating: Option<bool>,
    pub x_re: f64,
    pub x_im: f64,
    pub lhs_re: Option<f64>,
    pub lhs_im: Option<f64>,
    pub rhs_re: Option<f64>,
    pub rhs_im: Option<f64>,
    pub abs_diff: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    pub fn compare(
        check: CheckKind,
        spec: Option<&SeriesSpec>,
        x: Complex64,
        lhs: Complex64,
        rhs: Complex64,
        tol: f64,
    ) -> Self {
        let diff = (lhs - rhs).norm();
        let mut rec = Self::blank(check, spec, x, tol);
        rec.lhs_re = Some(lhs.re);
        rec.lhs_im = Some(lhs.im);
        rec.rhs_re = Some(rhs.re);
        rec.rhs_im = Some(rhs.im);
        rec.abs_diff = Some(diff);
        // NaN diffs fail
        rec.pass = diff <= tol;
        rec
    }

    pub fn failed(
        check: CheckKind,
        spec: Option<&SeriesSpec>,
        x: Complex64,
        tol: f64,
        error: impl std::fmt::Display,
    ) -> Self {
        let mut rec = Self::blank(check, spec, x, tol);
        rec.note = Some(error.to_string());
        rec
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    fn blank(check: CheckKind, spec: Option<&SeriesSpec>, x: Complex64, tol: f64) -> Self {
        Self {
            check,
            modulus: spec.map(|s| s.modulus()),
            p: spec.map(|s| s.offset()),
            alternating: spec.map(|s| s.is_alternating()),
            x_re: x.re,
            x_im: x.im,
            lhs_re: None,
            lhs_im: None,
            rhs_re: None,
            rhs_im: None,
            abs_diff: None,
            tol,
            pass: false,
            note: None,
        }
    }
}

/// Catalog row whose printed formula disagrees with the general closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlaggedRow {
    #[serde(rename = "N")]
    pub modulus: u32,
    pub p: i64,
    pub alternating: bool,
    pub printed: String,
    pub reading: String,
    pub explanation: String,
    pub records: Vec<CheckRecord>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub total: usize,
    pub failed: usize,
    pub max_diff: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub flagged_rows: usize,
    pub classes: BTreeMap<String, ClassSummary>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub summary: Summary,
    pub records: Vec<CheckRecord>,
    pub flagged: Vec<FlaggedRow>,
}

impl VerificationReport {
    /// Builds the report and its summary. Classes in `always` get a summary
    /// entry even with no records.
    pub fn new(records: Vec<CheckRecord>, flagged: Vec<FlaggedRow>, always: &[CheckKind]) -> Self {
        let mut classes: BTreeMap<String, ClassSummary> = always
            .iter()
            .map(|k| (k.as_str().to_string(), ClassSummary::default()))
            .collect();
        for r in &records {
            let c = classes.entry(r.check.as_str().to_string()).or_default();
            c.total += 1;
            if !r.pass {
                c.failed += 1;
            }
            if let Some(d) = r.abs_diff.filter(|d| d.is_finite()) {
                c.max_diff = c.max_diff.max(d);
            }
        }
        let total = records.len();
        let passed = records.iter().filter(|r| r.pass).count();
        let summary = Summary {
            total,
            passed,
            failed: total - passed,
            flagged_rows: flagged.len(),
            classes,
        };
        Self {
            summary,
            records,
            flagged,
        }
    }

    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut records = Vec::new();
        let mut flagged = Vec::new();
        let mut always = Vec::new();
        for r in reports {
            for (name, c) in &r.summary.classes {
                if c.total == 0 {
                    always.push(name.clone());
                }
            }
            records.extend(r.records);
            flagged.extend(r.flagged);
        }
        let mut merged = Self::new(records, flagged, &[]);
        for name in always {
            merged.summary.classes.entry(name).or_default();
        }
        merged
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn summary_line(&self) -> String {
        let s = &self.summary;
        if s.failed == 0 {
            format!("PASS: {}/{} checks", s.passed, s.total)
        } else {
            format!("FAIL: {}/{} checks failed", s.failed, s.total)
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "check,N,p,alternating,x_re,x_im,lhs_re,lhs_im,rhs_re,rhs_im,abs_diff,tol,pass\n",
        );
        for r in &self.records {
            out.push_str(&csv_row(r));
        }
        out
    }

    /// Per-class summary, failing records and the flagged section.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<28} {:>7} {:>7} {:>12}",
            "check", "total", "failed", "max_diff"
        );
        for (name, c) in &self.summary.classes {
            let _ = writeln!(
                out,
                "{:<28} {:>7} {:>7} {:>12.3e}",
                name, c.total, c.failed, c.max_diff
            );
        }
        if self.summary.failed > 0 {
            let _ = writeln!(out, "\nfailures:");
            let _ = writeln!(out, "{}", record_header());
            for r in self.failures() {
                let _ = writeln!(out, "{}", record_line(r));
            }
        }
        if !self.flagged.is_empty() {
            let _ = writeln!(out, "\nflagged catalog rows (excluded from pass/fail):");
            for f in &self.flagged {
                let family = if f.alternating {
                    "alternating"
                } else {
                    "plain"
                };
                let _ = writeln!(out, "  N={} p={} {family}", f.modulus, f.p);
                let _ = writeln!(out, "    printed: {}", f.printed);
                let _ = writeln!(out, "    reading: {}", f.reading);
                let _ = writeln!(out, "    note:    {}", f.explanation);
                let worst = f
                    .records
                    .iter()
                    .filter_map(|r| r.abs_diff)
                    .fold(0.0_f64, f64::max);
                let _ = writeln!(
                    out,
                    "    printed form max |diff| vs closed form: {worst:.3e}"
                );
            }
        }
        let _ = writeln!(out, "\n{}", self.summary_line());
        out
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:e}")).unwrap_or_default()
}

fn csv_row(r: &CheckRecord) -> String {
    format!(
        "{},{},{},{},{:e},{:e},{},{},{},{},{},{:e},{}\n",
        r.check.as_str(),
        r.modulus.map(|v| v.to_string()).unwrap_or_default(),
        r.p.map(|v| v.to_string()).unwrap_or_default(),
        r.alternating.map(|v| v.to_string()).unwrap_or_default(),
        r.x_re,
        r.x_im,
        opt(r.lhs_re),
        opt(r.lhs_im),
        opt(r.rhs_re),
        opt(r.rhs_im),
        opt(r.abs_diff),
        r.tol,
        r.pass
    )
}

fn record_header() -> String {
    format!(
        "  {:<26} {:>3} {:>4} {:>5} {:>22} {:>11} {:>9}  note",
        "check", "N", "p", "alt", "x", "abs_diff", "tol"
    )
}

fn record_line(r: &CheckRecord) -> String {
    let show = |v: Option<String>| v.unwrap_or_else(|| "-".into());
    format!(
        "  {:<26} {:>3} {:>4} {:>5} {:>22} {:>11} {:>9.1e}  {}",
        r.check.as_str(),
        show(r.modulus.map(|v| v.to_string())),
        show(r.p.map(|v| v.to_string())),
        show(r.alternating.map(|v| v.to_string())),
        format!("{}{:+}i", r.x_re, r.x_im),
        show(r.abs_diff.map(|d| format!("{d:.3e}"))),
        r.tol,
        r.note.as_deref().unwrap_or("")
    )
}
