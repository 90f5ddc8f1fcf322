use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::GridError;
use crate::closed_form::{catalog, closed_sum};
use crate::oracle::{oracle_sum, TruncationPolicy};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableCell {
    pub x: f64,
    pub catalog: f64,
    pub theorem: f64,
    pub oracle: Option<f64>,
    /// Printed-form value, only for flagged rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed: Option<f64>,
    /// Largest pairwise gap among catalog, theorem and oracle.
    pub max_diff: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    #[serde(rename = "N")]
    pub modulus: u32,
    pub p: i64,
    pub alternating: bool,
    pub formula: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub printed_formula: Option<String>,
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub samples: Vec<f64>,
    pub rows: Vec<TableRow>,
}

/// Numeric reproduction of both catalog tables at each sample `x`.
pub fn reproduce_tables(samples: &[f64]) -> Result<TableDocument, GridError> {
    if samples.is_empty() {
        return Err(GridError::NoSamples);
    }
    let policy = TruncationPolicy::default();
    let rows = catalog()
        .iter()
        .map(|entry| {
            let cells = samples
                .iter()
                .map(|&x| {
                    let z = Complex64::new(x, 0.0);
                    let cat = entry.eval(z);
                    let thm = closed_sum(&entry.spec, z);
                    let (oracle, error) = match oracle_sum(&entry.spec, z, &policy) {
                        Ok(o) => (Some(o.value), None),
                        Err(e) => (None, Some(e.to_string())),
                    };
                    let mut max_diff = (cat - thm).norm();
                    if let Some(o) = oracle {
                        max_diff = max_diff.max((o - thm).norm()).max((o - cat).norm());
                    }
                    TableCell {
                        x,
                        catalog: cat.re,
                        theorem: thm.re,
                        oracle: oracle.map(|o| o.re),
                        printed: entry.typo.map(|t| (t.printed_eval)(z).re),
                        max_diff,
                        error,
                    }
                })
                .collect();
            TableRow {
                modulus: entry.spec.modulus(),
                p: entry.spec.offset(),
                alternating: entry.spec.is_alternating(),
                formula: entry.display.to_string(),
                printed_formula: entry.typo.map(|t| t.printed.to_string()),
                cells,
            }
        })
        .collect();
    Ok(TableDocument {
        samples: samples.to_vec(),
        rows,
    })
}

impl TableDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (title, alternating) in [
            ("sum_v J_(Nv+p)(x)", false),
            ("sum_v (-1)^v J_(Nv+p)(x)", true),
        ] {
            let _ = writeln!(out, "{title}");
            let _ = writeln!(
                out,
                "{:>2} {:>2}  {:<70} {:>9} {:>22} {:>22} {:>22} {:>10}",
                "N", "p", "closed form", "x", "catalog", "theorem", "oracle", "max_diff"
            );
            for row in self.rows.iter().filter(|r| r.alternating == alternating) {
                for (i, c) in row.cells.iter().enumerate() {
                    let (n, p, f) = if i == 0 {
                        (
                            row.modulus.to_string(),
                            row.p.to_string(),
                            row.formula.as_str(),
                        )
                    } else {
                        (String::new(), String::new(), "")
                    };
                    let oracle = c
                        .oracle
                        .map(|v| format!("{v:.15e}"))
                        .unwrap_or_else(|| "error".into());
                    let _ = writeln!(
                        out,
                        "{n:>2} {p:>2}  {f:<70} {:>9} {:>22.15e} {:>22.15e} {:>22} {:>10.2e}",
                        c.x, c.catalog, c.theorem, oracle, c.max_diff
                    );
                }
                if let Some(printed) = &row.printed_formula {
                    let values: Vec<String> = row
                        .cells
                        .iter()
                        .map(|c| format!("x={}: {:.15e}", c.x, c.printed.unwrap_or(f64::NAN)))
                        .collect();
                    let _ = writeln!(
                        out,
                        "       flagged: printed as {printed}; {}",
                        values.join(", ")
                    );
                }
            }
            let _ = writeln!(out);
        }
        out
    }
}
