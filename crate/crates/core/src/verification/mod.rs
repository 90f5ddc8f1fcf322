//! Grid-based cross-checks of the closed forms, the catalog and the oracle.
//!
//! Nothing here aborts on a numerical failure: errors become failed records
//! and the report is the product.

mod report;
mod tables;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{CheckKind, CheckRecord, ClassSummary, FlaggedRow, Summary, VerificationReport};
pub use tables::{reproduce_tables, TableCell, TableDocument, TableRow};

use crate::closed_form::{catalog, closed_sum, theorem1_sum, theorem2_sum, SeriesSpec};
use crate::kernel::{bessel_j_real, MAX_COMPLEX_MODULUS, MAX_REAL_ARGUMENT};
use crate::oracle::{jacobi_anger_residual, oracle_sum, TruncationPolicy};

/// Angles at which the Jacobi-Anger partial sum is checked.
pub const JACOBI_ANGER_THETAS: [f64; 3] = [0.4, PI / 7.0, 2.0];
/// Extra half-width beyond `ceil|x|` for the Jacobi-Anger check.
pub const JACOBI_ANGER_EXTRA: u64 = 40;
/// Orders `0..=REFLECTION_MAX_ORDER` used by the reflection check.
pub const REFLECTION_MAX_ORDER: i64 = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid needs at least one real point")]
    NoRealPoints,
    #[error("grid needs at least one modulus")]
    NoModuli,
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("point {0} is outside the kernel domain")]
    OutOfDomain(Complex64),
    #[error("tolerance {0} must be non-negative")]
    BadTolerance(f64),
    #[error("sample list is empty")]
    NoSamples,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub theorem_real: f64,
    pub theorem_complex: f64,
    pub catalog: f64,
    pub intro_formula: f64,
    pub partition: f64,
    pub periodicity: f64,
    pub sign_shift: f64,
    pub cross_theorem: f64,
    pub reality: f64,
    pub jacobi_anger_real: f64,
    pub jacobi_anger_complex: f64,
    pub reflection: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            theorem_real: 1e-10,
            theorem_complex: 1e-9,
            catalog: 1e-12,
            intro_formula: 1e-12,
            partition: 1e-12,
            periodicity: 1e-15,
            sign_shift: 1e-13,
            cross_theorem: 1e-12,
            reality: 1e-13,
            jacobi_anger_real: 1e-10,
            jacobi_anger_complex: 1e-9,
            reflection: 1e-14,
        }
    }
}

impl Tolerances {
    /// Every check at the same tolerance.
    pub fn uniform(tol: f64) -> Self {
        Self {
            theorem_real: tol,
            theorem_complex: tol,
            catalog: tol,
            intro_formula: tol,
            partition: tol,
            periodicity: tol,
            sign_shift: tol,
            cross_theorem: tol,
            reality: tol,
            jacobi_anger_real: tol,
            jacobi_anger_complex: tol,
            reflection: tol,
        }
    }

    /// Sets every structural-identity tolerance.
    pub fn set_structural(&mut self, tol: f64) {
        self.partition = tol;
        self.periodicity = tol;
        self.sign_shift = tol;
        self.cross_theorem = tol;
        self.reality = tol;
        self.reflection = tol;
    }

    fn validate(&self) -> Result<(), GridError> {
        for t in [
            self.theorem_real,
            self.theorem_complex,
            self.catalog,
            self.intro_formula,
            self.partition,
            self.periodicity,
            self.sign_shift,
            self.cross_theorem,
            self.reality,
            self.jacobi_anger_real,
            self.jacobi_anger_complex,
            self.reflection,
        ] {
            if t.is_nan() || t < 0.0 {
                return Err(GridError::BadTolerance(t));
            }
        }
        Ok(())
    }
}

/// Default real points: `{0, 0.5, 1, 2.5, π, 5, 10, 17.3, 20}` and negatives.
pub fn default_real_points() -> Vec<f64> {
    let base = [0.0, 0.5, 1.0, 2.5, PI, 5.0, 10.0, 17.3, 20.0];
    let mut pts: Vec<f64> = base.to_vec();
    pts.extend(base.iter().skip(1).map(|x| -x));
    pts
}

pub fn default_complex_points() -> Vec<Complex64> {
    vec![
        Complex64::new(1.0, 1.0),
        Complex64::new(3.0, -2.0),
        Complex64::new(0.5, 0.5),
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    real_points: Vec<f64>,
    complex_points: Vec<Complex64>,
    moduli: Vec<u32>,
    tolerances: Tolerances,
    policy: TruncationPolicy,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            real_points: default_real_points(),
            complex_points: default_complex_points(),
            moduli: (1..=12).collect(),
            tolerances: Tolerances::default(),
            policy: TruncationPolicy::default(),
        }
    }
}

impl GridSpec {
    /// Complex points may be empty; real points and moduli may not.
    pub fn new(
        real_points: Vec<f64>,
        complex_points: Vec<Complex64>,
        moduli: Vec<u32>,
        tolerances: Tolerances,
        policy: TruncationPolicy,
    ) -> Result<Self, GridError> {
        if real_points.is_empty() {
            return Err(GridError::NoRealPoints);
        }
        if moduli.is_empty() {
            return Err(GridError::NoModuli);
        }
        if moduli.contains(&0) {
            return Err(GridError::ZeroModulus);
        }
        for &x in &real_points {
            if !x.is_finite() || x.abs() >= MAX_REAL_ARGUMENT {
                return Err(GridError::OutOfDomain(Complex64::new(x, 0.0)));
            }
        }
        for &z in &complex_points {
            if !z.re.is_finite() || !z.im.is_finite() || z.norm() > MAX_COMPLEX_MODULUS {
                return Err(GridError::OutOfDomain(z));
            }
        }
        tolerances.validate()?;
        Ok(Self {
            real_points,
            complex_points,
            moduli,
            tolerances,
            policy,
        })
    }

    pub fn with_moduli(self, moduli: Vec<u32>) -> Result<Self, GridError> {
        Self::new(
            self.real_points,
            self.complex_points,
            moduli,
            self.tolerances,
            self.policy,
        )
    }

    pub fn with_tolerances(self, tolerances: Tolerances) -> Result<Self, GridError> {
        Self::new(
            self.real_points,
            self.complex_points,
            self.moduli,
            tolerances,
            self.policy,
        )
    }

    pub fn with_policy(mut self, policy: TruncationPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn real_points(&self) -> &[f64] {
        &self.real_points
    }

    pub fn complex_points(&self) -> &[Complex64] {
        &self.complex_points
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tolerances
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    /// Real points (as complex) followed by complex points, tagged `is_real`.
    fn points(&self) -> impl Iterator<Item = (Complex64, bool)> + '_ {
        self.real_points
            .iter()
            .map(|&x| (Complex64::new(x, 0.0), true))
            .chain(self.complex_points.iter().map(|&z| (z, false)))
    }
}

/// Oracle versus the matching general closed form at every grid point.
pub fn verify_theorem(spec: &SeriesSpec, grid: &GridSpec) -> VerificationReport {
    let tol = &grid.tolerances;
    let records = grid
        .points()
        .map(|(x, is_real)| {
            let t = if is_real {
                tol.theorem_real
            } else {
                tol.theorem_complex
            };
            let rhs = closed_sum(spec, x);
            match oracle_sum(spec, x, &grid.policy) {
                Ok(out) => CheckRecord::compare(
                    CheckKind::TheoremVsOracle,
                    Some(spec),
                    x,
                    out.value,
                    rhs,
                    t,
                )
                .with_note(format!(
                    "est_tail={:e} terms={}",
                    out.est_tail, out.terms_used
                )),
                Err(e) => CheckRecord::failed(CheckKind::TheoremVsOracle, Some(spec), x, t, e),
            }
        })
        .collect();
    VerificationReport::new(records, Vec::new(), &[CheckKind::TheoremVsOracle])
}

/// `(1/3)[1 + 2cos(x√3/2 - 2πp/3)]`, the worked `N = 3` example.
pub fn intro_formula(p: i64, x: Complex64) -> Complex64 {
    let shift = 2.0 * PI * (p.rem_euclid(3) as f64) / 3.0;
    (Complex64::new(1.0, 0.0) + (x * (3f64.sqrt() / 2.0) - shift).cos() * 2.0) / 3.0
}

/// Every catalog row whose modulus is in the grid, against the general form.
///
/// Rows with a printed-form typo are checked twice: the corrected reading
/// goes into the main records, the printed form into the flagged section.
pub fn verify_catalog(grid: &GridSpec) -> VerificationReport {
    let tol = &grid.tolerances;
    let mut records = Vec::new();
    let mut flagged = Vec::new();
    for entry in catalog()
        .iter()
        .filter(|e| grid.moduli.contains(&e.spec.modulus()))
    {
        let spec = &entry.spec;
        let mut printed_records = Vec::new();
        for (x, _) in grid.points() {
            let truth = closed_sum(spec, x);
            records.push(CheckRecord::compare(
                CheckKind::CatalogVsTheorem,
                Some(spec),
                x,
                entry.eval(x),
                truth,
                tol.catalog,
            ));
            if let Some(note) = &entry.typo {
                printed_records.push(CheckRecord::compare(
                    CheckKind::CatalogPrintedVsTheorem,
                    Some(spec),
                    x,
                    (note.printed_eval)(x),
                    truth,
                    tol.catalog,
                ));
            }
            if spec.modulus() == 3 && !spec.is_alternating() {
                records.push(CheckRecord::compare(
                    CheckKind::IntroFormula,
                    Some(spec),
                    x,
                    truth,
                    intro_formula(spec.offset(), x),
                    tol.intro_formula,
                ));
            }
        }
        if let Some(note) = &entry.typo {
            flagged.push(FlaggedRow {
                modulus: spec.modulus(),
                p: spec.offset(),
                alternating: spec.is_alternating(),
                printed: note.printed.to_string(),
                reading: entry.display.to_string(),
                explanation: note.explanation.to_string(),
                records: printed_records,
            });
        }
    }
    VerificationReport::new(records, flagged, &[CheckKind::CatalogVsTheorem])
}

fn spec_or_skip(n: u32, p: i64, alternating: bool) -> SeriesSpec {
    SeriesSpec::new(n as i64, p, alternating).expect("grid moduli are positive")
}

/// Partition of unity, periodicity, sign shift, cross-theorem split,
/// reality on the real axis, Jacobi-Anger residual and order reflection.
pub fn verify_structural(grid: &GridSpec) -> VerificationReport {
    let tol = &grid.tolerances;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let mut records = Vec::new();

    for &n in &grid.moduli {
        for (x, is_real) in grid.points() {
            let total: Complex64 = (0..n as i64)
                .map(|p| theorem1_sum(&spec_or_skip(n, p, false), x))
                .sum();
            let mut rec = CheckRecord::compare(
                CheckKind::PartitionOfUnity,
                None,
                x,
                total,
                one,
                tol.partition,
            );
            rec.modulus = Some(n);
            records.push(rec);

            for p in 0..n as i64 {
                let plain = spec_or_skip(n, p, false);
                let shifted = spec_or_skip(n, p + n as i64, false);
                records.push(CheckRecord::compare(
                    CheckKind::Periodicity,
                    Some(&plain),
                    x,
                    theorem1_sum(&plain, x),
                    theorem1_sum(&shifted, x),
                    tol.periodicity,
                ));

                let alt = spec_or_skip(n, p, true);
                let alt_shifted = spec_or_skip(n, p + n as i64, true);
                records.push(CheckRecord::compare(
                    CheckKind::SignShift,
                    Some(&alt),
                    x,
                    theorem2_sum(&alt_shifted, x),
                    -theorem2_sum(&alt, x),
                    tol.sign_shift,
                ));

                let double = 2 * n;
                let even = theorem1_sum(&spec_or_skip(double, p, false), x);
                let odd = theorem1_sum(&spec_or_skip(double, p + n as i64, false), x);
                records.push(CheckRecord::compare(
                    CheckKind::CrossTheorem,
                    Some(&alt),
                    x,
                    theorem2_sum(&alt, x),
                    even - odd,
                    tol.cross_theorem,
                ));

                if is_real {
                    for spec in [plain, alt] {
                        let v = closed_sum(&spec, x);
                        records.push(CheckRecord::compare(
                            CheckKind::Reality,
                            Some(&spec),
                            x,
                            Complex64::new(v.im, 0.0),
                            zero,
                            tol.reality,
                        ));
                    }
                }
            }
        }
    }

    for (x, is_real) in grid.points() {
        let t = if is_real {
            tol.jacobi_anger_real
        } else {
            tol.jacobi_anger_complex
        };
        let half_width = x.norm().ceil() as u64 + JACOBI_ANGER_EXTRA;
        for theta in JACOBI_ANGER_THETAS {
            let note = format!("theta={theta} M={half_width}");
            let rec = match jacobi_anger_residual(x, theta, half_width) {
                Ok(res) => CheckRecord::compare(
                    CheckKind::JacobiAnger,
                    None,
                    x,
                    Complex64::new(res, 0.0),
                    zero,
                    t,
                ),
                Err(e) => CheckRecord::failed(CheckKind::JacobiAnger, None, x, t, e),
            };
            records.push(rec.with_note(note));
        }
    }

    for &x in &grid.real_points {
        let xc = Complex64::new(x, 0.0);
        for order in 0..=REFLECTION_MAX_ORDER {
            let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            let rec = match (bessel_j_real(-order, x), bessel_j_real(order, x)) {
                (Ok(neg), Ok(pos)) => CheckRecord::compare(
                    CheckKind::Reflection,
                    None,
                    xc,
                    Complex64::new(neg, 0.0),
                    Complex64::new(sign * pos, 0.0),
                    tol.reflection,
                ),
                (Err(e), _) | (_, Err(e)) => {
                    CheckRecord::failed(CheckKind::Reflection, None, xc, tol.reflection, e)
                }
            };
            records.push(rec.with_note(format!("n={order}")));
        }
    }

    VerificationReport::new(records, Vec::new(), &CheckKind::STRUCTURAL)
}

/// Theorem-vs-oracle over every `(N, p, family)` in the grid, then catalog
/// and structural checks, merged into one report.
pub fn verify_all(grid: &GridSpec) -> VerificationReport {
    let mut parts = Vec::new();
    for &n in &grid.moduli {
        for alternating in [false, true] {
            for p in 0..n as i64 {
                parts.push(verify_theorem(&spec_or_skip(n, p, alternating), grid));
            }
        }
    }
    parts.push(verify_catalog(grid));
    parts.push(verify_structural(grid));
    VerificationReport::merge(parts)
}
