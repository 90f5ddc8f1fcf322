//! Hard-coded simplified closed forms for `N = 1..=6`, both families.
//!
//! Each row is the printed table formula, evaluated as written. Two plain
//! rows (`N = 6`, `p = 1` and `p = 5`) are printed without `x` inside the
//! sine; those rows evaluate the `x`-dependent reading and keep the printed
//! form in a [`TypoNote`] so reports can show the discrepancy.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;

use super::{SeriesError, SeriesSpec};

pub const CATALOG_MAX_MODULUS: u32 = 6;

type Eval = fn(Complex64) -> Complex64;

/// Printed table row that disagrees with the general closed form.
#[derive(Debug, Clone, Copy)]
pub struct TypoNote {
    pub printed: &'static str,
    pub printed_eval: Eval,
    pub explanation: &'static str,
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogEntry {
    pub spec: SeriesSpec,
    pub display: &'static str,
    eval: Eval,
    pub typo: Option<TypoNote>,
}

impl CatalogEntry {
    pub fn eval(&self, x: Complex64) -> Complex64 {
        (self.eval)(x)
    }

    pub fn is_flagged(&self) -> bool {
        self.typo.is_some()
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;
const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

fn k(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn cos(z: Complex64) -> Complex64 {
    z.cos()
}

fn sin(z: Complex64) -> Complex64 {
    z.sin()
}

/// `(1/3)[1 + 2cos(x√3/2 - shift)]`
fn third_wave(x: Complex64, shift: f64) -> Complex64 {
    (k(1.0) + cos(x * HALF_SQRT3 - shift) * 2.0) / 3.0
}

/// `(1/5)[1 + 2cos(x sin(a) + s1) + 2cos(x sin(b) + s2)]`
fn fifth_wave(x: Complex64, a: f64, s1: f64, b: f64, s2: f64) -> Complex64 {
    (k(1.0) + cos(x * a.sin() + s1) * 2.0 + cos(x * b.sin() + s2) * 2.0) / 5.0
}

fn row(n: i64, p: i64, alternating: bool, display: &'static str, eval: Eval) -> CatalogEntry {
    CatalogEntry {
        spec: SeriesSpec::new(n, p, alternating).expect("catalog modulus"),
        display,
        eval,
        typo: None,
    }
}

fn flagged(
    n: i64,
    p: i64,
    display: &'static str,
    eval: Eval,
    printed: &'static str,
    printed_eval: Eval,
) -> CatalogEntry {
    CatalogEntry {
        typo: Some(TypoNote {
            printed,
            printed_eval,
            explanation: "printed row has no x inside the sine, so it is constant in x; \
                          the general closed form reduces to the x-dependent reading",
        }),
        ..row(n, p, false, display, eval)
    }
}

fn build() -> Vec<CatalogEntry> {
    vec![
        // plain family
        row(1, 0, false, "1", |_| k(1.0)),
        row(2, 0, false, "1", |_| k(1.0)),
        row(2, 1, false, "0", |_| k(0.0)),
        row(3, 0, false, "(1/3)[1 + 2cos(x*sqrt(3)/2)]", |x| {
            third_wave(x, 0.0)
        }),
        row(3, 1, false, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 2pi/3)]", |x| {
            third_wave(x, 2.0 * PI / 3.0)
        }),
        row(3, 2, false, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 4pi/3)]", |x| {
            third_wave(x, 4.0 * PI / 3.0)
        }),
        row(4, 0, false, "cos^2(x/2)", |x| cos(x / 2.0).powi(2)),
        row(4, 1, false, "(1/2)sin(x)", |x| sin(x) / 2.0),
        row(4, 2, false, "sin^2(x/2)", |x| sin(x / 2.0).powi(2)),
        row(4, 3, false, "-(1/2)sin(x)", |x| -sin(x) / 2.0),
        row(
            5,
            0,
            false,
            "(1/5)[1 + 2cos(x*sin(2pi/5)) + 2cos(x*sin(4pi/5))]",
            |x| fifth_wave(x, 2.0 * PI / 5.0, 0.0, 4.0 * PI / 5.0, 0.0),
        ),
        row(
            5,
            1,
            false,
            "(1/5)[1 + 2cos(x*sin(2pi/5) - 2pi/5) + 2cos(x*sin(4pi/5) - 4pi/5)]",
            |x| {
                fifth_wave(
                    x,
                    2.0 * PI / 5.0,
                    -2.0 * PI / 5.0,
                    4.0 * PI / 5.0,
                    -4.0 * PI / 5.0,
                )
            },
        ),
        row(
            5,
            2,
            false,
            "(1/5)[1 + 2cos(x*sin(2pi/5) - 4pi/5) + 2cos(x*sin(4pi/5) - 8pi/5)]",
            |x| {
                fifth_wave(
                    x,
                    2.0 * PI / 5.0,
                    -4.0 * PI / 5.0,
                    4.0 * PI / 5.0,
                    -8.0 * PI / 5.0,
                )
            },
        ),
        row(
            5,
            3,
            false,
            "(1/5)[1 + 2cos(x*sin(2pi/5) - 6pi/5) + 2cos(x*sin(4pi/5) - 12pi/5)]",
            |x| {
                fifth_wave(
                    x,
                    2.0 * PI / 5.0,
                    -6.0 * PI / 5.0,
                    4.0 * PI / 5.0,
                    -12.0 * PI / 5.0,
                )
            },
        ),
        row(
            5,
            4,
            false,
            "(1/5)[1 + 2cos(x*sin(2pi/5) - 8pi/5) + 2cos(x*sin(4pi/5) - 16pi/5)]",
            |x| {
                fifth_wave(
                    x,
                    2.0 * PI / 5.0,
                    -8.0 * PI / 5.0,
                    4.0 * PI / 5.0,
                    -16.0 * PI / 5.0,
                )
            },
        ),
        row(6, 0, false, "(1/3)[1 + 2cos(x*sqrt(3)/2)]", |x| {
            third_wave(x, 0.0)
        }),
        flagged(
            6,
            1,
            "(1/sqrt(3))sin(x*sqrt(3)/2)",
            |x| sin(x * HALF_SQRT3) / SQRT3,
            "(1/sqrt(3))sin(sqrt(3)/2)",
            |_| k(HALF_SQRT3.sin() / SQRT3),
        ),
        row(6, 2, false, "(1/3)[1 - cos(x*sqrt(3)/2)]", |x| {
            (k(1.0) - cos(x * HALF_SQRT3)) / 3.0
        }),
        row(6, 3, false, "0", |_| k(0.0)),
        row(6, 4, false, "(1/3)[1 - cos(x*sqrt(3)/2)]", |x| {
            (k(1.0) - cos(x * HALF_SQRT3)) / 3.0
        }),
        flagged(
            6,
            5,
            "-(1/sqrt(3))sin(x*sqrt(3)/2)",
            |x| -sin(x * HALF_SQRT3) / SQRT3,
            "-(1/sqrt(3))sin(sqrt(3)/2)",
            |_| k(-HALF_SQRT3.sin() / SQRT3),
        ),
        // alternating family
        row(1, 0, true, "1", |_| k(1.0)),
        row(2, 0, true, "cos(x)", cos),
        row(2, 1, true, "sin(x)", sin),
        row(3, 0, true, "(1/3)[1 + 2cos(x*sqrt(3)/2)]", |x| {
            third_wave(x, 0.0)
        }),
        row(3, 1, true, "-(1/3)[1 - 2cos(x*sqrt(3)/2 - pi/3)]", |x| {
            -(k(1.0) - cos(x * HALF_SQRT3 - PI / 3.0) * 2.0) / 3.0
        }),
        row(3, 2, true, "(1/3)[1 + 2cos(x*sqrt(3)/2 - 2pi/3)]", |x| {
            third_wave(x, 2.0 * PI / 3.0)
        }),
        row(4, 0, true, "cos(x/sqrt(2))", |x| cos(x * FRAC_1_SQRT_2)),
        row(4, 1, true, "(1/sqrt(2))sin(x/sqrt(2))", |x| {
            sin(x * FRAC_1_SQRT_2) * FRAC_1_SQRT_2
        }),
        row(4, 2, true, "0", |_| k(0.0)),
        row(4, 3, true, "(1/sqrt(2))sin(x/sqrt(2))", |x| {
            sin(x * FRAC_1_SQRT_2) * FRAC_1_SQRT_2
        }),
        row(
            5,
            0,
            true,
            "(1/5)[1 + 2cos(x*sin(pi/5)) + 2cos(x*sin(3pi/5))]",
            |x| fifth_wave(x, PI / 5.0, 0.0, 3.0 * PI / 5.0, 0.0),
        ),
        row(
            5,
            1,
            true,
            "-(1/5)[1 + 2cos(x*sin(pi/5) + 4pi/5) + 2cos(x*sin(3pi/5) + 2pi/5)]",
            |x| -fifth_wave(x, PI / 5.0, 4.0 * PI / 5.0, 3.0 * PI / 5.0, 2.0 * PI / 5.0),
        ),
        row(
            5,
            2,
            true,
            "(1/5)[1 + 2cos(x*sin(pi/5) + 8pi/5) + 2cos(x*sin(3pi/5) + 4pi/5)]",
            |x| fifth_wave(x, PI / 5.0, 8.0 * PI / 5.0, 3.0 * PI / 5.0, 4.0 * PI / 5.0),
        ),
        row(
            5,
            3,
            true,
            "-(1/5)[1 + 2cos(x*sin(pi/5) + 12pi/5) + 2cos(x*sin(3pi/5) + 6pi/5)]",
            |x| -fifth_wave(x, PI / 5.0, 12.0 * PI / 5.0, 3.0 * PI / 5.0, 6.0 * PI / 5.0),
        ),
        row(
            5,
            4,
            true,
            "(1/5)[1 + 2cos(x*sin(pi/5) + 16pi/5) + 2cos(x*sin(3pi/5) + 8pi/5)]",
            |x| fifth_wave(x, PI / 5.0, 16.0 * PI / 5.0, 3.0 * PI / 5.0, 8.0 * PI / 5.0),
        ),
        row(6, 0, true, "(1/3)[cos(x) + 2cos(x/2)]", |x| {
            (cos(x) + cos(x / 2.0) * 2.0) / 3.0
        }),
        row(6, 1, true, "(1/3)[sin(x) + sin(x/2)]", |x| {
            (sin(x) + sin(x / 2.0)) / 3.0
        }),
        row(6, 2, true, "-(1/3)[cos(x) - cos(x/2)]", |x| {
            -(cos(x) - cos(x / 2.0)) / 3.0
        }),
        row(6, 3, true, "-(1/3)[sin(x) - 2sin(x/2)]", |x| {
            -(sin(x) - sin(x / 2.0) * 2.0) / 3.0
        }),
        row(6, 4, true, "(1/3)[cos(x) - cos(x/2)]", |x| {
            (cos(x) - cos(x / 2.0)) / 3.0
        }),
        row(6, 5, true, "(1/3)[sin(x) + sin(x/2)]", |x| {
            (sin(x) + sin(x / 2.0)) / 3.0
        }),
    ]
}

/// All 42 rows (21 per family): plain family first, then alternating, each ordered by `(N, p)`.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

/// Row for `spec`, after canonicalizing its offset.
///
/// The returned sign must multiply the row's value when the alternating
/// offset folded across `N`.
pub fn catalog_entry(spec: &SeriesSpec) -> Result<(&'static CatalogEntry, f64), SeriesError> {
    if spec.modulus() > CATALOG_MAX_MODULUS {
        return Err(SeriesError::UnsupportedModulus(spec.modulus()));
    }
    let (canon, sign) = spec.canonical();
    let entry = catalog()
        .iter()
        .find(|e| e.spec == canon)
        .expect("catalog covers every canonical spec with N <= 6");
    Ok((entry, sign))
}

pub fn catalog_eval(spec: &SeriesSpec, x: Complex64) -> Result<Complex64, SeriesError> {
    let (entry, sign) = catalog_entry(spec)?;
    Ok(entry.eval(x) * sign)
}

/// Formula text of the row. Offsets outside `[0, N)` display their canonical row.
pub fn catalog_display(spec: &SeriesSpec) -> Result<&'static str, SeriesError> {
    catalog_entry(spec).map(|(e, _)| e.display)
}
