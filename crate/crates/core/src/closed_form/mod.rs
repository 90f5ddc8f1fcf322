//! Closed-form right-hand sides for the lattice sums
//! `Σ_ν J_{Nν+p}(x)` and `Σ_ν (-1)^ν J_{Nν+p}(x)`.
//!
//! Both reduce to a finite average of `N` plane waves:
//!
//! ```text
//! Σ_ν J_{Nν+p}(x)        = (1/N) Σ_q exp(i x sin(2πq/N))      exp(-i 2πpq/N)
//! Σ_ν (-1)^ν J_{Nν+p}(x) = (1/N) Σ_q exp(i x sin((2q+1)π/N))  exp(-i (2q+1)πp/N)
//! ```
//!
//! with `q = 0..N-1`. The simplified tables for `N <= 6` live in [`catalog`].

pub mod catalog;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use catalog::{catalog, catalog_display, catalog_entry, catalog_eval, CatalogEntry, TypoNote};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("modulus N must be a positive integer, got {0}")]
    InvalidModulus(i64),
    #[error("no catalog row for modulus N={0} (catalog covers N <= 6)")]
    UnsupportedModulus(u32),
}

/// One member of either series family: modulus `N`, offset `p` and whether
/// the terms carry `(-1)^ν`.
///
/// The offset is kept as given. [`SeriesSpec::canonical`] yields the
/// representative with `p` in `[0, N)` plus the sign that relates the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeriesSpec {
    modulus: u32,
    offset: i64,
    alternating: bool,
}

impl SeriesSpec {
    pub fn new(modulus: i64, offset: i64, alternating: bool) -> Result<Self, SeriesError> {
        if modulus < 1 || modulus > u32::MAX as i64 {
            return Err(SeriesError::InvalidModulus(modulus));
        }
        Ok(Self {
            modulus: modulus as u32,
            offset,
            alternating,
        })
    }

    pub fn plain(modulus: i64, offset: i64) -> Result<Self, SeriesError> {
        Self::new(modulus, offset, false)
    }

    pub fn alternating(modulus: i64, offset: i64) -> Result<Self, SeriesError> {
        Self::new(modulus, offset, true)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_alternating(&self) -> bool {
        self.alternating
    }

    /// Canonical representative and the sign `s` with
    /// `series(self) = s * series(canonical)`.
    ///
    /// Plain sums are `N`-periodic in `p`. Alternating sums are `2N`-periodic
    /// and flip sign under `p -> p + N`.
    pub fn canonical(&self) -> (SeriesSpec, f64) {
        let n = self.modulus as i64;
        if !self.alternating {
            let p = self.offset.rem_euclid(n);
            (Self { offset: p, ..*self }, 1.0)
        } else {
            let p = self.offset.rem_euclid(2 * n);
            if p >= n {
                (
                    Self {
                        offset: p - n,
                        ..*self
                    },
                    -1.0,
                )
            } else {
                (Self { offset: p, ..*self }, 1.0)
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.offset >= 0 && self.offset < self.modulus as i64
    }

    /// Bessel order `Nν + p`, or `None` on i64 overflow.
    pub fn order_at(&self, nu: i64) -> Option<i64> {
        (self.modulus as i64)
            .checked_mul(nu)?
            .checked_add(self.offset)
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alternating {
            write!(f, "sum (-1)^v J_({}v{:+})(x)", self.modulus, self.offset)
        } else {
            write!(f, "sum J_({}v{:+})(x)", self.modulus, self.offset)
        }
    }
}

/// `exp(i x sin θ) * exp(-i φ)` for complex `x`.
fn plane_wave(x: Complex64, theta: f64, phase: f64) -> Complex64 {
    let i = Complex64::i();
    (i * x * theta.sin()).exp() * Complex64::from_polar(1.0, -phase)
}

/// Angle `2π r / d`, with `r` already reduced mod `d` in integers.
fn lattice_angle(r: u64, d: u64) -> f64 {
    2.0 * PI * (r as f64) / (d as f64)
}

/// General closed form for the non-alternating family.
///
/// Uses the canonical offset, so `p` and `p + N` give bit-identical results.
/// The `alternating` flag of `spec` is ignored.
pub fn theorem1_sum(spec: &SeriesSpec, x: Complex64) -> Complex64 {
    let n = spec.modulus as u64;
    let p = spec.offset.rem_euclid(n as i64) as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for q in 0..n {
        let theta = lattice_angle(q, n);
        let phase = lattice_angle((p * q) % n, n);
        acc += plane_wave(x, theta, phase);
    }
    acc / (n as f64)
}

/// General closed form for the alternating family.
///
/// The offset is reduced mod `2N`; the phase `(2q+1)πp/N` is formed as
/// `2π · ((2q+1)p mod 2N) / 2N`. The `alternating` flag of `spec` is ignored.
pub fn theorem2_sum(spec: &SeriesSpec, x: Complex64) -> Complex64 {
    let n = spec.modulus as u64;
    let two_n = 2 * n;
    let p = spec.offset.rem_euclid(two_n as i64) as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for q in 0..n {
        let odd = 2 * q + 1;
        let theta = lattice_angle(odd, two_n);
        // (odd * p) can exceed u64 only for N beyond 2^31
        let r = ((odd as u128 * p as u128) % two_n as u128) as u64;
        let phase = lattice_angle(r, two_n);
        acc += plane_wave(x, theta, phase);
    }
    acc / (n as f64)
}

/// Picks [`theorem1_sum`] or [`theorem2_sum`] by the spec's family.
pub fn closed_sum(spec: &SeriesSpec, x: Complex64) -> Complex64 {
    if spec.alternating {
        theorem2_sum(spec, x)
    } else {
        theorem1_sum(spec, x)
    }
}
