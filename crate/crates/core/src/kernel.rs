//! Bessel functions of the first kind for integer order.
//!
//! Real arguments go through Miller's backward recurrence, normalized with
//! `J_0(x) + 2 Σ_k J_{2k}(x) = 1`. Complex arguments use the ascending power
//! series, which is only trustworthy for moderate `|z|`; the public entry
//! point refuses `|z| > 30`.
//!
//! Negative orders are never recurred on directly; they are folded onto
//! positive ones with `J_{-n}(x) = (-1)^n J_n(x)`.

use num_complex::Complex64;
use thiserror::Error;

/// Largest real argument accepted by [`bessel_j_real`] (exclusive).
pub const MAX_REAL_ARGUMENT: f64 = 1e8;

/// Largest complex modulus accepted by [`bessel_j_complex`] (inclusive).
pub const MAX_COMPLEX_MODULUS: f64 = 30.0;

/// Term cap for the ascending series.
pub const MAX_SERIES_TERMS: usize = 500;

const SERIES_REL_CUTOFF: f64 = 1e-18;
const RESCALE_THRESHOLD: f64 = 1e250;
const RESCALE_FACTOR: f64 = 1e-250;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum KernelError {
    #[error("argument {modulus:e} outside supported range (limit {limit:e})")]
    ArgumentTooLarge { modulus: f64, limit: f64 },
    #[error("argument is not finite")]
    NonFiniteArgument,
    #[error("recurrence start order for n={order} overflows a 64-bit integer")]
    OrderOverflow { order: i64 },
    #[error("ascending series for J_{order} did not converge in {terms} terms")]
    NonConvergence { order: i64, terms: usize },
}

/// Integer Bessel order. Any `i64` is a valid order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BesselOrder(pub i64);

impl From<i64> for BesselOrder {
    fn from(n: i64) -> Self {
        BesselOrder(n)
    }
}

impl BesselOrder {
    pub fn value(self) -> i64 {
        self.0
    }

    /// `(-1)^n` as a float.
    pub fn parity_sign(self) -> f64 {
        if self.0 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// Start order for the backward recurrence:
/// `max(|n|, ceil|x|) + 15 + ceil(10 ln(2 + |x|))`.
pub fn miller_start_order(n: u64, x_abs: f64) -> Option<u64> {
    let ceil_x = x_abs.ceil() as u64;
    let margin = 15 + (10.0 * (2.0 + x_abs).ln()).ceil() as u64;
    let start = n.max(ceil_x).checked_add(margin)?;
    // the recurrence index must also fit in i64
    if start > i64::MAX as u64 {
        return None;
    }
    Some(start)
}

/// `J_n(x)` for integer `n` and real `x`, `|x| < 1e8`.
pub fn bessel_j_real(n: impl Into<BesselOrder>, x: f64) -> Result<f64, KernelError> {
    let order = n.into();
    if !x.is_finite() {
        return Err(KernelError::NonFiniteArgument);
    }
    if x.abs() >= MAX_REAL_ARGUMENT {
        return Err(KernelError::ArgumentTooLarge {
            modulus: x.abs(),
            limit: MAX_REAL_ARGUMENT,
        });
    }
    let m = order.0.unsigned_abs();
    let start =
        miller_start_order(m, x.abs()).ok_or(KernelError::OrderOverflow { order: order.0 })?;

    if x == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }

    // J_m(|x|), then sign from J_n(-x) = (-1)^n J_n(x) and the reflection.
    let value = if underflows(m, x.abs()) {
        0.0
    } else {
        miller_positive(m, x.abs(), start)
    };
    let mut sign = 1.0;
    if order.0 < 0 {
        sign *= order.parity_sign();
    }
    if x < 0.0 {
        sign *= order.parity_sign();
    }
    Ok(sign * value)
}

/// Upper bound `|J_m(x)| <= (x/2)^m / m!` is below the smallest subnormal.
fn underflows(m: u64, x_abs: f64) -> bool {
    if m < 2 {
        return false;
    }
    let mf = m as f64;
    // Stirling lower bound for ln m!
    let ln_fact = mf * mf.ln() - mf + 0.5 * (2.0 * std::f64::consts::PI * mf).ln();
    mf * (x_abs / 2.0).ln() - ln_fact < -760.0
}

fn miller_positive(m: u64, x: f64, start: u64) -> f64 {
    let two_over_x = 2.0 / x;
    let mut f_above = 0.0_f64; // f_{k+1}
    let mut f_here = 1e-30_f64; // f_k at k = start
    let mut norm = 0.0_f64;
    let mut wanted = if start == m { f_here } else { 0.0 };
    if start.is_multiple_of(2) {
        norm += 2.0 * f_here;
    }

    let mut k = start;
    while k > 0 {
        let f_below = (k as f64) * two_over_x * f_here - f_above;
        f_above = f_here;
        f_here = f_below;
        k -= 1;

        if k == m {
            wanted = f_here;
        }
        if k.is_multiple_of(2) {
            norm += if k == 0 { f_here } else { 2.0 * f_here };
        }
        if f_here.abs() > RESCALE_THRESHOLD {
            f_here *= RESCALE_FACTOR;
            f_above *= RESCALE_FACTOR;
            norm *= RESCALE_FACTOR;
            wanted *= RESCALE_FACTOR;
        }
    }
    wanted / norm
}

/// `J_n(z)` for integer `n` and complex `z`, `|z| <= 30`, by the ascending
/// series `Σ_k (-1)^k (z/2)^{n+2k} / (k! (n+k)!)`.
///
/// Summation stops once the next term drops below `1e-18` times the largest
/// partial-sum magnitude seen so far. Cancellation grows like `e^{|z|}`, so
/// accuracy degrades toward the upper end of the domain.
pub fn bessel_j_complex(n: impl Into<BesselOrder>, z: Complex64) -> Result<Complex64, KernelError> {
    let order = n.into();
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(KernelError::NonFiniteArgument);
    }
    let modulus = z.norm();
    if modulus > MAX_COMPLEX_MODULUS {
        return Err(KernelError::ArgumentTooLarge {
            modulus,
            limit: MAX_COMPLEX_MODULUS,
        });
    }
    let m = order.0.unsigned_abs();
    if modulus == 0.0 {
        return Ok(Complex64::new(if m == 0 { 1.0 } else { 0.0 }, 0.0));
    }

    let half = z * 0.5;
    // leading term (z/2)^m / m!, built incrementally to dodge overflow
    let mut term = Complex64::new(1.0, 0.0);
    for j in 1..=m {
        term = term * half / (j as f64);
        if term.re == 0.0 && term.im == 0.0 {
            break;
        }
    }

    let step = -(half * half);
    let mf = m as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut peak = 0.0_f64;
    let mut converged = false;
    for k in 0..MAX_SERIES_TERMS {
        sum += term;
        peak = peak.max(sum.norm());
        let kf = k as f64;
        let next = term * step / ((kf + 1.0) * (mf + kf + 1.0));
        let next_abs = next.norm();
        if next_abs == 0.0 || next_abs < SERIES_REL_CUTOFF * peak {
            converged = true;
            break;
        }
        term = next;
    }
    if !converged {
        return Err(KernelError::NonConvergence {
            order: order.0,
            terms: MAX_SERIES_TERMS,
        });
    }
    if order.0 < 0 {
        sum *= order.parity_sign();
    }
    Ok(sum)
}

/// Dispatches on whether `z` lies exactly on the real axis.
pub fn bessel_j(n: impl Into<BesselOrder>, z: Complex64) -> Result<Complex64, KernelError> {
    let order = n.into();
    if z.im == 0.0 {
        bessel_j_real(order, z.re).map(|v| Complex64::new(v, 0.0))
    } else {
        bessel_j_complex(order, z)
    }
}
