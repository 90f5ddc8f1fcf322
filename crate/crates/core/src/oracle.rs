//! Brute-force truncated summation of the left-hand sides, used as ground
//! truth for the closed forms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::closed_form::SeriesSpec;
use crate::kernel::{bessel_j, KernelError};

/// Orders must clear `ceil|x|` by this much before truncation is allowed.
pub const TURNING_POINT_MARGIN: u64 = 10;
/// Cap on the excluded terms summed into `est_tail` per side.
const EXCLUDED_TAIL_MAX_TERMS: i64 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("truncation did not converge within half-width {cap}")]
    TruncationCapExceeded { cap: u64 },
    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(&'static str),
    #[error("Jacobi-Anger half-width {given} below required {required}")]
    HalfWidthTooSmall { given: u64, required: u64 },
    #[error("order index overflow at nu={0}")]
    OrderOverflow(i64),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    tail_tol: f64,
    max_half_width: u64,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: 1e-13,
            max_half_width: 4000,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tail_tol: f64, max_half_width: u64) -> Result<Self, OracleError> {
        if !tail_tol.is_finite() || tail_tol <= 0.0 {
            return Err(OracleError::InvalidPolicy(
                "tail_tol must be positive and finite",
            ));
        }
        if max_half_width < 1 {
            return Err(OracleError::InvalidPolicy(
                "max_half_width must be at least 1",
            ));
        }
        Ok(Self {
            tail_tol,
            max_half_width,
        })
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn max_half_width(&self) -> u64 {
        self.max_half_width
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Oracle,
    Theorem1,
    Theorem2,
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub value: Complex64,
    /// Heuristic magnitude of what was left out; zero for closed forms.
    pub est_tail: f64,
    pub terms_used: u64,
    pub method: Method,
}

fn term(spec: &SeriesSpec, nu: i64, x: Complex64) -> Result<Complex64, OracleError> {
    let order = spec.order_at(nu).ok_or(OracleError::OrderOverflow(nu))?;
    let j = bessel_j(order, x)?;
    Ok(if spec.is_alternating() && nu % 2 != 0 {
        -j
    } else {
        j
    })
}

/// Magnitude sum of the terms beyond `±half_width` on one side, taken until
/// they stop contributing at double precision.
fn excluded_tail(
    spec: &SeriesSpec,
    half_width: i64,
    direction: i64,
    x: Complex64,
) -> Result<f64, OracleError> {
    let mut total = 0.0;
    for k in 1..=EXCLUDED_TAIL_MAX_TERMS {
        let nu = half_width
            .checked_add(k)
            .ok_or(OracleError::OrderOverflow(half_width))?;
        let t = term(spec, direction * nu, x)?.norm();
        total += t;
        if k >= 2 && t <= f64::EPSILON * total {
            break;
        }
    }
    Ok(total)
}

/// `Σ_{ν=-M}^{M} (±1)^ν J_{Nν+p}(x)` with `M` grown until both edge orders
/// clear `ceil|x| + 10` and the last two terms on each side are below
/// `tail_tol`.
///
/// Terms are accumulated from the outermost pair inward.
pub fn oracle_sum(
    spec: &SeriesSpec,
    x: Complex64,
    policy: &TruncationPolicy,
) -> Result<EvalOutcome, OracleError> {
    let n = spec.modulus() as i64;
    let p = spec.offset();
    let threshold = (x.norm().ceil() as u64).saturating_add(TURNING_POINT_MARGIN);
    let tol = policy.tail_tol;

    let centre = term(spec, 0, x)?;
    // (positive side, negative side), index k holds nu = ±(k+1)
    let mut pos: Vec<Complex64> = Vec::new();
    let mut neg: Vec<Complex64> = Vec::new();

    let mut half_width = 0u64;
    loop {
        if half_width >= policy.max_half_width {
            return Err(OracleError::TruncationCapExceeded {
                cap: policy.max_half_width,
            });
        }
        half_width += 1;
        let m = half_width as i64;
        pos.push(term(spec, m, x)?);
        neg.push(term(spec, -m, x)?);

        let upper = n.checked_mul(m).and_then(|v| v.checked_add(p));
        let lower = n.checked_mul(-m).and_then(|v| v.checked_add(p));
        let (Some(upper), Some(lower)) = (upper, lower) else {
            return Err(OracleError::OrderOverflow(m));
        };
        let past_turning = upper.unsigned_abs() > threshold && lower.unsigned_abs() > threshold;
        if !past_turning {
            continue;
        }
        let last_two = |side: &[Complex64]| {
            let k = side.len();
            let inner = if k >= 2 { side[k - 2] } else { centre };
            side[k - 1].norm() < tol && inner.norm() < tol
        };
        if last_two(&pos) && last_two(&neg) {
            break;
        }
    }

    let m = half_width as i64;
    let est_tail = excluded_tail(spec, m, 1, x)? + excluded_tail(spec, m, -1, x)?;

    let mut sum = Complex64::new(0.0, 0.0);
    for (a, b) in pos.iter().rev().zip(neg.iter().rev()) {
        sum += a + b;
    }
    sum += centre;

    Ok(EvalOutcome {
        value: sum,
        est_tail,
        terms_used: 2 * half_width + 1,
        method: Method::Oracle,
    })
}

/// Smallest half-width accepted by [`jacobi_anger_residual`].
pub fn jacobi_anger_min_half_width(x: Complex64) -> u64 {
    x.norm().ceil() as u64 + 20
}

/// `|exp(i x sin θ) - Σ_{α=-M}^{M} J_α(x) e^{iαθ}|`.
pub fn jacobi_anger_residual(
    x: Complex64,
    theta: f64,
    half_width: u64,
) -> Result<f64, OracleError> {
    let required = jacobi_anger_min_half_width(x);
    if half_width < required {
        return Err(OracleError::HalfWidthTooSmall {
            given: half_width,
            required,
        });
    }
    let i = Complex64::i();
    let exact = (i * x * theta.sin()).exp();
    let m = half_width as i64;
    let mut partial = Complex64::new(0.0, 0.0);
    for alpha in (1..=m).rev() {
        let ja = bessel_j(alpha, x)?;
        let jm = bessel_j(-alpha, x)?;
        let a = alpha as f64;
        partial += ja * Complex64::from_polar(1.0, a * theta)
            + jm * Complex64::from_polar(1.0, -a * theta);
    }
    partial += bessel_j(0, x)?;
    Ok((exact - partial).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(0.0, 10).is_err());
        assert!(TruncationPolicy::new(-1e-3, 10).is_err());
        assert!(TruncationPolicy::new(f64::NAN, 10).is_err());
        assert!(TruncationPolicy::new(1e-12, 0).is_err());
        let d = TruncationPolicy::default();
        assert_eq!((d.tail_tol(), d.max_half_width()), (1e-13, 4000));
    }

    #[test]
    fn even_orders_sum_to_one() {
        let spec = SeriesSpec::plain(2, 0).unwrap();
        let out = oracle_sum(&spec, re(3.0), &TruncationPolicy::default()).unwrap();
        assert!((out.value - re(1.0)).norm() <= 1e-11);
        assert_eq!(out.method, Method::Oracle);
        assert!(out.est_tail >= 0.0);
    }

    #[test]
    fn zero_argument_gives_exact_zero() {
        let spec = SeriesSpec::plain(5, 2).unwrap();
        let out = oracle_sum(&spec, re(0.0), &TruncationPolicy::default()).unwrap();
        assert_eq!(out.value, re(0.0));
        assert_eq!(out.est_tail, 0.0);
        // orders must pass 10 on both sides: nu = ±3 gives 17 and -13
        assert_eq!(out.terms_used, 7);
    }

    #[test]
    fn introduction_example() {
        let spec = SeriesSpec::plain(3, 1).unwrap();
        let out = oracle_sum(&spec, re(2.0), &TruncationPolicy::default()).unwrap();
        let expected = (1.0 + 2.0 * (3f64.sqrt() - 2.0 * PI / 3.0).cos()) / 3.0;
        assert!((out.value - re(expected)).norm() <= 1e-11);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = SeriesSpec::plain(1, 0).unwrap();
        let policy = TruncationPolicy::new(1e-13, 5).unwrap();
        assert_eq!(
            oracle_sum(&spec, re(20.0), &policy),
            Err(OracleError::TruncationCapExceeded { cap: 5 })
        );
    }

    #[test]
    fn kernel_errors_propagate() {
        let spec = SeriesSpec::plain(1, 0).unwrap();
        let err = oracle_sum(
            &spec,
            Complex64::new(40.0, 1.0),
            &TruncationPolicy::default(),
        );
        assert!(matches!(
            err,
            Err(OracleError::Kernel(KernelError::ArgumentTooLarge { .. }))
        ));
    }

    #[test]
    fn jacobi_anger_examples() {
        assert!(jacobi_anger_residual(re(0.0), 1.3, 25).unwrap() <= 1e-15);
        assert!(jacobi_anger_residual(re(5.0), PI / 7.0, 40).unwrap() <= 1e-10);
        assert!(jacobi_anger_residual(Complex64::new(2.0, 1.0), 0.4, 40).unwrap() <= 1e-9);
    }

    #[test]
    fn jacobi_anger_precondition() {
        assert_eq!(
            jacobi_anger_residual(re(10.0), 0.4, 29),
            Err(OracleError::HalfWidthTooSmall {
                given: 29,
                required: 30
            })
        );
    }
}
