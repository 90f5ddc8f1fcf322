//! Lattice sums of integer-order Bessel functions of the first kind,
//! `Σ_ν J_{Nν+p}(x)` and `Σ_ν (-1)^ν J_{Nν+p}(x)`, evaluated three ways:
//! finite closed forms, a catalog of simplified forms for `N <= 6`, and a
//! truncated brute-force sum. The [`verification`] module cross-checks them.

pub mod cli;
pub mod closed_form;
pub mod kernel;
pub mod oracle;
pub mod verification;

pub use closed_form::{closed_sum, theorem1_sum, theorem2_sum, SeriesError, SeriesSpec};
pub use kernel::{bessel_j, bessel_j_complex, bessel_j_real, BesselOrder, KernelError};
pub use oracle::{oracle_sum, EvalOutcome, Method, OracleError, TruncationPolicy};

/// Scalar field for every evaluation.
pub type ComplexValue = num_complex::Complex64;
