use std::f64::consts::PI;

use bessel_series::closed_form::{catalog, catalog_eval, theorem1_sum, theorem2_sum, SeriesSpec};
use num_complex::Complex64;
use proptest::prelude::*;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// The finite sums written out literally, phases formed in floating point
/// from the raw offset with no integer reduction.
fn literal_plain(n: u32, p: i64, x: Complex64) -> Complex64 {
    let i = Complex64::i();
    let nf = n as f64;
    (0..n)
        .map(|q| {
            let q = q as f64;
            (i * x * (2.0 * PI * q / nf).sin()).exp() * (-i * 2.0 * PI * (p as f64) * q / nf).exp()
        })
        .sum::<Complex64>()
        / nf
}

fn literal_alternating(n: u32, p: i64, x: Complex64) -> Complex64 {
    let i = Complex64::i();
    let nf = n as f64;
    (0..n)
        .map(|q| {
            let odd = 2.0 * q as f64 + 1.0;
            (i * x * (odd * PI / nf).sin()).exp() * (-i * odd * PI * (p as f64) / nf).exp()
        })
        .sum::<Complex64>()
        / nf
}

fn real_grid() -> Vec<f64> {
    (0..=80).map(|k| -20.0 + 0.5 * k as f64).collect()
}

#[test]
fn matches_literal_formulas() {
    for n in 1..=12u32 {
        for p in -(n as i64)..(2 * n as i64) {
            for &x in &[-13.1, -1.0, 0.0, 0.3, 4.4, 19.9] {
                let a = theorem1_sum(&SeriesSpec::plain(n as i64, p).unwrap(), re(x));
                let b = literal_plain(n, p, re(x));
                assert!((a - b).norm() <= 1e-13, "plain N={n} p={p} x={x}");
                let a = theorem2_sum(&SeriesSpec::alternating(n as i64, p).unwrap(), re(x));
                let b = literal_alternating(n, p, re(x));
                assert!((a - b).norm() <= 1e-13, "alt N={n} p={p} x={x}");
            }
        }
    }
}

#[test]
fn partition_of_unity() {
    for n in 1..=12i64 {
        for &x in &real_grid() {
            let s: Complex64 = (0..n)
                .map(|p| theorem1_sum(&SeriesSpec::plain(n, p).unwrap(), re(x)))
                .sum();
            assert!((s - re(1.0)).norm() <= 1e-12, "N={n} x={x}");
        }
    }
    let s: Complex64 = (0..12)
        .map(|p| theorem1_sum(&SeriesSpec::plain(12, p).unwrap(), re(17.3)))
        .sum();
    assert!((s - re(1.0)).norm() <= 1e-12);
}

#[test]
fn cross_theorem_split() {
    for n in 1..=12i64 {
        for p in 0..n {
            for &x in &real_grid() {
                let lhs = theorem2_sum(&SeriesSpec::alternating(n, p).unwrap(), re(x));
                let rhs = theorem1_sum(&SeriesSpec::plain(2 * n, p).unwrap(), re(x))
                    - theorem1_sum(&SeriesSpec::plain(2 * n, p + n).unwrap(), re(x));
                assert!((lhs - rhs).norm() <= 1e-12);
            }
        }
    }
    let lhs = theorem2_sum(&SeriesSpec::alternating(3, 2).unwrap(), re(2.2));
    let rhs = theorem1_sum(&SeriesSpec::plain(6, 2).unwrap(), re(2.2))
        - theorem1_sum(&SeriesSpec::plain(6, 5).unwrap(), re(2.2));
    assert!((lhs - rhs).norm() <= 1e-12);
}

#[test]
fn real_argument_gives_real_value() {
    for n in 1..=12i64 {
        for p in 0..n {
            for &x in &real_grid() {
                assert!(
                    theorem1_sum(&SeriesSpec::plain(n, p).unwrap(), re(x))
                        .im
                        .abs()
                        <= 1e-13
                );
                assert!(
                    theorem2_sum(&SeriesSpec::alternating(n, p).unwrap(), re(x))
                        .im
                        .abs()
                        <= 1e-13
                );
            }
        }
    }
    assert!(
        theorem1_sum(&SeriesSpec::plain(5, 4).unwrap(), re(6.6))
            .im
            .abs()
            <= 1e-13
    );
}

#[test]
fn catalog_agrees_on_dense_grid() {
    let mut pts: Vec<Complex64> = real_grid().into_iter().map(re).collect();
    pts.extend([
        Complex64::new(1.0, 1.0),
        Complex64::new(3.0, -2.0),
        Complex64::new(0.5, 0.5),
    ]);
    for e in catalog() {
        for &x in &pts {
            let truth = if e.spec.is_alternating() {
                theorem2_sum(&e.spec, x)
            } else {
                theorem1_sum(&e.spec, x)
            };
            assert!((e.eval(x) - truth).norm() <= 1e-12, "{:?} at {x}", e.spec);
        }
    }
}

#[test]
fn catalog_follows_offset_shifts() {
    // p + N for plain, p + 2N for alternating land on the same row
    for n in 1..=6i64 {
        for p in 0..n {
            let x = re(3.3);
            let a = catalog_eval(&SeriesSpec::plain(n, p).unwrap(), x).unwrap();
            let b = catalog_eval(&SeriesSpec::plain(n, p + 3 * n).unwrap(), x).unwrap();
            assert_eq!(a, b);
            let a = catalog_eval(&SeriesSpec::alternating(n, p).unwrap(), x).unwrap();
            let b = catalog_eval(&SeriesSpec::alternating(n, p + n).unwrap(), x).unwrap();
            assert_eq!(a, -b);
        }
    }
}

proptest! {
    #[test]
    fn sign_shift(n in 1i64..40, p in -100i64..100, x in -25.0f64..25.0, y in -3.0f64..3.0) {
        let z = Complex64::new(x, y);
        let a = theorem2_sum(&SeriesSpec::alternating(n, p + n).unwrap(), z);
        let b = theorem2_sum(&SeriesSpec::alternating(n, p).unwrap(), z);
        prop_assert!((a + b).norm() <= 1e-13 * (1.0 + b.norm().max(1.0) * (y.abs()).exp()));
    }

    // offsets are reduced in integers before any phase is formed, so shifting
    // p by multiples of N is bit-exact
    #[test]
    fn periodicity_exact(n in 1i64..40, p in -1000i64..1000, k in -5i64..5, x in -25.0f64..25.0) {
        let a = theorem1_sum(&SeriesSpec::plain(n, p).unwrap(), re(x));
        let b = theorem1_sum(&SeriesSpec::plain(n, p + k * n).unwrap(), re(x));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn partition_for_random_complex(n in 1i64..13, x in -20.0f64..20.0, y in -2.0f64..2.0) {
        let z = Complex64::new(x, y);
        let s: Complex64 = (0..n).map(|p| theorem1_sum(&SeriesSpec::plain(n, p).unwrap(), z)).sum();
        prop_assert!((s - re(1.0)).norm() <= 1e-12 * y.abs().exp().max(1.0) * 10.0);
    }
}
