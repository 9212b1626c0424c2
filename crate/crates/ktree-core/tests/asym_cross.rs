//! Cross-checks between the spectral machinery and the exact coefficient
//! recurrence: the spectral decomposition with coefficients h_{j,m}(w)
//! must regenerate the level-weighted expectation series coefficient by
//! coefficient, and the fixed-level estimate must approach the exact
//! values from above as n grows.

use num_complex::Complex64;
use num_traits::ToPrimitive;

use ktree_core::asym::{asym_fixed_d, h_coefficients, h_row_sum_target};
use ktree_core::exact::{expected_profile_exact, expected_profile_float, tcoeff};

/// [z^n](1−z)^{−λ} for n = 0..=order.
fn power_coefficients(lambda: Complex64, order: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(order + 1);
    let mut c = Complex64::new(1.0, 0.0);
    out.push(c);
    for i in 0..order {
        c = c * (lambda + i as f64) / (i as f64 + 1.0);
        out.push(c);
    }
    out
}

#[test]
fn spectral_decomposition_regenerates_the_expectation_series() {
    let order = 30;
    let table_guard = 1 << 24;
    for k in [2usize, 3] {
        let w = 0.5;
        let h = h_coefficients(k, w).unwrap();
        let table = expected_profile_exact(k, order, order + 2, table_guard).unwrap();
        let coeff_tables: Vec<Vec<Complex64>> = h
            .spectrum
            .roots
            .iter()
            .map(|&l| power_coefficients(l, order))
            .collect();

        for j in 1..=k {
            let subtract = h_row_sum_target(k, w, j);
            for n in 0..=order {
                let mut lhs = Complex64::new(0.0, 0.0);
                for m in 1..=k {
                    lhs += h.value(j, m) * coeff_tables[m - 1][n];
                }
                let t_n = tcoeff(k, n).unwrap().to_f64().unwrap();
                let lhs = lhs - subtract * t_n;

                let mut rhs = 0.0f64;
                let mut w_pow = 1.0;
                for d in 1..=n + 1 {
                    w_pow *= w;
                    rhs += table.m_coeff(d, j, n).unwrap().to_f64().unwrap() * w_pow;
                }
                assert!(
                    (lhs.re - rhs).abs() <= 1e-8 * rhs.abs().max(1.0),
                    "k={k} j={j} n={n}: {} vs {rhs}",
                    lhs.re
                );
                assert!(lhs.im.abs() < 1e-9, "k={k} j={j} n={n}: imag {}", lhs.im);
            }
        }
    }
}

#[test]
fn fixed_level_estimate_approaches_exact_from_above() {
    // k=2, d=1, j=1: exact/asym = (1 − t_n)·r_n/sqrt(πn) < 1, increasing.
    let table = expected_profile_float(2, &[100, 10_000, 1_000_000], 4).unwrap();
    let mut last_ratio = 0.0;
    for &n in &[100usize, 10_000, 1_000_000] {
        let exact = table.expectation(1, 1, n).unwrap();
        let asym = asym_fixed_d(2, n as f64, 1, 1).unwrap();
        let ratio = exact / asym;
        assert!(ratio < 1.0, "n={n}: ratio {ratio}");
        assert!(ratio > last_ratio, "n={n}: ratio not increasing");
        last_ratio = ratio;
    }
    assert!(last_ratio > 0.97);
}

#[test]
fn deeper_levels_converge_toward_the_fixed_level_estimate() {
    let table = expected_profile_float(2, &[10_000, 1_000_000], 6).unwrap();
    for d in [2usize, 3] {
        let r_small = table.expectation(d, 1, 10_000).unwrap()
            / asym_fixed_d(2, 1e4, d, 1).unwrap();
        let r_large = table.expectation(d, 1, 1_000_000).unwrap()
            / asym_fixed_d(2, 1e6, d, 1).unwrap();
        assert!(
            (r_large - 1.0).abs() < (r_small - 1.0).abs(),
            "d={d}: {r_small} -> {r_large}"
        );
    }
}
