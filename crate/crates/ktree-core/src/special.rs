//! Gamma function (Lanczos approximation, ~15 significant digits).
//!
//! Only positive real arguments in a modest range are needed here:
//! Γ(1/k), Γ(λ₁(ρ)) and the Γ(m(1−1/k) + 1/k) moment denominators.

const LANCZOS_G: f64 = 10.900511;

const LANCZOS_COEFFS: [f64; 11] = [
    2.4857408913875355e-5,
    1.0514237858172197,
    -3.4568709722201625,
    4.512277094668948,
    -2.9828522532357664,
    1.056397115771267,
    -1.9542877319164587e-1,
    1.709705434044412e-2,
    -5.719261174043057e-4,
    4.633994733599057e-6,
    -2.7199490848860772e-9,
];

const TWO_SQRT_E_OVER_PI: f64 = 1.8603827342052657;

/// Γ(x) for real x (poles at nonpositive integers return ±∞/NaN as the
/// arithmetic dictates; callers here stay on x > 0).
pub fn gamma(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection.
        let s: f64 = LANCZOS_COEFFS
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (i as f64 - x));
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin()
                * s
                * TWO_SQRT_E_OVER_PI
                * ((0.5 - x + LANCZOS_G) / std::f64::consts::E).powf(0.5 - x))
    } else {
        let s: f64 = LANCZOS_COEFFS
            .iter()
            .enumerate()
            .skip(1)
            .fold(LANCZOS_COEFFS[0], |acc, (i, c)| acc + c / (x + i as f64 - 1.0));
        s * TWO_SQRT_E_OVER_PI * ((x - 0.5 + LANCZOS_G) / std::f64::consts::E).powf(x - 0.5)
    }
}

/// n-th harmonic number.
pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}

/// Second-order harmonic number Σ 1/i².
pub fn harmonic2(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / (i as f64 * i as f64)).sum()
}
