//! Numeric evaluation of the asymptotic profile formulas.
//!
//! Everything here is driven by the characteristic polynomial
//! `P(θ) = ∏_{1≤ℓ≤k} (θ − ℓ/k)` and the spectral equation `P(θ) = c·w`
//! with `c = k!/k^k`: the dominant root λ₁(w) lives on the increasing real
//! branch θ > 1, the remaining roots come from deflation, and the
//! coefficient functions h_{j,m}(w), the saddle-point estimate, the
//! Gaussian level approximation, and the height constant α₊ are all
//! explicit in these quantities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gamma, harmonic, harmonic2};

const NEWTON_CAP: usize = 200;
const ROOT_TOL: f64 = 1e-13;

/// `c = k!/k^k = ∏ ℓ/k`, kept in product form so it never overflows.
fn spectral_scale(k: usize) -> f64 {
    (1..=k).map(|l| l as f64 / k as f64).product()
}

/// P(θ) = ∏ (θ − ℓ/k).
fn poly(k: usize, theta: f64) -> f64 {
    (1..=k).map(|l| theta - l as f64 / k as f64).product()
}

/// P'(θ) by the product rule (stable at roots of P − c·w).
fn poly_prime(k: usize, theta: f64) -> f64 {
    let mut sum = 0.0;
    for skip in 1..=k {
        let mut term = 1.0;
        for l in 1..=k {
            if l != skip {
                term *= theta - l as f64 / k as f64;
            }
        }
        sum += term;
    }
    sum
}

/// P''(θ).
fn poly_second(k: usize, theta: f64) -> f64 {
    let mut sum = 0.0;
    for a in 1..=k {
        for b in (a + 1)..=k {
            let mut term = 2.0;
            for l in 1..=k {
                if l != a && l != b {
                    term *= theta - l as f64 / k as f64;
                }
            }
            sum += term;
        }
    }
    sum
}

fn poly_c(k: usize, z: Complex64) -> Complex64 {
    (1..=k)
        .map(|l| z - Complex64::new(l as f64 / k as f64, 0.0))
        .product()
}

fn poly_prime_c(k: usize, z: Complex64) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for skip in 1..=k {
        let mut term = Complex64::new(1.0, 0.0);
        for l in 1..=k {
            if l != skip {
                term *= z - Complex64::new(l as f64 / k as f64, 0.0);
            }
        }
        sum += term;
    }
    sum
}

/// Bisection to a coarse bracket, then Newton polish. `f` must be
/// increasing on the bracket.
fn bisect_newton(
    mut lo: f64,
    mut hi: f64,
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    what: &str,
) -> Result<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::NonConvergence(format!(
            "{what}: no sign change on [{lo}, {hi}]"
        )));
    }
    // Coarse bisection.
    for _ in 0..NEWTON_CAP {
        if hi - lo <= 1e-3 * lo.abs().max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton, clamped to the bracket.
    let mut x = 0.5 * (lo + hi);
    for _ in 0..NEWTON_CAP {
        let fx = f(x);
        if fx <= 0.0 {
            lo = lo.max(x);
        } else {
            hi = hi.min(x);
        }
        let d = df(x);
        let mut next = if d != 0.0 { x - fx / d } else { 0.5 * (lo + hi) };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= ROOT_TOL * x.abs().max(1.0) {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::NonConvergence(format!(
        "{what}: iteration cap reached (x = {x})"
    )))
}

/// The dominant spectral root λ₁(w) on the branch θ > 1.
pub fn lambda1(k: usize, w: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "w must be positive, got {w}"
        )));
    }
    let target = spectral_scale(k) * w;
    let mut hi = 2.0;
    while poly(k, hi) <= target {
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::NonConvergence("lambda1: runaway bracket".into()));
        }
    }
    bisect_newton(
        1.0,
        hi,
        |t| poly(k, t) - target,
        |t| poly_prime(k, t),
        "lambda1",
    )
}

/// The spectral roots of `P(θ) = c·w` with derivatives of the dominant
/// branch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralData {
    pub k: usize,
    pub w: f64,
    /// All k roots, dominant first, then by descending real part.
    pub roots: Vec<Complex64>,
    pub lambda1: f64,
    pub lambda1_prime: f64,
    pub lambda1_second: f64,
    /// max |P(λ_m) − c·w| over the returned roots.
    pub max_residual: f64,
}

impl SpectralData {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}\n",
            self.k, self.w, self.lambda1, self.lambda1_prime, self.lambda1_second
        )
    }

    pub fn csv_header() -> &'static str {
        "k,w,lambda1,lambda1p,lambda1pp\n"
    }
}

/// All spectral roots at `w`, with λ₁ derivatives.
///
/// λ₁ comes from bisection+Newton on the monotone branch; the remaining
/// roots from synthetic deflation and Durand–Kerner iteration, each
/// polished by a couple of Newton steps on the undeflated polynomial.
pub fn lambda_spectrum(k: usize, w: f64) -> Result<SpectralData> {
    let l1 = lambda1(k, w)?;
    let c = spectral_scale(k);
    let target = c * w;

    // Monic coefficients of P(θ) − c·w, low to high.
    let mut coeffs = vec![0.0f64; k + 1];
    coeffs[0] = 1.0;
    let mut deg = 0;
    for l in 1..=k {
        let x = l as f64 / k as f64;
        coeffs[deg + 1] = coeffs[deg];
        for i in (1..=deg).rev() {
            coeffs[i] = coeffs[i - 1] - x * coeffs[i];
        }
        coeffs[0] *= -x;
        deg += 1;
    }
    coeffs[0] -= target;

    // Deflate by (θ − λ₁).
    let mut deflated = vec![0.0f64; k];
    let mut carry = coeffs[k];
    for i in (0..k).rev() {
        deflated[i] = carry;
        carry = coeffs[i] + carry * l1;
    }

    let mut roots = vec![Complex64::new(l1, 0.0)];
    roots.extend(durand_kerner(&deflated[..k - 1], k, target));
    roots[1..].sort_by(|a, b| {
        b.re.partial_cmp(&a.re)
            .unwrap()
            .then(b.im.partial_cmp(&a.im).unwrap())
    });

    // Convergence is judged on the verified results, not on iteration
    // steps: every root must satisfy the spectral equation, and the root
    // sum must match the trace Σ ℓ/k (catches lost or duplicated roots).
    let max_residual = roots
        .iter()
        .map(|&z| (poly_c(k, z) - target).norm())
        .fold(0.0, f64::max);
    if max_residual > 1e-10 * target.abs().max(1.0) {
        return Err(Error::NonConvergence(format!(
            "spectral roots at k={k}, w={w}: residual {max_residual}"
        )));
    }
    let trace: Complex64 = roots.iter().sum();
    let trace_expect = (1..=k).map(|l| l as f64 / k as f64).sum::<f64>();
    if (trace - trace_expect).norm() > 1e-8 * trace_expect.max(1.0) {
        return Err(Error::NonConvergence(format!(
            "spectral roots at k={k}, w={w}: trace {trace} vs {trace_expect}"
        )));
    }

    let p1 = poly_prime(k, l1);
    let lambda1_prime = c / p1;
    let lambda1_second = -poly_second(k, l1) * lambda1_prime * lambda1_prime / p1;

    Ok(SpectralData {
        k,
        w,
        roots,
        lambda1: l1,
        lambda1_prime,
        lambda1_second,
        max_residual,
    })
}

/// Durand–Kerner sweeps on a monic polynomial given by its non-leading
/// coefficients (low to high; the leading 1 is implicit), followed by a
/// Newton polish against the undeflated, product-form spectral equation.
/// Tightly clustered roots make the coefficient form ill-conditioned, so
/// the caller validates the outcome by residual rather than trusting the
/// iteration to settle.
fn durand_kerner(coeffs: &[f64], k_full: usize, target: f64) -> Vec<Complex64> {
    let deg = coeffs.len();
    if deg == 0 {
        return Vec::new();
    }
    let eval = |z: Complex64| -> Complex64 {
        let mut v = Complex64::new(1.0, 0.0);
        for c in coeffs.iter().rev() {
            v = v * z + c;
        }
        v
    };
    let radius = 1.0 + coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|i| seed.powu(i as u32 + 1) * radius)
        .collect();
    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                z[i] += Complex64::new(1e-8, 1e-8);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(z[i]) / denom;
            z[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..8 {
            let f = poly_c(k_full, *zi) - target;
            let d = poly_prime_c(k_full, *zi);
            if d.norm() == 0.0 {
                break;
            }
            let step = f / d;
            *zi -= step;
            if step.norm() < 1e-15 * (1.0 + zi.norm()) {
                break;
            }
        }
        if zi.im.abs() < 1e-12 {
            zi.im = 0.0;
        }
    }
    z
}

/// The coefficient functions h_{j,m}(w) for all j, m = 1..k.
#[derive(Debug, Clone)]
pub struct HCoefficients {
    pub k: usize,
    pub w: f64,
    pub spectrum: SpectralData,
    /// Row-major [j−1][m−1].
    values: Vec<Complex64>,
    /// True when the dominant column was evaluated by the w → 1 limit.
    pub limit_evaluated: bool,
}

impl HCoefficients {
    pub fn value(&self, j: usize, m: usize) -> Complex64 {
        assert!((1..=self.k).contains(&j) && (1..=self.k).contains(&m));
        self.values[(j - 1) * self.k + (m - 1)]
    }

    /// Sum over the spectrum for fixed j (real for real w).
    pub fn row_sum(&self, j: usize) -> Complex64 {
        (1..=self.k).map(|m| self.value(j, m)).sum()
    }

    /// The dominant coefficient h_{j,1}, which is real.
    pub fn dominant(&self, j: usize) -> f64 {
        self.value(j, 1).re
    }
}

/// The boundary value Σ_m h_{j,m}(w) must equal: `(w − (w−1)·[j=k]) / k`.
pub fn h_row_sum_target(k: usize, w: f64, j: usize) -> f64 {
    let kr = k as f64;
    if j == k {
        (w - (w - 1.0)) / kr
    } else {
        w / kr
    }
}

/// Evaluate h_{j,m}(w) for all j, m.
///
/// The dominant column is a 0/0 form at w = 1 — the factor pair (w − 1)
/// and (kλ₁(w) − (k+1)) vanish together — and is evaluated there by a
/// two-point finite-difference limit with step 1e-5.
pub fn h_coefficients(k: usize, w: f64) -> Result<HCoefficients> {
    if k < 2 {
        return Err(Error::InvalidParameter("h coefficients need k >= 2".into()));
    }
    if !(w > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "w must be positive, got {w}"
        )));
    }
    let spectrum = lambda_spectrum(k, w)?;
    // A vanishing P' at a root means two roots collided there.
    for &root in &spectrum.roots {
        let p = poly_prime_c(k, root);
        if p.norm() < 1e-5 {
            return Err(Error::RootCollision(format!(
                "|P'({root})| = {} at w = {w}",
                p.norm()
            )));
        }
    }

    let kr = k as f64;
    let limit_evaluated = (w - 1.0).abs() < 1e-6;
    // Ratio (w − 1)/(kλ₁(w) − (k+1)); at w = 1 both vanish and the ratio
    // tends to 1/(k·λ₁'(1)).
    let dominant_ratio = if limit_evaluated {
        let step = 1e-5;
        let up = lambda1(k, w + step)?;
        let down = lambda1(k, w - step)?;
        2.0 * step / (kr * (up - down))
    } else {
        (w - 1.0) / (kr * spectrum.lambda1 - (kr + 1.0))
    };

    let mut values = vec![Complex64::new(0.0, 0.0); k * k];
    for (m_idx, &lambda) in spectrum.roots.iter().enumerate() {
        let m = m_idx + 1;
        let kl = lambda * kr;
        let s_sum: Complex64 = (1..=k)
            .map(|s| (kl - s as f64).finv())
            .sum();
        let base = (kl - 1.0) * s_sum;
        // ∏_{k−j+1 ≤ s ≤ k+1} (kλ − s), built up as j grows; the dominant
        // column absorbs the (kλ − (k+1)) factor into the ratio above.
        let mut tail = if m == 1 {
            Complex64::new(1.0, 0.0)
        } else {
            kl - (kr + 1.0)
        };
        let mut j_factorial = 1.0;
        for j in 1..=k {
            j_factorial *= j as f64;
            tail *= kl - (kr - j as f64 + 1.0); // s = k − j + 1
            let numerator = if m == 1 {
                Complex64::new(j_factorial * w * dominant_ratio, 0.0)
            } else {
                Complex64::new(j_factorial * w * (w - 1.0), 0.0)
            };
            values[(j - 1) * k + m_idx] = numerator / (base * tail);
        }
    }

    Ok(HCoefficients {
        k,
        w,
        spectrum,
        values,
        limit_evaluated,
    })
}

/// Fixed-level estimate of the expected profile:
/// `Γ(1/k) · j/(k−1) · (log n)^{d−1}/(d−1)! · n^{1−1/k}`.
pub fn asym_fixed_d(k: usize, n: f64, d: usize, j: usize) -> Result<f64> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "fixed-level estimate requires k >= 2".into(),
        ));
    }
    if d < 1 || !(1..=k).contains(&j) {
        return Err(Error::InvalidParameter(format!("bad (d, j) = ({d}, {j})")));
    }
    if !(n > 1.0) {
        return Err(Error::InvalidParameter("n must exceed 1".into()));
    }
    let kr = k as f64;
    let log_n = n.ln();
    let mut log_pow = 1.0;
    for i in 1..d {
        log_pow *= log_n / i as f64;
    }
    Ok(gamma(1.0 / kr) * (j as f64 / (kr - 1.0)) * log_pow * n.powf(1.0 - 1.0 / kr))
}

/// A solved saddle point with the resulting profile estimate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SaddleSolution {
    pub k: usize,
    pub n: f64,
    pub d: f64,
    pub j: usize,
    /// d / log n.
    pub alpha: f64,
    /// Saddle parameter solving ρ·λ₁'(ρ) = α.
    pub rho: f64,
    /// λ₁(ρ).
    pub v: f64,
    pub lambda1_prime: f64,
    pub lambda1_second: f64,
    /// ρλ₁'(ρ) + ρ²λ₁''(ρ).
    pub variance_factor: f64,
    pub h_j1: f64,
    pub estimate: f64,
    /// ρ within 1e-3 of 1: the h factor came from the limit procedure.
    pub limit_evaluated: bool,
}

/// Saddle-point estimate of `E(X_{n;d,j})` for levels of order log n.
///
/// The saddle equation is solved in `v = λ₁(ρ)` via
/// `1/α = Σ_ℓ 1/(v − ℓ/k)` (monotone on v > 1), then `ρ = P(v)·k^k/k!`.
pub fn asym_large_d(k: usize, n: f64, d: f64, j: usize) -> Result<SaddleSolution> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "saddle estimate requires k >= 2".into(),
        ));
    }
    if !(1..=k).contains(&j) {
        return Err(Error::InvalidParameter(format!("bad j = {j}")));
    }
    if !(n > 1.0) {
        return Err(Error::InvalidParameter("n must exceed 1".into()));
    }
    let log_n = n.ln();
    let alpha = d / log_n;
    if !(alpha > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha = d/log n = {alpha} is outside (0, ∞)"
        )));
    }

    let v = solve_saddle_v(k, alpha)?;
    let c = spectral_scale(k);
    let rho = poly(k, v) / c;
    let p1 = poly_prime(k, v);
    let lambda1_prime = c / p1;
    let lambda1_second = -poly_second(k, v) * lambda1_prime * lambda1_prime / p1;
    let variance_factor = rho * lambda1_prime + rho * rho * lambda1_second;
    if !(variance_factor > 0.0) {
        return Err(Error::NonConvergence(format!(
            "nonpositive saddle variance factor {variance_factor}"
        )));
    }

    let h = h_coefficients(k, rho)?;
    let h_j1 = h.dominant(j);
    let kr = k as f64;
    let estimate = gamma(1.0 / kr) * h_j1 * rho.powf(-d) * n.powf(v - 1.0 / kr)
        / (gamma(v) * (2.0 * std::f64::consts::PI * variance_factor * log_n).sqrt());

    Ok(SaddleSolution {
        k,
        n,
        d,
        j,
        alpha,
        rho,
        v,
        lambda1_prime,
        lambda1_second,
        variance_factor,
        h_j1,
        estimate,
        limit_evaluated: (rho - 1.0).abs() < 1e-3,
    })
}

/// Solve `Σ_ℓ 1/(v − ℓ/k) = 1/α` on v > 1.
fn solve_saddle_v(k: usize, alpha: f64) -> Result<f64> {
    let sum = |v: f64| -> f64 { (1..=k).map(|l| 1.0 / (v - l as f64 / k as f64)).sum() };
    let target = 1.0 / alpha;
    let mut lo = 1.0 + 1e-12;
    while sum(lo) < target {
        // alpha extremely small: tighten toward 1.
        lo = 1.0 + (lo - 1.0) * 1e-3;
        if lo - 1.0 < 1e-300 {
            return Err(Error::NonConvergence("saddle bracket underflow".into()));
        }
    }
    let mut hi = lo.max(1.0 + alpha);
    while sum(hi) > target {
        hi = 1.0 + 2.0 * (hi - 1.0);
        if hi > 1e12 {
            return Err(Error::NonConvergence("saddle bracket runaway".into()));
        }
    }
    // sum is decreasing; flip the sign to get an increasing objective.
    bisect_newton(
        lo,
        hi,
        |v| target - sum(v),
        |v| (1..=k).map(|l| (v - l as f64 / k as f64).powi(-2)).sum(),
        "saddle v",
    )
}

/// Gaussian local approximation of the expected level profile at level d.
pub fn llt_gaussian(k: usize, n: f64, d: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if !(n >= 3.0) {
        return Err(Error::InvalidParameter("n must be >= 3".into()));
    }
    let h = harmonic(k);
    let h2 = harmonic2(k);
    let kr = k as f64;
    let sigma2 = h2 / (kr * h * h * h);
    let log_n = n.ln();
    let x = (d - log_n / (kr * h)) / (sigma2 * log_n).sqrt();
    Ok(n * (-x * x / 2.0).exp() / (2.0 * std::f64::consts::PI * sigma2 * log_n).sqrt())
}

/// Center and spread of the Gaussian level profile: (log n/(kH_k), σ²).
pub fn llt_parameters(k: usize, n: f64) -> (f64, f64) {
    let h = harmonic(k);
    let h2 = harmonic2(k);
    let kr = k as f64;
    (n.ln() / (kr * h), h2 / (kr * h * h * h))
}

/// The height constant α₊ with its auxiliary root.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeightConstant {
    pub k: usize,
    pub alpha_plus: f64,
    /// The auxiliary root v of the defining system.
    pub v: f64,
    /// Coefficient of the −log log n correction: α₊ / (2(v − 1/k)).
    pub loglog_coefficient: f64,
}

impl HeightConstant {
    /// Residuals of the two defining equations (diagnostics).
    pub fn residuals(&self) -> (f64, f64) {
        let k = self.k;
        let sum: f64 = (1..=k)
            .map(|l| 1.0 / (self.v - l as f64 / k as f64))
            .sum();
        let r1 = 1.0 / self.alpha_plus - sum;
        let logs: f64 = (1..=k)
            .map(|l| (k as f64 / l as f64 * self.v - 1.0).ln())
            .sum();
        let r2 = self.v - 1.0 / k as f64 - self.alpha_plus * logs;
        (r1, r2)
    }

    /// CSV row; α₊ is truncated (not rounded) to six decimals, matching
    /// the usual table rendering of this constant.
    pub fn csv_row(&self) -> String {
        let truncated = (self.alpha_plus * 1e6).floor() / 1e6;
        format!("{},{:.6},{}\n", self.k, truncated, self.v)
    }

    pub fn csv_header() -> &'static str {
        "k,alpha_plus,v\n"
    }
}

/// Solve the height-constant system.
///
/// α is eliminated via α(v) = 1/Σ_ℓ 1/(v − ℓ/k) and the remaining
/// equation `v − 1/k − α(v)·Σ_ℓ log(kv/ℓ − 1) = 0` is solved on v > 1 by
/// bracketed bisection+Newton (the objective is positive near v = 1 and
/// eventually negative).
pub fn alpha_plus(k: usize) -> Result<HeightConstant> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "height constant requires k >= 2".into(),
        ));
    }
    let kr = k as f64;
    let alpha_of = |v: f64| -> f64 {
        1.0 / (1..=k).map(|l| 1.0 / (v - l as f64 / kr)).sum::<f64>()
    };
    let log_sum = |v: f64| -> f64 { (1..=k).map(|l| (kr / l as f64 * v - 1.0).ln()).sum() };
    let objective = |v: f64| -> f64 { v - 1.0 / kr - alpha_of(v) * log_sum(v) };

    let lo = 1.0 + 1e-9;
    if objective(lo) <= 0.0 {
        return Err(Error::NonConvergence(
            "height constant: unexpected sign near v = 1".into(),
        ));
    }
    let mut hi = 2.0;
    while objective(hi) > 0.0 {
        hi = 1.0 + 2.0 * (hi - 1.0);
        if hi > 1e9 {
            return Err(Error::NonConvergence(
                "height constant: no sign change found".into(),
            ));
        }
    }
    // The objective decreases through the root; negate for bisect_newton.
    let df = |v: f64| -> f64 {
        let eps = 1e-7 * v.abs().max(1.0);
        (objective(v + eps) - objective(v - eps)) / (2.0 * eps)
    };
    let v = bisect_newton(lo, hi, |v| -objective(v), |v| -df(v), "alpha_plus")?;
    let alpha = alpha_of(v);
    Ok(HeightConstant {
        k,
        alpha_plus: alpha,
        v,
        loglog_coefficient: alpha / (2.0 * (v - 1.0 / kr)),
    })
}

/// Leading height bound `α₊·log n − α₊/(2(v−1/k))·log log n` (the O(1)
/// term is dropped).
pub fn height_bound(k: usize, n: f64) -> Result<f64> {
    if !(n >= 3.0) {
        return Err(Error::InvalidParameter("n must be >= 3".into()));
    }
    let hc = alpha_plus(k)?;
    let log_n = n.ln();
    Ok(hc.alpha_plus * log_n - hc.loglog_coefficient * log_n.ln())
}

/// Representative of the width order: the Gaussian profile peak
/// `n / sqrt(2πσ²·log n)`.
pub fn width_order(k: usize, n: f64) -> Result<f64> {
    let (center, _) = llt_parameters(k, n);
    llt_gaussian(k, n, center)
}
