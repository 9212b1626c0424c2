//! Limit laws of the profile counts at bounded depth.
//!
//! After normalizing `X_{n;d,j}` by its mean order
//! `n^{1−1/k}·(log n)^{d−1}/(d−1)!`, the counts converge to limit
//! variables Ξ_{d,j} whose moment generating functions are encoded by
//! series `C_{d,j}(u) = 1 + Σ c_m u^m/m!` solving
//!
//!   (k−1)·u·C'_{d,j}(u) + C_{d,j}(u) = C_{d,j}(u)^{k+1−j} · C_{d,j−1}(u)^j.
//!
//! The influence of the previous depth enters the finite-n system a factor
//! log n below the leading term, so in the limit each depth satisfies the
//! same system with unit boundary `C_{d,0} ≡ 1`; the law at fixed depth is
//! depth-independent. The ODE alone leaves a one-parameter scale freedom
//! in the j = 1 chain (the order-1 equation is vacuous there); it is
//! pinned by the first moment of the normalized count,
//! `c₁ = −j/(k−1)`, which matches the known closed forms.
//!
//! Moments use the magnitude convention
//! `μ_m = Γ(1/k)·|c_m| / Γ(m(1−1/k) + 1/k)`; for k = 2 at depth 1 this is
//! the Rayleigh law with scale √2.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ktree::grow_random;
use crate::profile::connectivity_profile;
use crate::rng::{uniform_index, RngFactory};
use crate::series::{rat, rat_int, Rat, RationalSeries};
use crate::special::gamma;

use num_traits::{Signed, ToPrimitive, Zero};

/// Exact series coefficients of one limit law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitLawSeries {
    pub k: usize,
    pub d: usize,
    pub j: usize,
    /// `c_m` in the `Σ c_m u^m/m!` convention, m = 0..=order.
    pub coeffs: Vec<Rat>,
}

impl LimitLawSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Plain power-series coefficients γ_m = c_m/m!.
    pub fn gamma_series(&self) -> RationalSeries {
        let mut factorial = Rat::from_integer(1.into());
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                if m > 0 {
                    factorial *= rat_int(m as i64);
                }
                c / &factorial
            })
            .collect();
        RationalSeries::from_coeffs(coeffs)
    }

    /// Moments μ_m of the limit variable.
    pub fn moments(&self) -> Vec<f64> {
        let kr = self.k as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| {
                let c_abs = c.abs().to_f64().unwrap_or(f64::NAN);
                gamma(1.0 / kr) * c_abs / gamma(m as f64 * (1.0 - 1.0 / kr) + 1.0 / kr)
            })
            .collect()
    }

    /// CSV rows `k,d,j,m,c_m(numerator),c_m(denominator),moment`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,d,j,m,c_m(numerator),c_m(denominator),moment\n");
        for (m, (c, mu)) in self.coeffs.iter().zip(self.moments()).enumerate() {
            s.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                self.k,
                self.d,
                self.j,
                m,
                c.numer(),
                c.denom(),
                mu
            ));
        }
        s
    }
}

/// Solve the j-chain of limit series at one depth with the given boundary,
/// returning the series for j = 1..=k as plain power series.
fn solve_chain(k: usize, boundary: &RationalSeries, order: usize) -> Result<Vec<RationalSeries>> {
    let mut chain: Vec<RationalSeries> = Vec::with_capacity(k);
    for j in 1..=k {
        let prev = if j == 1 { boundary } else { &chain[j - 2] };
        let prev_pow = prev.pow(j);
        let mut c = RationalSeries::one(order);
        for m in 1..=order {
            // Order-m coefficient of C^{k+1−j}·prev^j with the unknown
            // γ_m still zeroed inside C; the unknown contributes
            // (k+1−j)·γ_m on top of this.
            let rhs_known = c.pow(k + 1 - j).mul(&prev_pow).coeff(m).clone();
            let denom = rat_int(((k - 1) * m) as i64 + j as i64 - k as i64);
            if denom.is_zero() {
                // Only the (j = 1, m = 1) order is degenerate: the ODE is
                // vacuous there and the scale comes from the mean of the
                // normalized count.
                if !rhs_known.is_zero() {
                    return Err(Error::Unsupported(format!(
                        "limit chain inconsistent at j={j}, m={m}: residual {rhs_known}"
                    )));
                }
                c.set_coeff(m, rat(-1, k as i64 - 1));
            } else {
                c.set_coeff(m, rhs_known / denom);
            }
        }
        chain.push(c);
    }
    Ok(chain)
}

/// The boundary series a depth-d chain couples to (unit for every depth).
pub fn chain_boundary(order: usize) -> RationalSeries {
    RationalSeries::one(order)
}

/// Exact series of the limit law of the normalized count at depth `d`
/// against the first-`j` root set.
pub fn limit_law_series(k: usize, d: usize, j: usize, order: usize) -> Result<LimitLawSeries> {
    if k < 2 {
        return Err(Error::InvalidParameter("limit laws require k >= 2".into()));
    }
    if d < 1 {
        return Err(Error::InvalidParameter("d must be >= 1".into()));
    }
    if !(1..=k).contains(&j) {
        return Err(Error::InvalidParameter(format!("j = {j} outside 1..=k")));
    }
    let chain = solve_chain(k, &chain_boundary(order), order)?;
    let gamma_series = &chain[j - 1];
    let mut factorial = Rat::from_integer(1.into());
    let coeffs = gamma_series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, g)| {
            if m > 0 {
                factorial *= rat_int(m as i64);
            }
            g * &factorial
        })
        .collect();
    Ok(LimitLawSeries { k, d, j, coeffs })
}

/// Residual of the defining ODE for a computed series: the series of
/// `(k−1)uC' + C − C^{k+1−j}·B^j`, which must vanish identically.
pub fn ode_residual(
    k: usize,
    j: usize,
    series: &LimitLawSeries,
    boundary: &RationalSeries,
) -> RationalSeries {
    let c = series.gamma_series();
    let order = c.order();
    let mut lhs = RationalSeries::zeros(order);
    for m in 0..=order {
        // (k−1)·m·γ_m + γ_m
        lhs.set_coeff(
            m,
            c.coeff(m) * rat_int(((k - 1) * m) as i64 + 1),
        );
    }
    let rhs = c.pow(k + 1 - j).mul(&boundary.pow(j));
    lhs.sub(&rhs)
}

/// Closed-form oracles, expanded to `order`.
///
/// Available for (d, j) = (1, 1) at any k ≥ 2, and (1, 2) at k ∈ {2, 3};
/// `Ok(None)` means no closed form is known for the requested pair.
pub fn closed_form_reference(
    k: usize,
    d: usize,
    j: usize,
    order: usize,
) -> Result<Option<LimitLawSeries>> {
    if k < 2 {
        return Err(Error::InvalidParameter("limit laws require k >= 2".into()));
    }
    let gamma_series = match (d, j) {
        (1, 1) => {
            // (1 + u)^{−1/(k−1)}
            RationalSeries::binomial_power(&rat(-1, k as i64 - 1), &rat_int(-1), order)
        }
        (1, 2) if k == 2 => {
            // e^{−u/(1+u)} / (1 + u)
            let mut a = RationalSeries::zeros(order);
            for m in 1..=order {
                a.set_coeff(m, if m % 2 == 0 { rat_int(1) } else { rat_int(-1) });
            }
            let inv = RationalSeries::binomial_power(&rat_int(-1), &rat_int(-1), order);
            a.exp().mul(&inv)
        }
        (1, 2) if k == 3 => {
            // 1 / (1 + √u·arctan √u); √u·arctan √u = Σ (−1)^i u^{i+1}/(2i+1).
            let mut denom = RationalSeries::one(order);
            for i in 0..order {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                denom.set_coeff(i + 1, rat(sign, 2 * i as i64 + 1));
            }
            denom.recip()
        }
        _ => return Ok(None),
    };
    let mut factorial = Rat::from_integer(1.into());
    let coeffs = gamma_series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, g)| {
            if m > 0 {
                factorial *= rat_int(m as i64);
            }
            g * &factorial
        })
        .collect();
    Ok(Some(LimitLawSeries { k, d, j, coeffs }))
}

/// Moments of the limit variable at (k, d, j).
pub fn limit_moments(k: usize, d: usize, j: usize, order: usize) -> Result<Vec<f64>> {
    Ok(limit_law_series(k, d, j, order)?.moments())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitCheckConfig {
    pub k: usize,
    pub d: usize,
    pub j: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub threads: usize,
}

/// Monte Carlo comparison of the normalized count against its limit law.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitCheckReport {
    pub k: usize,
    pub d: usize,
    pub j: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// `n^{1−1/k}·(log n)^{d−1}/(d−1)!`.
    pub normalizer: f64,
    /// Empirical E(stat^m), m = 1..3.
    pub empirical_moments: [f64; 3],
    pub empirical_stderr: [f64; 3],
    /// Limit moments μ_1..μ_3.
    pub limit_moments: [f64; 3],
    /// Kolmogorov–Smirnov distance against the Rayleigh(√2) law
    /// (k = 2, d = 1, j = 1 only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rayleigh_ks: Option<f64>,
}

/// Count added vertices attached to a clique containing the root vertex,
/// drawing choices exactly as tree growth does. The per-clique state is a
/// single byte (position of vertex 1, if present), so a trial runs in
/// O(n) time and O(nk) bytes.
pub fn sample_root_adjacent_count<R: rand_core::RngCore>(
    k: usize,
    n: usize,
    rng: &mut R,
) -> u64 {
    const ABSENT: u8 = u8::MAX;
    let mut pos1: Vec<u8> = Vec::with_capacity(n * k + 1);
    pos1.push(0); // vertex 1 sits at position 0 of the root clique
    let mut count = 0u64;
    for step in 0..n {
        let registry = (k * step + 1) as u64;
        let choice = uniform_index(rng, registry) as usize;
        let p = pos1[choice];
        if p != ABSENT {
            count += 1;
        }
        for pos in (0..k as u8).rev() {
            pos1.push(if p == ABSENT || pos == p { ABSENT } else { p });
        }
    }
    count
}

/// Sample the normalized profile statistic and compare its first three
/// moments (and, for the Rayleigh case, its whole distribution) with the
/// limit law.
pub fn empirical_limit_check(cfg: &LimitCheckConfig) -> Result<LimitCheckReport> {
    if cfg.trials < 1_000 {
        return Err(Error::InvalidParameter(
            "the empirical check needs trials >= 1000".into(),
        ));
    }
    let series = limit_law_series(cfg.k, cfg.d, cfg.j, 3)?;
    let mu = series.moments();

    let factory = RngFactory::new(cfg.seed);
    let draw = |trial: u64| -> Result<u64> {
        let mut rng = factory.stream(trial);
        if cfg.d == 1 && cfg.j == 1 {
            Ok(sample_root_adjacent_count(cfg.k, cfg.n, &mut rng))
        } else {
            let tree = grow_random(cfg.k, cfg.n, &mut rng)?;
            Ok(connectivity_profile(&tree).count(cfg.d, cfg.j))
        }
    };
    let counts: Result<Vec<u64>> = if cfg.threads > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| (0..cfg.trials).into_par_iter().map(draw).collect())
    } else {
        (0..cfg.trials).into_par_iter().map(draw).collect()
    };
    let counts = counts?;

    let kr = cfg.k as f64;
    let log_n = (cfg.n as f64).ln();
    let mut normalizer = (cfg.n as f64).powf(1.0 - 1.0 / kr);
    for i in 1..cfg.d {
        normalizer *= log_n / i as f64;
    }

    let trials = cfg.trials as f64;
    let mut sums = [0.0f64; 3];
    let mut sq_sums = [0.0f64; 3];
    for &c in &counts {
        let x = c as f64 / normalizer;
        let mut p = 1.0;
        for m in 0..3 {
            p *= x;
            sums[m] += p;
            sq_sums[m] += p * p;
        }
    }
    let mut empirical = [0.0f64; 3];
    let mut stderr = [0.0f64; 3];
    for m in 0..3 {
        empirical[m] = sums[m] / trials;
        let var = (sq_sums[m] / trials - empirical[m] * empirical[m]).max(0.0);
        stderr[m] = (var / trials).sqrt();
    }

    let rayleigh_ks = (cfg.k == 2 && cfg.d == 1 && cfg.j == 1).then(|| {
        let mut xs: Vec<f64> = counts.iter().map(|&c| c as f64 / normalizer).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = xs.len() as f64;
        let mut ks: f64 = 0.0;
        for (i, &x) in xs.iter().enumerate() {
            let cdf = 1.0 - (-x * x / 4.0).exp();
            let lo = i as f64 / n;
            let hi = (i + 1) as f64 / n;
            ks = ks.max((cdf - lo).abs()).max((hi - cdf).abs());
        }
        ks
    });

    Ok(LimitCheckReport {
        k: cfg.k,
        d: cfg.d,
        j: cfg.j,
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        normalizer,
        empirical_moments: empirical,
        empirical_stderr: stderr,
        limit_moments: [mu[1], mu[2], mu[3]],
        rayleigh_ks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ktree::grow_random;
    use crate::profile::connectivity_profile;
    use crate::rng::RngFactory;

    #[test]
    fn depth_one_series_match_binomial_closed_form() {
        // C_{1,1} = (1+u)^{−1/(k−1)}: for k=3, c1 = −1/2, c2 = 3/4.
        let s = limit_law_series(3, 1, 1, 6).unwrap();
        assert_eq!(s.coeffs[0], rat_int(1));
        assert_eq!(s.coeffs[1], rat(-1, 2));
        assert_eq!(s.coeffs[2], rat(3, 4));
        for k in 2..=5 {
            let s = limit_law_series(k, 1, 1, 12).unwrap();
            let oracle = closed_form_reference(k, 1, 1, 12).unwrap().unwrap();
            assert_eq!(s.coeffs, oracle.coeffs, "k={k}");
        }
    }

    #[test]
    fn depth_one_j2_series_match_their_closed_forms() {
        // k=3: 1/(1+√u·arctan√u): c1 = −1, c2 = 8/3.
        let s = limit_law_series(3, 1, 2, 10).unwrap();
        assert_eq!(s.coeffs[1], rat_int(-1));
        assert_eq!(s.coeffs[2], rat(8, 3));
        let oracle = closed_form_reference(3, 1, 2, 10).unwrap().unwrap();
        assert_eq!(s.coeffs, oracle.coeffs);

        // k=2: e^{−u/(1+u)}/(1+u): c1 = −2, c2 = 7, c3 = −34.
        let s = limit_law_series(2, 1, 2, 10).unwrap();
        assert_eq!(s.coeffs[1], rat_int(-2));
        assert_eq!(s.coeffs[2], rat_int(7));
        assert_eq!(s.coeffs[3], rat_int(-34));
        let oracle = closed_form_reference(2, 1, 2, 10).unwrap().unwrap();
        assert_eq!(s.coeffs, oracle.coeffs);
    }

    #[test]
    fn no_closed_form_cases_are_explicit() {
        assert!(closed_form_reference(4, 1, 2, 5).unwrap().is_none());
        assert!(closed_form_reference(2, 2, 1, 5).unwrap().is_none());
        assert!(closed_form_reference(3, 1, 3, 5).unwrap().is_none());
    }

    #[test]
    fn ode_residual_vanishes_identically() {
        let order = 20;
        for k in 2..=5usize {
            let boundary = chain_boundary(order);
            for d in 1..=3usize {
                let mut prev = boundary.clone();
                for j in 1..=k {
                    let s = limit_law_series(k, d, j, order).unwrap();
                    let res = ode_residual(k, j, &s, &prev);
                    assert!(res.is_zero(), "residual nonzero at k={k} d={d} j={j}");
                    prev = s.gamma_series();
                }
            }
        }
    }

    #[test]
    fn first_moment_matches_the_mean_scaling() {
        for k in 2..=5usize {
            for j in 1..=k {
                let mu = limit_moments(k, 1, j, 3).unwrap();
                let expect = gamma(1.0 / k as f64) * j as f64 / (k as f64 - 1.0);
                assert!(
                    (mu[1] - expect).abs() < 1e-12 * expect,
                    "k={k} j={j}: {} vs {expect}",
                    mu[1]
                );
            }
        }
    }

    #[test]
    fn rayleigh_moments_for_k2() {
        let mu = limit_moments(2, 1, 1, 4).unwrap();
        assert!((mu[0] - 1.0).abs() < 1e-14);
        assert!((mu[1] - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!((mu[2] - 4.0).abs() < 1e-12);
        // Second-moment ratio of the Rayleigh law.
        let ratio = mu[2] / (mu[1] * mu[1]);
        assert!((ratio - 4.0 / std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn moments_are_positive_and_log_convex() {
        for k in 2..=4usize {
            for j in 1..=k {
                let mu = limit_moments(k, 1, j, 8).unwrap();
                assert!(mu.iter().all(|&m| m > 0.0));
                for m in 1..mu.len() - 1 {
                    assert!(
                        mu[m] * mu[m] <= mu[m - 1] * mu[m + 1] * (1.0 + 1e-12),
                        "k={k} j={j} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn coefficient_signs_alternate() {
        for k in 2..=4usize {
            for j in 1..=k {
                let s = limit_law_series(k, 1, j, 12).unwrap();
                for (m, c) in s.coeffs.iter().enumerate() {
                    if m % 2 == 0 {
                        assert!(!c.is_negative(), "k={k} j={j} m={m}: {c}");
                    } else {
                        assert!(!c.is_positive(), "k={k} j={j} m={m}: {c}");
                    }
                }
            }
        }
    }

    #[test]
    fn fast_root_adjacency_path_equals_the_profile_count() {
        let factory = RngFactory::new(31415);
        for k in [2usize, 3] {
            for trial in 0..30u64 {
                let mut rng_a = factory.stream(trial);
                let mut rng_b = factory.stream(trial);
                let fast = sample_root_adjacent_count(k, 400, &mut rng_a);
                let tree = grow_random(k, 400, &mut rng_b).unwrap();
                let slow = connectivity_profile(&tree).count(1, 1);
                assert_eq!(fast, slow, "k={k} trial={trial}");
            }
        }
    }

    #[test]
    fn empirical_check_small_run() {
        let cfg = LimitCheckConfig {
            k: 2,
            d: 1,
            j: 1,
            n: 20_000,
            trials: 2_000,
            seed: 11,
            threads: 0,
        };
        let report = empirical_limit_check(&cfg).unwrap();
        // Generous bounds at this size; the acceptance suite runs the
        // tight version.
        assert!((report.empirical_moments[0] - report.limit_moments[0]).abs()
            < 0.10 * report.limit_moments[0]);
        assert!((report.empirical_moments[1] - report.limit_moments[1]).abs()
            < 0.15 * report.limit_moments[1]);
        assert!(report.rayleigh_ks.unwrap() < 0.08);

        let bad = LimitCheckConfig { trials: 10, ..cfg };
        assert!(empirical_limit_check(&bad).is_err());
    }

    #[test]
    fn csv_rows_carry_exact_fractions() {
        let s = limit_law_series(3, 1, 2, 3).unwrap();
        let csv = s.to_csv();
        assert!(csv.starts_with("k,d,j,m,c_m(numerator),c_m(denominator),moment\n"));
        assert!(csv.contains("3,1,2,2,8,3,"));
    }
}
