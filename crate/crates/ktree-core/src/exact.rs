//! Exact expected connectivity profiles and the exact root-degree law.
//!
//! Expectations satisfy a first-order recurrence in the tree size that
//! couples the root-set sizes `j` in a chain and the levels `d` through
//! the chain boundary:
//!
//!   E[d][j][n+1] = ((kn+k−j+1)·E[d][j][n] + j·E[d][j−1][n] + [d = 1]) / (kn+1)
//!
//! with E[d][0][·] = E[d−1][k][·] and E[0][k][·] ≡ 0. The same recurrence
//! runs in exact rationals (small n, used as the oracle tier) and in
//! floating point (n up to 10⁷; magnitudes stay polynomial because the
//! normalizing scale is folded in at every step).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ktree::count_ktrees;
use crate::series::{rat_int, Rat, RationalSeries};

/// `t_n = [z^n] (1−z)^{−1/k}`, the normalized tree-count coefficient.
pub fn tcoeff(k: usize, n: usize) -> Result<Rat> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let inv_k = Rat::new(BigInt::one(), BigInt::from(k));
    let mut t = Rat::one();
    for i in 0..n {
        t = t * (rat_int(i as i64) + &inv_k) / rat_int(i as i64 + 1);
    }
    Ok(t)
}

/// `r_n = n!·k^n / T_n = 1 / t_n`, the expectation scale factor.
pub fn scale_factor(k: usize, n: usize) -> Result<Rat> {
    Ok(tcoeff(k, n)?.recip())
}

/// Exact mean count at distance 1 from the root vertex:
/// `r_n · (1 − t_n) / (k − 1)`.
pub fn expected_d1_closed_form(k: usize, n: usize) -> Result<Rat> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "closed form requires k >= 2".into(),
        ));
    }
    let t = tcoeff(k, n)?;
    Ok((Rat::one() - &t) / t / rat_int(k as i64 - 1))
}

/// Exact rational table of `E(X_{n;d,j})` for `n ≤ n_max`, `d ≤ d_max`.
#[derive(Debug, Clone)]
pub struct ExpectedProfileTable {
    k: usize,
    n_max: usize,
    d_max: usize,
    /// Flat layout: ((d−1)·k + (j−1))·(n_max+1) + n.
    values: Vec<Rat>,
}

impl ExpectedProfileTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// Exact `E(X_{n;d,j})`.
    pub fn expectation(&self, d: usize, j: usize, n: usize) -> &Rat {
        assert!((1..=self.d_max).contains(&d));
        assert!((1..=self.k).contains(&j));
        assert!(n <= self.n_max);
        &self.values[((d - 1) * self.k + (j - 1)) * (self.n_max + 1) + n]
    }

    /// Series coefficient `m[d][j][n]` of the underlying generating
    /// function (the expectation with the scale factor removed).
    pub fn m_coeff(&self, d: usize, j: usize, n: usize) -> Result<Rat> {
        Ok(self.expectation(d, j, n) * tcoeff(self.k, n)?)
    }

    /// The scale factor `r_n` linking `m` to expectations.
    pub fn scale_factor(&self, n: usize) -> Result<Rat> {
        scale_factor(self.k, n)
    }

    /// Sum of a level column: Σ_d E[d][j][n] (equals n exactly).
    pub fn level_mass(&self, j: usize, n: usize) -> Rat {
        (1..=self.d_max)
            .map(|d| self.expectation(d, j, n).clone())
            .sum()
    }

    /// CSV rows `k,n,d,j,expectation`.
    pub fn to_csv(&self, style: NumberStyle) -> String {
        let mut s = String::from("k,n,d,j,expectation\n");
        for n in 0..=self.n_max {
            for d in 1..=self.d_max {
                for j in 1..=self.k {
                    let e = self.expectation(d, j, n);
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        self.k,
                        n,
                        d,
                        j,
                        style.render(e)
                    ));
                }
            }
        }
        s
    }
}

/// Rendering for exact rationals in CSV output.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberStyle {
    /// `p/q`
    Rational,
    /// Decimal via f64.
    Decimal,
}

impl NumberStyle {
    pub fn render(&self, v: &Rat) -> String {
        match self {
            NumberStyle::Rational => format!("{v}"),
            NumberStyle::Decimal => format!("{}", v.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

/// Build the exact rational expectation table.
///
/// `k = 1` is allowed: the chain degenerates to `j = 1` with the level
/// boundary `E[d][0] = E[d−1][1]`.
pub fn expected_profile_exact(
    k: usize,
    n_max: usize,
    d_max: usize,
    max_cells: u64,
) -> Result<ExpectedProfileTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if d_max == 0 {
        return Err(Error::InvalidParameter("d_max must be >= 1".into()));
    }
    let cells = (d_max as u64) * (k as u64) * (n_max as u64 + 1);
    if cells > max_cells {
        return Err(Error::GuardExceeded(format!(
            "{cells} exact table cells exceed max_cells = {max_cells}"
        )));
    }

    let width = n_max + 1;
    let mut values = vec![Rat::zero(); d_max * k * width];
    let idx = |d: usize, j: usize, n: usize| ((d - 1) * k + (j - 1)) * width + n;

    for n in 0..n_max {
        let carry_num = rat_int((k * n) as i64 + 1); // kn + 1
        for d in 1..=d_max {
            for j in 1..=k {
                let prev = &values[idx(d, j, n)];
                let chain = if j == 1 {
                    if d == 1 {
                        Rat::zero()
                    } else {
                        values[idx(d - 1, k, n)].clone()
                    }
                } else {
                    values[idx(d, j - 1, n)].clone()
                };
                let mut num = rat_int((k * n + k - j + 1) as i64) * prev
                    + rat_int(j as i64) * chain;
                if d == 1 {
                    num += Rat::one();
                }
                values[idx(d, j, n + 1)] = num / &carry_num;
            }
        }
    }

    Ok(ExpectedProfileTable {
        k,
        n_max,
        d_max,
        values,
    })
}

/// Float expectation table recorded at checkpoint sizes only (streaming
/// over n keeps memory flat even at n = 10⁷).
#[derive(Debug, Clone)]
pub struct FloatProfileTable {
    k: usize,
    d_max: usize,
    checkpoints: Vec<usize>,
    /// Per checkpoint: d_max × k values.
    values: Vec<Vec<f64>>,
}

impl FloatProfileTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d_max(&self) -> usize {
        self.d_max
    }

    pub fn checkpoints(&self) -> &[usize] {
        &self.checkpoints
    }

    /// `E(X_{n;d,j})` at a recorded checkpoint `n`.
    pub fn expectation(&self, d: usize, j: usize, n: usize) -> Result<f64> {
        let slot = self
            .checkpoints
            .iter()
            .position(|&c| c == n)
            .ok_or_else(|| Error::InvalidParameter(format!("n = {n} was not recorded")))?;
        assert!((1..=self.d_max).contains(&d));
        assert!((1..=self.k).contains(&j));
        Ok(self.values[slot][(d - 1) * self.k + (j - 1)])
    }

    /// The full level profile at checkpoint `n` for root-set size `j`.
    pub fn level_profile(&self, j: usize, n: usize) -> Result<Vec<f64>> {
        (1..=self.d_max)
            .map(|d| self.expectation(d, j, n))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("k,n,d,j,expectation\n");
        for (slot, &n) in self.checkpoints.iter().enumerate() {
            for d in 1..=self.d_max {
                for j in 1..=self.k {
                    s.push_str(&format!(
                        "{},{},{},{},{}\n",
                        self.k,
                        n,
                        d,
                        j,
                        self.values[slot][(d - 1) * self.k + (j - 1)]
                    ));
                }
            }
        }
        s
    }
}

/// Run the expectation recurrence in f64 up to the largest checkpoint.
pub fn expected_profile_float(
    k: usize,
    checkpoints: &[usize],
    d_max: usize,
) -> Result<FloatProfileTable> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    if d_max == 0 {
        return Err(Error::InvalidParameter("d_max must be >= 1".into()));
    }
    if checkpoints.is_empty() {
        return Err(Error::InvalidParameter("no checkpoints requested".into()));
    }
    let mut sorted: Vec<usize> = checkpoints.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let n_top = *sorted.last().expect("nonempty");

    let cells = d_max * k;
    let idx = |d: usize, j: usize| (d - 1) * k + (j - 1);
    let mut layer = vec![0.0f64; cells];
    let mut next = vec![0.0f64; cells];
    let mut values = Vec::with_capacity(sorted.len());
    let mut pending = sorted.iter().peekable();

    for n in 0..=n_top {
        if pending.peek() == Some(&&n) {
            values.push(layer.clone());
            pending.next();
        }
        if n == n_top {
            break;
        }
        let denom = (k * n + 1) as f64;
        for d in 1..=d_max {
            for j in 1..=k {
                let chain = if j == 1 {
                    if d == 1 {
                        0.0
                    } else {
                        layer[idx(d - 1, k)]
                    }
                } else {
                    layer[idx(d, j - 1)]
                };
                let mut num =
                    ((k * n + k - j + 1) as f64) * layer[idx(d, j)] + (j as f64) * chain;
                if d == 1 {
                    num += 1.0;
                }
                next[idx(d, j)] = num / denom;
            }
        }
        std::mem::swap(&mut layer, &mut next);
    }

    Ok(FloatProfileTable {
        k,
        d_max,
        checkpoints: sorted,
        values,
    })
}

/// Exact root-degree law: probabilities of `ℓ` added vertices adjacent to
/// the root vertex, `ℓ = 0..n`.
pub fn root_degree_pmf(k: usize, n: usize) -> Result<Vec<Rat>> {
    Ok(root_degree_pmf_upto(k, n)?.pop().expect("n-th row"))
}

/// Root-degree laws for every size up to `n_max` in one pass.
///
/// Row `n` holds `P(X_{n;1,1} = ℓ)` for `ℓ = 0..n`, computed from the
/// bivariate closed form: the coefficient extraction reduces to powers of
/// `g(z) = 1 − (1−kz)^{1−1/k}` weighted by a negative-binomial factor.
pub fn root_degree_pmf_upto(k: usize, n_max: usize) -> Result<Vec<Vec<Rat>>> {
    if k < 2 {
        return Err(Error::InvalidParameter(
            "the root-degree law requires k >= 2".into(),
        ));
    }
    let alpha = Rat::new(BigInt::from(k as i64 - 1), BigInt::from(k as i64));
    let g = RationalSeries::one(n_max)
        .sub(&RationalSeries::binomial_power(&alpha, &rat_int(k as i64), n_max));

    // coeff_of_power[l][n] = [z^n] g(z)^l  (zero for n < l).
    let mut coeff_of_power: Vec<Vec<Rat>> = Vec::with_capacity(n_max + 1);
    let mut power = RationalSeries::one(n_max);
    coeff_of_power.push(power.coeffs().to_vec());
    for _ in 1..=n_max {
        power = power.mul(&g);
        coeff_of_power.push(power.coeffs().to_vec());
    }

    // Negative-binomial weights C(1/(k−1)+l−1, l).
    let beta = Rat::new(BigInt::one(), BigInt::from(k as i64 - 1));
    let mut weights = Vec::with_capacity(n_max + 1);
    let mut w = Rat::one();
    weights.push(w.clone());
    for l in 1..=n_max {
        w = w * (&beta + rat_int(l as i64 - 1)) / rat_int(l as i64);
        weights.push(w.clone());
    }

    let mut rows = Vec::with_capacity(n_max + 1);
    let mut factorial = Rat::one();
    for n in 0..=n_max {
        if n > 0 {
            factorial *= rat_int(n as i64);
        }
        let t_n = BigRational::from(BigInt::from(count_ktrees(k, n)?));
        let scale = &factorial / t_n;
        let row: Vec<Rat> = (0..=n)
            .map(|l| &weights[l] * &coeff_of_power[l][n] * &scale)
            .collect();
        rows.push(row);
    }
    Ok(rows)
}

/// Mean of a PMF row.
pub fn pmf_mean(pmf: &[Rat]) -> Rat {
    pmf.iter()
        .enumerate()
        .map(|(l, p)| rat_int(l as i64) * p)
        .sum()
}
