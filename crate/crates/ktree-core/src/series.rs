//! Truncated formal power series with exact rational coefficients.
//!
//! All arithmetic truncates at a fixed order chosen at construction, which
//! is what the coefficient recurrences and residual checks need.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// A power series truncated after `z^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rat>,
}

impl RationalSeries {
    /// The zero series with coefficients up to `z^order`.
    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![Rat::zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = Rat::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &Rat {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, i: usize, value: Rat) {
        self.coeffs[i] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `(1 − a·z)^alpha` truncated at `order`.
    pub fn binomial_power(alpha: &Rat, a: &Rat, order: usize) -> Self {
        let mut s = Self::zeros(order);
        let mut c = Rat::one();
        s.coeffs[0] = c.clone();
        for m in 0..order {
            // c_{m+1} = c_m · (alpha − m)/(m + 1) · (−a)
            c = c * (alpha - rat_int(m as i64)) / rat_int(m as i64 + 1) * (-a.clone());
            s.coeffs[m + 1] = c.clone();
        }
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order(), other.order());
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self { coeffs: out }
    }

    /// Truncated integer power by repeated multiplication.
    pub fn pow(&self, exp: usize) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Reciprocal; requires a nonzero constant term.
    pub fn recip(&self) -> Self {
        assert!(!self.coeffs[0].is_zero());
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        let inv0 = self.coeffs[0].recip();
        out[0] = inv0.clone();
        for m in 1..=order {
            let mut acc = Rat::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[m - i];
                }
            }
            out[m] = -acc * &inv0;
        }
        Self { coeffs: out }
    }

    /// `exp` of a series with zero constant term, via `(e^A)' = A'·e^A`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero());
        let order = self.order();
        let mut out = vec![Rat::zero(); order + 1];
        out[0] = Rat::one();
        for m in 1..=order {
            // m·b_m = sum_{i=1..m} i·a_i·b_{m−i}
            let mut acc = Rat::zero();
            for i in 1..=m {
                if !self.coeffs[i].is_zero() {
                    acc += rat_int(i as i64) * &self.coeffs[i] * &out[m - i];
                }
            }
            out[m] = acc / rat_int(m as i64);
        }
        Self { coeffs: out }
    }

    /// Largest absolute coefficient, as f64 (diagnostics).
    pub fn max_abs_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}
