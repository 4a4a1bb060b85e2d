//! Truncated two-sided Fourier series on the circle.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::Weight;

/// Relative magnitude below which product coefficients are pruned.
pub const PRUNE_RELATIVE: f64 = 1e-15;

/// `Σ_{|n| ≤ M} c_n e^{int}`, stored densely.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSeries {
    m: usize,
    coeffs: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    #[serde(rename = "M")]
    m: usize,
    coeffs: Vec<(i64, f64, f64)>,
}

impl FourierSeries {
    pub fn zero(m: usize) -> Self {
        Self { m, coeffs: vec![Complex64::new(0.0, 0.0); 2 * m + 1] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { m: 0, coeffs: vec![c] }
    }

    /// `c · e^{int}`.
    pub fn monomial(n: i64, c: Complex64) -> Self {
        let mut f = Self::zero(n.unsigned_abs() as usize);
        f.set(n, c);
        f
    }

    /// Builds a series from `(index, coefficient)` pairs; repeated indices add.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> Self {
        let pairs: Vec<_> = pairs.into_iter().collect();
        let m = pairs.iter().map(|(n, _)| n.unsigned_abs() as usize).max().unwrap_or(0);
        let mut f = Self::zero(m);
        for (n, c) in pairs {
            f.coeffs[(n + m as i64) as usize] += c;
        }
        f
    }

    /// Coefficients `c_{-M}, ..., c_M`.
    pub fn from_dense(m: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * m + 1 {
            return Err(Error::parameter(format!(
                "dense series with M = {m} needs {} coefficients, got {}",
                2 * m + 1,
                coeffs.len()
            )));
        }
        Ok(Self { m, coeffs })
    }

    /// One-sided series `Σ_{k=0}^{len-1} c_k e^{ikt}`.
    pub fn from_taylor(coeffs: &[Complex64]) -> Self {
        let m = coeffs.len().saturating_sub(1);
        let mut f = Self::zero(m);
        f.coeffs[m..].copy_from_slice(coeffs);
        f
    }

    pub fn truncation(&self) -> usize {
        self.m
    }

    pub fn coeff(&self, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.m {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.m as i64) as usize]
        }
    }

    /// Sets `c_n`, widening the truncation if needed.
    pub fn set(&mut self, n: i64, c: Complex64) {
        let need = n.unsigned_abs() as usize;
        if need > self.m {
            *self = self.widened(need);
        }
        let m = self.m as i64;
        self.coeffs[(n + m) as usize] = c;
    }

    /// Same series with truncation `new_m ≥ M`.
    pub fn widened(&self, new_m: usize) -> Self {
        if new_m <= self.m {
            return self.clone();
        }
        let mut out = Self::zero(new_m);
        let off = new_m - self.m;
        out.coeffs[off..off + self.coeffs.len()].copy_from_slice(&self.coeffs);
        out
    }

    /// Drops coefficients beyond `|n| > new_m`.
    pub fn truncated(&self, new_m: usize) -> Self {
        if new_m >= self.m {
            return self.clone();
        }
        let off = self.m - new_m;
        Self { m: new_m, coeffs: self.coeffs[off..off + 2 * new_m + 1].to_vec() }
    }

    /// Iterator over `(n, c_n)` for `n = -M..=M`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        let m = self.m as i64;
        self.coeffs.iter().enumerate().map(move |(i, &c)| (i as i64 - m, c))
    }

    /// Largest `|n|` with `c_n ≠ 0`, or `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.iter().filter(|(_, c)| c.norm_sqr() > 0.0).map(|(n, _)| n.unsigned_abs() as usize).max()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Removes zero coefficients at the edges.
    pub fn trimmed(&self) -> Self {
        self.truncated(self.degree().unwrap_or(0))
    }

    pub fn evaluate(&self, t: f64) -> Complex64 {
        self.iter()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * t))
            .sum()
    }

    /// `f^{(j)}` where the derivative is taken in `t`.
    pub fn derivative(&self, j: u32) -> Self {
        let mut out = self.clone();
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let n = i as i64 - self.m as i64;
            *c *= Complex64::new(0.0, n as f64).powu(j);
        }
        out
    }

    /// `f^{(j)}(1) = Σ (in)^j c_n`, exact for trigonometric polynomials.
    pub fn derivative_at_one(&self, j: u32) -> Complex64 {
        self.iter().map(|(n, c)| c * Complex64::new(0.0, n as f64).powu(j)).sum()
    }

    /// `f^{(j)}(e^{it})` computed from the coefficients.
    pub fn derivative_at(&self, j: u32, t: f64) -> Complex64 {
        self.iter()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(n, c)| {
                c * Complex64::new(0.0, n as f64).powu(j) * Complex64::from_polar(1.0, n as f64 * t)
            })
            .sum()
    }

    /// `Σ |c_n|`, the Wiener algebra norm.
    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ |c_n| ω(n)`.
    pub fn weighted_norm(&self, w: &Weight) -> Result<f64> {
        let mut acc = 0.0;
        for (n, c) in self.iter() {
            let a = c.norm();
            if a > 0.0 {
                acc += a * w.value(n)?;
            }
        }
        if !acc.is_finite() {
            return Err(Error::Range("weighted norm overflowed".into()));
        }
        Ok(acc)
    }

    /// `‖f‖_s` for the polynomial weight `(1+|n|)^s`.
    pub fn sobolev_norm(&self, s: f64) -> f64 {
        self.iter().map(|(n, c)| c.norm() * (1.0 + n.unsigned_abs() as f64).powf(s)).sum()
    }

    /// Coefficient convolution; the truncation grows to `M_f + M_g` and
    /// magnitudes below `PRUNE_RELATIVE` times the largest are set to zero.
    pub fn multiply(&self, other: &Self) -> Self {
        let m = self.m + other.m;
        let mut out = vec![Complex64::new(0.0, 0.0); 2 * m + 1];
        let b_nz: Vec<(usize, Complex64)> =
            other.coeffs.iter().copied().enumerate().filter(|(_, c)| c.norm_sqr() > 0.0).collect();
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            for &(j, b) in &b_nz {
                out[i + j] += a * b;
            }
        }
        let max = out.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for c in &mut out {
            if c.norm() < PRUNE_RELATIVE * max {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        Self { m, coeffs: out }
    }

    /// Values `f(e^{2πij/G})` for `j = 0..G`.
    pub fn sample(&self, g: usize) -> Vec<Complex64> {
        (0..g).map(|j| self.evaluate(2.0 * PI * j as f64 / g as f64)).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let coeffs = self
            .iter()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(n, c)| (n, c.re, c.im))
            .collect();
        Ok(serde_json::to_string(&SeriesJson { m: self.m, coeffs })?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SeriesJson = serde_json::from_str(text)?;
        let mut f = Self::zero(raw.m);
        for (n, re, im) in raw.coeffs {
            if n.unsigned_abs() as usize > raw.m {
                return Err(Error::parameter(format!("coefficient index {n} exceeds M = {}", raw.m)));
            }
            if !(re.is_finite() && im.is_finite()) {
                return Err(Error::parameter(format!("coefficient {n} is not finite")));
            }
            f.coeffs[(n + raw.m as i64) as usize] += Complex64::new(re, im);
        }
        Ok(f)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let m = self.m.max(other.m);
        let mut out = Self::zero(m);
        for (i, c) in out.coeffs.iter_mut().enumerate() {
            let n = i as i64 - m as i64;
            *c = op(self.coeff(n), other.coeff(n));
        }
        out
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self { m: self.m, coeffs: self.coeffs.iter().map(|c| c * a).collect() }
    }
}

impl Add for &FourierSeries {
    type Output = FourierSeries;
    fn add(self, rhs: Self) -> FourierSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &FourierSeries {
    type Output = FourierSeries;
    fn sub(self, rhs: Self) -> FourierSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: Self) -> FourierSeries {
        self.multiply(rhs)
    }
}

impl Mul<Complex64> for &FourierSeries {
    type Output = FourierSeries;
    fn mul(self, rhs: Complex64) -> FourierSeries {
        self.scale(rhs)
    }
}

impl Neg for &FourierSeries {
    type Output = FourierSeries;
    fn neg(self) -> FourierSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}
