//! Interpolants `f_{N,p}` built from node values of `f^{(p)}`.
//!
//! On the Fourier side the interpolant of order `p` is represented exactly
//! by the aliased coefficient sums `A(r) = Σ_{j ≡ r (mod N)} (ij)^p f̂(j)`:
//! for `m ≡ r`, `m ≠ 0`,
//!
//! ```text
//! f̂_{N,p}(m) = A(r) · sin²(πr/N) / (πm/N)² / (im)^p
//! ```
//!
//! which is the order-0 interpolant of `f^{(p)}` integrated `p` times. The
//! constant term is chosen so that `f_{N,p}(1) = 0` when `p ≥ 1`, matching
//! the vanishing of `f` at `1` required for those orders. Pointwise
//! evaluation uses the compactly supported kernel directly.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::kernel::DeltaKernel;
use crate::error::{Error, Result};
use crate::series::FourierSeries;
use crate::special::{residue_power_sum, shifted_ratio_sum};

#[derive(Debug, Clone, PartialEq)]
pub struct Interpolant {
    nodes: usize,
    p: u32,
    alias: Vec<Complex64>,
    mean: Complex64,
    node_values: Vec<Complex64>,
}

/// Builds `f_{N,⌊s⌋}`.
pub fn herz_interpolant(f: &FourierSeries, nodes: usize, s: f64) -> Result<Interpolant> {
    if nodes == 0 {
        return Err(Error::parameter("the number of nodes N must be positive"));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("smoothness s must be finite and >= 0, got {s}")));
    }
    let p = s.floor() as u32;
    let n = nodes as i64;
    let mut alias = vec![Complex64::new(0.0, 0.0); nodes];
    for (j, c) in f.iter() {
        if c.norm_sqr() > 0.0 {
            alias[j.rem_euclid(n) as usize] += c * Complex64::new(0.0, j as f64).powu(p);
        }
    }
    let mean = if p == 0 {
        alias[0]
    } else {
        let i_pow = Complex64::new(0.0, -1.0).powu(p);
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, a) in alias.iter().enumerate().skip(1) {
            if a.norm_sqr() > 0.0 {
                let sin2 = (PI * r as f64 / nodes as f64).sin().powi(2);
                acc += a * sin2 * residue_power_sum(2 + p, r as u64, nodes as u64);
            }
        }
        -acc * i_pow * ((nodes * nodes) as f64 / (PI * PI))
    };
    let node_values = (0..nodes)
        .map(|k| f.derivative_at(p, 2.0 * PI * k as f64 / nodes as f64))
        .collect();
    Ok(Interpolant { nodes, p, alias, mean, node_values })
}

impl Interpolant {
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `A(r)` for `r = 0..N`.
    pub fn aliased_sums(&self) -> &[Complex64] {
        &self.alias
    }

    /// `f^{(p)}(e^{2πik/N})`.
    pub fn node_values(&self) -> &[Complex64] {
        &self.node_values
    }

    /// Magnitude factor `sin²(πr/N)·N²/π²` shared by a residue class.
    fn class_factor(&self, r: usize) -> f64 {
        let n = self.nodes as f64;
        (PI * r as f64 / n).sin().powi(2) * n * n / (PI * PI)
    }

    pub fn coeff(&self, m: i64) -> Complex64 {
        if m == 0 {
            return self.mean;
        }
        let r = m.rem_euclid(self.nodes as i64) as usize;
        if r == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let mf = m as f64;
        self.alias[r] * (self.class_factor(r) / (mf * mf)) / Complex64::new(0.0, mf).powu(self.p)
    }

    /// Coefficients on `[-M, M]`.
    pub fn to_series(&self, m: usize) -> FourierSeries {
        let coeffs = (-(m as i64)..=m as i64).map(|k| self.coeff(k)).collect();
        FourierSeries::from_dense(m, coeffs).expect("length matches by construction")
    }

    /// Pointwise value from the compactly supported kernel; needs `N ≥ 2`.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        let kernel = DeltaKernel::for_nodes(self.p, self.nodes)?;
        let h = kernel.eps();
        let t = t.rem_euclid(2.0 * PI);
        let k = ((t / h).floor() as usize).min(self.nodes - 1);
        let x0 = h * k as f64;
        let x1 = h * (k + 1) as f64;
        let v0 = self.node_values[k];
        let v1 = self.node_values[(k + 1) % self.nodes];
        Ok(v0 * kernel.eval(t - x0) + v1 * kernel.eval(t - x1))
    }

    /// `‖f_{N,p}‖_s`, summing every residue class to infinity.
    pub fn norm(&self, s: f64) -> f64 {
        let table = ResidueWeights::new(self.nodes, self.p, s);
        self.norm_with(&table)
    }

    /// Same as [`Interpolant::norm`] with precomputed class sums.
    pub fn norm_with(&self, table: &ResidueWeights) -> f64 {
        assert!(
            table.nodes == self.nodes && table.p == self.p,
            "residue table built for a different interpolant"
        );
        let mut acc = self.mean.norm();
        for (r, a) in self.alias.iter().enumerate().skip(1) {
            let mag = a.norm();
            if mag > 0.0 {
                acc += mag * table.weights[r];
            }
        }
        acc
    }

    /// `‖f - f_{N,p}‖_s`: direct sum over the support of `f`, exact class
    /// tails beyond it.
    pub fn error_norm(&self, f: &FourierSeries, s: f64) -> f64 {
        let d = f.degree().unwrap_or(0) as i64;
        let mut acc = 0.0;
        for m in -d..=d {
            acc += (f.coeff(m) - self.coeff(m)).norm() * (1.0 + m.unsigned_abs() as f64).powf(s);
        }
        let n = self.nodes as f64;
        let c = 2.0 + self.p as f64;
        for (r, a) in self.alias.iter().enumerate().skip(1) {
            let mag = a.norm();
            if mag == 0.0 {
                continue;
            }
            let scale = mag * self.class_factor(r) * n.powf(s - c);
            // positive side m = r + kN, negative side |m| = (N - r) + kN
            for rho in [r, self.nodes - r] {
                let k0 = if (rho as i64) > d { 0 } else { (d - rho as i64) / self.nodes as i64 + 1 };
                let b = rho as f64 / n + k0 as f64;
                acc += scale * shifted_ratio_sum(s, c, b + 1.0 / n, b);
            }
        }
        acc
    }
}

/// Per-residue weighted class sums `sin²(πr/N)N²/π² · Σ_{m ≡ r, m≠0} (1+|m|)^s / |m|^{2+p}`.
#[derive(Debug, Clone)]
pub struct ResidueWeights {
    nodes: usize,
    p: u32,
    weights: Vec<f64>,
}

impl ResidueWeights {
    pub fn new(nodes: usize, p: u32, s: f64) -> Self {
        assert!(s < p as f64 + 1.0, "class sums diverge for s >= p + 1");
        let n = nodes as f64;
        let c = 2.0 + p as f64;
        let one_side: Vec<f64> = (0..nodes)
            .map(|rho| {
                if rho == 0 {
                    0.0
                } else {
                    let b = rho as f64 / n;
                    shifted_ratio_sum(s, c, b + 1.0 / n, b)
                }
            })
            .collect();
        let weights = (0..nodes)
            .map(|r| {
                if r == 0 {
                    0.0
                } else {
                    let sin2 = (PI * r as f64 / n).sin().powi(2);
                    sin2 * n * n / (PI * PI) * n.powf(s - c) * (one_side[r] + one_side[nodes - r])
                }
            })
            .collect();
        Self { nodes, p, weights }
    }
}
