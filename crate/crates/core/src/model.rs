//! Compressed shift on the model space `H² ⊖ V H²` of a singular inner
//! function built from an atomic measure on the circle.
//!
//! `V(z) = exp((1/2π) Σ_j μ_j (z + e^{iθ_j}) / (z - e^{iθ_j}))` is evaluated
//! exactly on a circle of radius `r < 1`; its Taylor coefficients follow from
//! one FFT and a division by `r^k`. With `σ_k = Σ_{l≤k} |V̂(l)|²` the
//! projection of `z^k` onto the model space has `‖P z^k‖² = 1 - σ_k`, and
//! because the compression `T` maps `P z^j` to `P z^{j+1}`,
//! `‖T^{-n}‖ ≥ ‖P z^j‖ / ‖P z^{j+n}‖` for every `j`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::cantor::DiscreteMeasure;
use crate::error::{Error, Result};

/// Coefficients whose error bound exceeds this are zeroed.
pub const COEFF_ERROR_CUTOFF: f64 = 1e-10;

/// Largest tolerated amplification `r^{-M}`.
pub const MAX_AMPLIFICATION: f64 = 1e10;

/// Largest tolerated aliasing factor `r^G / (1 - r^G)`.
pub const MAX_ALIASING: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RadiusPolicy {
    /// `r = A^{-1/M}`, so the top coefficient is amplified by `A`.
    Amplification(f64),
    Fixed(f64),
}

impl Default for RadiusPolicy {
    fn default() -> Self {
        RadiusPolicy::Amplification(1e4)
    }
}

impl RadiusPolicy {
    pub fn radius(&self, m: usize) -> Result<f64> {
        let r = match *self {
            RadiusPolicy::Amplification(a) => {
                if !(a > 1.0 && a.is_finite()) {
                    return Err(Error::parameter(format!("amplification must exceed 1, got {a}")));
                }
                a.powf(-1.0 / m as f64)
            }
            RadiusPolicy::Fixed(r) => r,
        };
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::parameter(format!("evaluation radius must lie in (0, 1), got {r}")));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularInnerApprox {
    coeffs: Vec<Complex64>,
    coeff_error: Vec<f64>,
    zeroed: usize,
    measure_level: Option<u32>,
    radius: f64,
    grid: usize,
    total_mass: f64,
}

impl SingularInnerApprox {
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Bound on `|computed V̂(k) - V̂(k)|`, including zeroed coefficients.
    pub fn coeff_error(&self) -> &[f64] {
        &self.coeff_error
    }

    pub fn zeroed(&self) -> usize {
        self.zeroed
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn measure_level(&self) -> Option<u32> {
        self.measure_level
    }

    pub fn with_measure_level(mut self, level: u32) -> Self {
        self.measure_level = Some(level);
        self
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    /// Bound on `Σ_{k>M} |V̂(k)|²`, using `‖V‖₂ = 1`.
    pub fn tail_bound(&self) -> f64 {
        let (sigma, slack) = self.energy();
        (1.0 - sigma + slack).max(0.0)
    }

    /// `(Σ |V̂(k)|², error bound)` over the computed range.
    fn energy(&self) -> (f64, f64) {
        let mut sigma = 0.0;
        let mut slack = 0.0;
        for (c, e) in self.coeffs.iter().zip(&self.coeff_error) {
            sigma += c.norm_sqr();
            slack += 2.0 * c.norm() * e + e * e;
        }
        (sigma, slack)
    }
}

/// Evaluates `V` on the circle of radius `r` and recovers `V̂(0..=M)`.
pub fn inner_from_measure(
    mu: &DiscreteMeasure,
    m: usize,
    policy: RadiusPolicy,
) -> Result<SingularInnerApprox> {
    if m == 0 {
        return Err(Error::parameter("truncation M must be positive"));
    }
    if let Some(a) = mu.atoms.iter().find(|a| !(a.angle.is_finite() && a.mass > 0.0 && a.mass.is_finite())) {
        return Err(Error::parameter(format!("atom at {} with mass {} is invalid", a.angle, a.mass)));
    }
    let r = policy.radius(m)?;
    let amplification = r.powf(-(m as f64));
    if amplification > MAX_AMPLIFICATION {
        return Err(Error::parameter(format!(
            "radius {r} amplifies coefficient M = {m} by {amplification:.2e} > {MAX_AMPLIFICATION:.0e}"
        )));
    }
    let g = (4 * m).next_power_of_two();
    let rg = r.powf(g as f64);
    let aliasing = rg / (1.0 - rg);
    if !(aliasing < MAX_ALIASING) {
        return Err(Error::parameter(format!(
            "radius {r} is too close to 1 for M = {m}: aliasing factor {aliasing:.2e}"
        )));
    }

    let atoms: Vec<(Complex64, f64)> = mu
        .atoms
        .iter()
        .map(|a| (Complex64::from_polar(1.0, a.angle), a.mass / (2.0 * PI)))
        .collect();
    let u = f64::EPSILON * 0.5;
    let depth = (atoms.len().max(1) as f64).log2().ceil() + PAIRWISE_BASE as f64 + 4.0;

    let samples: Vec<(Complex64, f64)> = (0..g)
        .into_par_iter()
        .map_init(
            || Vec::with_capacity(atoms.len()),
            |terms: &mut Vec<Complex64>, l| {
                let z = Complex64::from_polar(r, 2.0 * PI * l as f64 / g as f64);
                terms.clear();
                let mut abs_sum = 0.0;
                for &(e, w) in &atoms {
                    let t = (z + e) / (z - e) * w;
                    abs_sum += t.norm();
                    terms.push(t);
                }
                let h = pairwise_sum(terms);
                let v = h.exp();
                let err = v.norm() * (depth * u * abs_sum + 2.0 * u);
                (v, err)
            },
        )
        .collect();

    let mut spectrum: Vec<Complex64> = samples.iter().map(|s| s.0).collect();
    let mean_err = samples.iter().map(|s| s.1).sum::<f64>() / g as f64;
    let rms = (spectrum.iter().map(|c| c.norm_sqr()).sum::<f64>() / g as f64).sqrt();
    FftPlanner::<f64>::new().plan_fft_forward(g).process(&mut spectrum);
    let fft_err = 5.0 * (g as f64).log2() * u * rms;
    let round = mean_err + fft_err;

    let mut coeffs = Vec::with_capacity(m + 1);
    let mut coeff_error = Vec::with_capacity(m + 1);
    let mut zeroed = 0;
    let inv_r = 1.0 / r;
    let mut scale = 1.0 / g as f64;
    let mut amp = 1.0;
    for c in spectrum.iter().take(m + 1) {
        let value = c * scale;
        let err = round * amp * (1.0 + 4.0 * u * (m as f64)) + aliasing;
        if err > COEFF_ERROR_CUTOFF {
            zeroed += 1;
            coeffs.push(Complex64::new(0.0, 0.0));
            coeff_error.push(value.norm() + err);
        } else {
            coeffs.push(value);
            coeff_error.push(err);
        }
        scale *= inv_r;
        amp *= inv_r;
    }
    Ok(SingularInnerApprox {
        coeffs,
        coeff_error,
        zeroed,
        measure_level: None,
        radius: r,
        grid: g,
        total_mass: mu.total_mass,
    })
}

const PAIRWISE_BASE: usize = 16;

fn pairwise_sum(v: &[Complex64]) -> Complex64 {
    if v.len() <= PAIRWISE_BASE {
        v.iter().sum()
    } else {
        let (a, b) = v.split_at(v.len() / 2);
        pairwise_sum(a) + pairwise_sum(b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionTable {
    /// `σ_k = Σ_{l≤k} |V̂(l)|²`.
    pub sigma: Vec<f64>,
    /// `‖P z^k‖² = 1 - σ_k`.
    pub pnorm2: Vec<f64>,
    /// Certified bound on the error of `pnorm2[k]` from coefficient errors.
    pub slack: Vec<f64>,
    /// Bound on the energy of the coefficients beyond the truncation.
    pub tail_bound: f64,
}

/// Projection norms for `k = 0..=K`.
pub fn projection_norms(v: &SingularInnerApprox, k: usize) -> Result<ProjectionTable> {
    if k > v.truncation() {
        return Err(Error::parameter(format!("K = {k} exceeds the truncation M = {}", v.truncation())));
    }
    let mut sigma = Vec::with_capacity(k + 1);
    let mut slack = Vec::with_capacity(k + 1);
    let (mut s, mut e) = (0.0, 0.0);
    for (c, err) in v.coeffs.iter().zip(&v.coeff_error).take(k + 1) {
        s += c.norm_sqr();
        e += 2.0 * c.norm() * err + err * err;
        sigma.push(s);
        slack.push(e);
    }
    if s > 1.0 + 1e-10 {
        return Err(Error::precision(format!("coefficient energy {s} exceeds 1; inner function inconsistent")));
    }
    let pnorm2 = sigma.iter().map(|s| 1.0 - s).collect();
    Ok(ProjectionTable { sigma, pnorm2, slack, tail_bound: v.tail_bound() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerBound {
    pub n: usize,
    pub value: f64,
    pub argmax: usize,
    pub slack: f64,
}

/// `max_{j ≤ J} sqrt((pnorm2[j] - slack_j) / (pnorm2[j+n] + slack_{j+n}))`.
pub fn inverse_power_lower_bound(table: &ProjectionTable, n: usize, j_max: usize) -> Result<LowerBound> {
    if n == 0 {
        return Ok(LowerBound { n, value: 1.0, argmax: 0, slack: 0.0 });
    }
    let k = table.pnorm2.len() - 1;
    if j_max + n > k {
        return Err(Error::parameter(format!("J + n = {} exceeds the table size K = {k}", j_max + n)));
    }
    let last = j_max + n;
    if table.pnorm2[last] <= table.slack[last] {
        return Err(Error::precision(format!(
            "projection norm {:.3e} at k = {last} is within its error {:.3e}; increase M or the measure level",
            table.pnorm2[last], table.slack[last]
        )));
    }
    let mut best = (0.0f64, 0usize);
    for j in 0..=j_max {
        let num = table.pnorm2[j] - table.slack[j];
        let den = table.pnorm2[j + n] + table.slack[j + n];
        if num > 0.0 {
            let v = (num / den).sqrt();
            if v > best.0 {
                best = (v, j);
            }
        }
    }
    Ok(LowerBound { n, value: best.0.max(1.0), argmax: best.1, slack: table.slack[last] })
}

/// `max_{k ≤ kmax} |a.pnorm2[k] - b.pnorm2[k]|`.
pub fn refinement_gap(a: &ProjectionTable, b: &ProjectionTable, kmax: usize) -> f64 {
    a.pnorm2
        .iter()
        .zip(&b.pnorm2)
        .take(kmax + 1)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{Atom, AtomPlacement, PerfectSymmetricSet};

    fn single_atom() -> DiscreteMeasure {
        DiscreteMeasure { atoms: vec![Atom { angle: 0.0, mass: 2.0 * PI }], total_mass: 2.0 * PI }
    }

    /// `e^{-1} L_k^{(-1)}(2)`: Taylor coefficients of `exp((z+1)/(z-1))`.
    fn laguerre_oracle(n: usize) -> Vec<f64> {
        let (alpha, x) = (-1.0, 2.0);
        let mut l = vec![1.0, 1.0 + alpha - x];
        for k in 1..n {
            let kf = k as f64;
            let next = ((2.0 * kf + 1.0 + alpha - x) * l[k] - (kf + alpha) * l[k - 1]) / (kf + 1.0);
            l.push(next);
        }
        l.iter().map(|v| v * (-1f64).exp()).collect()
    }

    #[test]
    fn single_atom_matches_laguerre() {
        let v = inner_from_measure(&single_atom(), 512, RadiusPolicy::default()).unwrap();
        let want = laguerre_oracle(512);
        assert!((v.coeffs()[0].re - (-1f64).exp()).abs() < 1e-14);
        assert!((v.coeffs()[1].re + 2.0 * (-1f64).exp()).abs() < 1e-14);
        for k in 0..=512 {
            let d = (v.coeffs()[k] - Complex64::new(want[k], 0.0)).norm();
            assert!(d <= v.coeff_error()[k] + 1e-15, "k = {k}: {d} > {}", v.coeff_error()[k]);
        }
    }

    #[test]
    fn single_atom_first_ratio() {
        let v = inner_from_measure(&single_atom(), 256, RadiusPolicy::default()).unwrap();
        let t = projection_norms(&v, 256).unwrap();
        let e2 = (-2f64).exp();
        let want = ((1.0 - e2) / (1.0 - 5.0 * e2)).sqrt();
        let lb = inverse_power_lower_bound(&t, 1, 0).unwrap();
        assert!((lb.value - want).abs() < 1e-12);
        assert_eq!(inverse_power_lower_bound(&t, 0, 10).unwrap().value, 1.0);
    }

    #[test]
    fn cantor_measure_value_at_zero() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let mu = set.cantor_measure(6, AtomPlacement::LeftEndpoint).unwrap();
        let v = inner_from_measure(&mu, 1024, RadiusPolicy::default()).unwrap();
        assert!((v.coeffs()[0].re - (-1f64).exp()).abs() < 1e-12);
        let t = projection_norms(&v, 1024).unwrap();
        assert!((t.pnorm2[0] - (1.0 - (-2f64).exp())).abs() < 1e-12);
        assert!(t.pnorm2.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn two_radii_agree() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let mu = set.cantor_measure(5, AtomPlacement::LeftEndpoint).unwrap();
        let a = inner_from_measure(&mu, 512, RadiusPolicy::Amplification(1e6)).unwrap();
        let b = inner_from_measure(&mu, 512, RadiusPolicy::Amplification(1e4)).unwrap();
        for k in 0..=512 {
            let d = (a.coeffs()[k] - b.coeffs()[k]).norm();
            assert!(d <= a.coeff_error()[k] + b.coeff_error()[k], "k = {k}");
            if a.coeff_error()[k] <= COEFF_ERROR_CUTOFF && b.coeff_error()[k] <= COEFF_ERROR_CUTOFF {
                assert!(d < 1e-10, "k = {k}: {d}");
            }
        }
    }

    #[test]
    fn empty_measure_gives_trivial_model_space() {
        let mu = DiscreteMeasure { atoms: vec![], total_mass: 0.0 };
        let v = inner_from_measure(&mu, 64, RadiusPolicy::default()).unwrap();
        let t = projection_norms(&v, 64).unwrap();
        assert!(t.pnorm2.iter().all(|p| p.abs() < 1e-14));
        assert!(matches!(inverse_power_lower_bound(&t, 1, 10), Err(Error::Precision(_))));
    }

    #[test]
    fn radius_checks() {
        let mu = single_atom();
        assert!(inner_from_measure(&mu, 64, RadiusPolicy::Fixed(0.5)).is_err());
        assert!(inner_from_measure(&mu, 64, RadiusPolicy::Fixed(0.9999)).is_err());
        assert!(inner_from_measure(&mu, 64, RadiusPolicy::Fixed(1.0)).is_err());
    }
}
