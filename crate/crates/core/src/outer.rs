//! Outer functions whose modulus decays like `exp(-d(·, E)^{-δ})` near a
//! perfect symmetric set, and the inverse-power bounds built from them.
//!
//! The outer function with boundary log-modulus `w` is `exp(w + i w̃)` where
//! `w̃` is the conjugate function. On a uniform grid of `G` points this is
//! the analytic signal of `w`: keep the mean, double the positive
//! frequencies, keep the Nyquist bin once and drop negative frequencies.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::cantor::{critical_exponent, Angle, Metric, PerfectSymmetricSet};
use crate::error::{Error, Result};
use crate::series::FourierSeries;

/// Default floor for `w = -d^{-δ}`.
pub const DEFAULT_CLAMP: f64 = -40.0;

/// Largest index produced by [`dilate`].
pub const DILATE_BUDGET: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibleParameters {
    pub gamma: f64,
    pub delta: f64,
    pub delta_lower: f64,
    pub delta_upper: f64,
}

/// `γ` halfway between `β` and `b(1/q)`, and `δ` at the midpoint of
/// `(γ/(1-γ), 1 - log 2 / log q)`.
pub fn admissible_parameters(beta: f64, q: u32) -> Result<AdmissibleParameters> {
    if q < 3 {
        return Err(Error::domain(format!("q must be at least 3, got {q}")));
    }
    let b = critical_exponent(1.0 / q as f64);
    if !(beta >= 0.0 && beta < b) {
        return Err(Error::domain(format!(
            "beta must lie in [0, b(1/{q})) = [0, {b:.6}), got {beta}"
        )));
    }
    let gamma = 0.5 * (beta + b);
    let delta_lower = gamma / (1.0 - gamma);
    let delta_upper = 1.0 - std::f64::consts::LN_2 / (q as f64).ln();
    let delta = 0.5 * (delta_lower + delta_upper);
    if !(beta < gamma && gamma < b && delta_lower < delta && delta < delta_upper) {
        return Err(Error::domain("no admissible (gamma, delta) pair at this precision"));
    }
    Ok(AdmissibleParameters { gamma, delta, delta_lower, delta_upper })
}

/// Grid samples of a nonpositive log-modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct LogModulusProfile {
    values: Vec<f64>,
    clamp: f64,
    delta: Option<f64>,
    distance_level: Option<u32>,
}

impl LogModulusProfile {
    /// Arbitrary samples `w(2πj/G)`; `G` must be a power of two.
    pub fn from_values(values: Vec<f64>, clamp: f64) -> Result<Self> {
        check_grid(values.len())?;
        if !(clamp.is_finite() && clamp < 0.0) {
            return Err(Error::parameter(format!("clamp floor must be finite and negative, got {clamp}")));
        }
        if let Some((j, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v <= 0.0)) {
            return Err(Error::parameter(format!("log-modulus must be finite and <= 0; sample {j} is {v}")));
        }
        let values = values.into_iter().map(|v| v.max(clamp)).collect();
        Ok(Self { values, clamp, delta: None, distance_level: None })
    }

    /// `w(t) = max(-d(t, E)^{-δ}, clamp)` with `d` the midpoint of the
    /// distance enclosure at the first level finer than the grid.
    pub fn from_set(set: &PerfectSymmetricSet, delta: f64, grid: usize, clamp: f64) -> Result<Self> {
        check_grid(grid)?;
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::parameter(format!("delta must be positive, got {delta}")));
        }
        if !(clamp.is_finite() && clamp < 0.0) {
            return Err(Error::parameter(format!("clamp floor must be finite and negative, got {clamp}")));
        }
        let level = ((grid as f64).ln() / (1.0 / set.xi()).ln()).floor() as u32 + 1;
        let values = (0..grid)
            .into_par_iter()
            .map(|j| {
                let t = Angle::new(2.0 * PI * j as f64 / grid as f64)?;
                let d = set.distance_to_set(t, level, Metric::ArcLength)?.midpoint();
                Ok(if d > 0.0 { (-d.powf(-delta)).max(clamp) } else { clamp })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(Self { values, clamp, delta: Some(delta), distance_level: Some(level) })
    }

    pub fn grid(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn clamp(&self) -> f64 {
        self.clamp
    }

    pub fn delta(&self) -> Option<f64> {
        self.delta
    }

    pub fn distance_level(&self) -> Option<u32> {
        self.distance_level
    }

    /// Whether sample `j` sits on the clamp floor.
    pub fn is_clamped(&self, j: usize) -> bool {
        self.values[j] <= self.clamp
    }
}

fn check_grid(g: usize) -> Result<()> {
    if g < 4 || !g.is_power_of_two() {
        return Err(Error::parameter(format!("grid size must be a power of two >= 4, got {g}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OuterDiagnostics {
    /// Fraction of spectral energy at indices in `(M/2, G/2]`.
    pub alias_energy: f64,
    /// Fraction of spectral energy at indices above `M`.
    pub truncation_energy: f64,
    /// Fraction of spectral energy in the negative-frequency half of the grid.
    pub negative_energy: f64,
    /// Largest `| |f| - e^w | / e^w` over unclamped grid points.
    pub modulus_error: f64,
    /// Largest `| |f| - e^w |` divided by `max e^w`.
    pub modulus_error_sup: f64,
    /// `log |f̂(0)|` before normalization.
    pub log_normalization: f64,
    pub clamped_points: usize,
}

/// Taylor coefficients `f̂(0..=M)` of a normalized outer function.
#[derive(Debug, Clone, PartialEq)]
pub struct OuterApprox {
    coeffs: Vec<Complex64>,
    grid: usize,
    clamp: f64,
    diagnostics: OuterDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct OuterOptions {
    /// Fail with a resolution error when the energy above `M/2` exceeds this.
    pub alias_threshold: Option<f64>,
}

impl OuterApprox {
    /// Wraps given Taylor coefficients; `f̂(0)` must be nonzero and is scaled to 1.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        let c0 = *coeffs.first().ok_or_else(|| Error::parameter("no coefficients"))?;
        if c0.norm() == 0.0 {
            return Err(Error::contract("f(0) = 0 cannot be normalized"));
        }
        let mut coeffs: Vec<Complex64> = coeffs.iter().map(|c| c / c0).collect();
        coeffs[0] = Complex64::new(1.0, 0.0);
        let diagnostics = OuterDiagnostics {
            alias_energy: 0.0,
            truncation_energy: 0.0,
            negative_energy: 0.0,
            modulus_error: 0.0,
            modulus_error_sup: 0.0,
            log_normalization: c0.norm().ln(),
            clamped_points: 0,
        };
        Ok(Self { coeffs, grid: 0, clamp: DEFAULT_CLAMP, diagnostics })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn clamp(&self) -> f64 {
        self.clamp
    }

    pub fn diagnostics(&self) -> &OuterDiagnostics {
        &self.diagnostics
    }

    pub fn to_series(&self) -> FourierSeries {
        FourierSeries::from_taylor(&self.coeffs)
    }
}

pub fn outer_from_modulus(profile: &LogModulusProfile, m: usize) -> Result<OuterApprox> {
    outer_from_modulus_with(profile, m, &OuterOptions::default())
}

pub fn outer_from_modulus_with(
    profile: &LogModulusProfile,
    m: usize,
    options: &OuterOptions,
) -> Result<OuterApprox> {
    let g = profile.grid();
    if m == 0 || g < 4 * m {
        return Err(Error::parameter(format!("need 1 <= M and grid >= 4M, got M = {m}, grid = {g}")));
    }
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(g);
    let inverse = planner.plan_fft_inverse(g);
    let scale = 1.0 / g as f64;

    let mut spectrum: Vec<Complex64> = profile.values().iter().map(|&w| Complex64::new(w, 0.0)).collect();
    forward.process(&mut spectrum);
    let mean = spectrum[0].re * scale;
    // analytic signal of w - mean
    spectrum[0] = Complex64::new(0.0, 0.0);
    for (k, c) in spectrum.iter_mut().enumerate().skip(1) {
        *c *= if k < g / 2 {
            2.0 * scale
        } else if k == g / 2 {
            scale
        } else {
            0.0
        };
    }
    inverse.process(&mut spectrum);
    for c in spectrum.iter_mut() {
        *c = c.exp();
    }
    forward.process(&mut spectrum);
    for c in spectrum.iter_mut() {
        *c *= scale;
    }

    let total: f64 = spectrum.iter().map(|c| c.norm_sqr()).sum();
    let band = |lo: usize, hi: usize| spectrum[lo..hi].iter().map(|c| c.norm_sqr()).sum::<f64>() / total;
    let alias_energy = band(m / 2 + 1, g / 2 + 1);
    let truncation_energy = band(m + 1, g / 2 + 1);
    let negative_energy = band(g / 2 + 1, g);
    if let Some(threshold) = options.alias_threshold {
        if alias_energy > threshold {
            return Err(Error::Resolution(format!(
                "energy fraction {alias_energy:.3e} above M/2 exceeds {threshold:.1e}; increase M or the grid"
            )));
        }
    }
    let c0 = spectrum[0];
    if !(c0.norm() > 0.0 && c0.norm().is_finite()) {
        return Err(Error::precision("f(0) underflowed; the clamp floor is too deep for this grid"));
    }
    let mut coeffs: Vec<Complex64> = spectrum[..=m].iter().map(|c| c / c0).collect();
    coeffs[0] = Complex64::new(1.0, 0.0);

    // modulus of the truncated series against e^{w - mean} / |c0|
    let mut recon = vec![Complex64::new(0.0, 0.0); g];
    recon[..=m].copy_from_slice(&coeffs);
    inverse.process(&mut recon);
    let target_scale = -c0.norm().ln() - mean;
    let targets: Vec<f64> = profile.values().iter().map(|w| (w + target_scale).exp()).collect();
    let sup_target = targets.iter().cloned().fold(0.0, f64::max);
    let mut modulus_error = 0.0f64;
    let mut modulus_error_sup = 0.0f64;
    let mut clamped_points = 0;
    for (j, (z, &target)) in recon.iter().zip(&targets).enumerate() {
        if profile.is_clamped(j) {
            clamped_points += 1;
            continue;
        }
        let diff = (z.norm() - target).abs();
        modulus_error = modulus_error.max(diff / target);
        modulus_error_sup = modulus_error_sup.max(diff / sup_target);
    }
    let diagnostics = OuterDiagnostics {
        alias_energy,
        truncation_energy,
        negative_energy,
        modulus_error,
        modulus_error_sup,
        log_normalization: c0.norm().ln() + mean,
        clamped_points,
    };
    Ok(OuterApprox { coeffs, grid: g, clamp: profile.clamp(), diagnostics })
}

/// `f(z^{q^m})`.
pub fn dilate(f: &OuterApprox, q: u32, m: u32) -> Result<FourierSeries> {
    let step = (q as usize)
        .checked_pow(m)
        .filter(|s| s.checked_mul(f.truncation()).is_some_and(|top| top <= DILATE_BUDGET))
        .ok_or_else(|| {
            Error::resource(format!(
                "dilation by {q}^{m} of a degree-{} series exceeds the budget {DILATE_BUDGET}",
                f.truncation()
            ))
        })?;
    Ok(FourierSeries::from_pairs(
        f.coeffs().iter().enumerate().map(|(k, &c)| ((k * step) as i64, c)),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightTransfer {
    #[serde(rename = "C")]
    pub c: f64,
    pub ratio_sup: f64,
    pub poly_factor: f64,
    pub exp_sup: f64,
    pub argmax: u64,
}

/// Constant `C` with `‖g(z^{q^m})‖_ω ≤ C ‖g‖_{ω_γ}` for the one-sided
/// weights `ω = ω_β`: `(1+k)^s` on `k ≥ 0` and `e^{|k|^β}` (resp. `e^{|k|^γ}`) below.
///
/// The ratio `sup ω/ω_β` is 1 for this family. The exponential supremum
/// `sup_{k ≥ 0} exp(q^{βm} k^β - k^γ)` is unimodal in `k`; it is bracketed
/// around the stationary point and refined by golden-section search.
pub fn weight_transfer(s: f64, beta: f64, gamma: f64, q: u32, m: u32) -> Result<WeightTransfer> {
    if !(beta >= 0.0 && beta < gamma && gamma < 1.0) {
        return Err(Error::domain(format!(
            "need 0 <= beta < gamma < 1 for a finite constant, got beta = {beta}, gamma = {gamma}"
        )));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("s must be finite and >= 0, got {s}")));
    }
    let qf = q as f64;
    let a = qf.powf(beta * m as f64);
    let g = |k: f64| a * k.powf(beta) - k.powf(gamma);
    let (argmax, best) = if beta == 0.0 {
        (0u64, 0.0)
    } else {
        let stationary = (beta * a / gamma).powf(1.0 / (gamma - beta));
        let (mut lo, mut hi) = (1.0f64, (2.0 * stationary).max(2.0));
        let phi = 0.5 * (5f64.sqrt() - 1.0);
        while hi - lo > 1e-10 * hi.max(1.0) {
            let x1 = hi - phi * (hi - lo);
            let x2 = lo + phi * (hi - lo);
            if g(x1) < g(x2) {
                lo = x1;
            } else {
                hi = x2;
            }
        }
        let k = 0.5 * (lo + hi);
        let (kf, kc) = (k.floor().max(1.0), k.ceil().max(1.0));
        let (kbest, gbest) = if g(kf) >= g(kc) { (kf, g(kf)) } else { (kc, g(kc)) };
        if gbest > 0.0 {
            (kbest as u64, gbest)
        } else {
            (0, 0.0)
        }
    };
    let exp_sup = best.exp();
    let poly_factor = qf.powf(m as f64 * s);
    let c = poly_factor.max(exp_sup);
    if !c.is_finite() {
        return Err(Error::Range(format!("weight transfer constant overflows for q = {q}, m = {m}")));
    }
    Ok(WeightTransfer { c, ratio_sup: 1.0, poly_factor, exp_sup, argmax })
}

/// `max |Σ_k f̂(k) z^{k q^m}|` over the endpoints `z` of the level cover of
/// `E_{1/q}`, with exact integer reduction of the exponents.
pub fn annihilation_residual(f: &OuterApprox, q: u32, m: u32, level: u32) -> Result<f64> {
    let set = PerfectSymmetricSet::from_q(q)?;
    let cover = set.level_cover(level)?;
    let (nums, den) = cover.exact_numerators().expect("rational set has exact endpoints");
    if den > 1 << 24 {
        return Err(Error::resource(format!("root table of size {den} exceeds the budget")));
    }
    let roots: Vec<Complex64> =
        (0..den).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / den as f64)).collect();
    let qm = (0..m).fold(1u128, |acc, _| (acc * q as u128) % den as u128);
    let mut endpoint_nums: Vec<u64> = nums.iter().flat_map(|&a| [a, (a + 1) % den]).collect();
    endpoint_nums.dedup();
    let coeffs = f.coeffs();
    let residual = endpoint_nums
        .par_iter()
        .map(|&a| {
            let step = ((a as u128 * qm) % den as u128) as u64;
            let mut idx = 0u64;
            let mut acc = Complex64::new(0.0, 0.0);
            for &c in coeffs {
                acc += c * roots[idx as usize];
                idx = (idx + step) % den;
            }
            acc.norm()
        })
        .collect::<Vec<f64>>()
        .into_iter()
        .fold(0.0, f64::max);
    Ok(residual)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversePowerBound {
    pub n: u64,
    pub m: u32,
    pub weighted_sum: f64,
    pub bound: f64,
}

/// `q^s n^s Σ_{k≥1} |f̂(k)| (1+k)^s`, with `m = ⌊log_q n⌋`.
///
/// Fails with a precision error when the top octave of the weighted sum is
/// not smaller than the octave below it, i.e. when the truncated series
/// gives no evidence of summability.
pub fn inverse_power_bound(f: &OuterApprox, q: u32, n: u64, s: f64) -> Result<InversePowerBound> {
    if n == 0 {
        return Err(Error::parameter("n must be positive"));
    }
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    let c0 = f.coeffs()[0];
    if (c0 - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::contract(format!("f(0) must be 1, got {c0}")));
    }
    let terms: Vec<f64> =
        f.coeffs().iter().enumerate().map(|(k, c)| c.norm() * (1.0 + k as f64).powf(s)).collect();
    let top = f.truncation();
    if top >= 4 {
        let octave = |lo: usize, hi: usize| terms[lo + 1..=hi].iter().sum::<f64>();
        let upper = octave(top / 2, top);
        let lower = octave(top / 4, top / 2);
        if upper > 0.0 && upper >= lower {
            return Err(Error::precision(format!(
                "weighted coefficient sum is not converging at M = {top} for s = {s}: \
                 top octave {upper:.3e} >= previous octave {lower:.3e}"
            )));
        }
    }
    let weighted_sum: f64 = terms[1..].iter().sum();
    let mut m = 0u32;
    let mut qm = q as u64;
    while qm <= n {
        m += 1;
        qm = match qm.checked_mul(q as u64) {
            Some(v) => v,
            None => break,
        };
    }
    let bound = (q as f64).powf(s) * (n as f64).powf(s) * weighted_sum;
    Ok(InversePowerBound { n, m, weighted_sum, bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissible_example() {
        let p = admissible_parameters(0.0, 3).unwrap();
        // 30-digit references
        assert!((p.gamma - 0.134_788_644_845_407_45).abs() < 1e-12);
        assert!((p.delta_lower - 0.155_786_957_767_473_99).abs() < 1e-12);
        assert!((p.delta - 0.262_428_602_098_008_28).abs() < 1e-12);
        let b = critical_exponent(1.0 / 3.0);
        assert!(matches!(admissible_parameters(b, 3), Err(Error::Domain(_))));
        assert!(admissible_parameters(0.3, 4).is_ok());
    }

    #[test]
    fn zero_profile_gives_one() {
        let prof = LogModulusProfile::from_values(vec![0.0; 64], DEFAULT_CLAMP).unwrap();
        let f = outer_from_modulus(&prof, 16).unwrap();
        assert_eq!(f.coeffs()[0], Complex64::new(1.0, 0.0));
        assert!(f.coeffs()[1..].iter().all(|c| c.norm() < 1e-15));
    }

    #[test]
    fn smooth_profile_modulus_and_coefficients() {
        // w = cos t - 1 is the real part of z - 1, so f = e^{z-1} / e^{-1} = e^z
        let g = 256;
        let w: Vec<f64> = (0..g).map(|j| (2.0 * PI * j as f64 / g as f64).cos() - 1.0).collect();
        let prof = LogModulusProfile::from_values(w, DEFAULT_CLAMP).unwrap();
        let f = outer_from_modulus(&prof, 32).unwrap();
        let mut fact = 1.0;
        for k in 0..=20 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!((f.coeffs()[k] - Complex64::new(1.0 / fact, 0.0)).norm() < 1e-14, "k = {k}");
        }
        assert!(f.diagnostics().modulus_error < 1e-12);
        assert!(f.diagnostics().negative_energy < 1e-20);
    }

    #[test]
    fn grid_must_cover_truncation() {
        let prof = LogModulusProfile::from_values(vec![0.0; 64], DEFAULT_CLAMP).unwrap();
        assert!(outer_from_modulus(&prof, 17).is_err());
        assert!(LogModulusProfile::from_values(vec![0.0; 48], DEFAULT_CLAMP).is_err());
    }

    #[test]
    fn dilation_index_map() {
        let f = OuterApprox::from_coeffs(vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)]).unwrap();
        let d = dilate(&f, 3, 1).unwrap();
        assert_eq!(d.coeff(3), Complex64::new(0.5, 0.0));
        assert_eq!(d.coeff(1), Complex64::new(0.0, 0.0));
        assert_eq!(dilate(&f, 3, 0).unwrap(), f.to_series());
        assert!(matches!(dilate(&f, 3, 40), Err(Error::Resource(_))));
    }

    #[test]
    fn weight_transfer_examples() {
        let gamma = 0.4;
        let wt = weight_transfer(0.0, gamma / 2.0, gamma, 3, 0).unwrap();
        // brute force over integers
        let brute = (0..100_000u64)
            .map(|k| ((k as f64).powf(0.2) - (k as f64).powf(0.4)).exp())
            .fold(0.0, f64::max);
        assert!((wt.c - brute.max(1.0)).abs() < 1e-12);
        assert!(wt.c >= 1.0);
        let wt = weight_transfer(1.0, 0.1, 0.2, 3, 2).unwrap();
        let a = 3f64.powf(0.2);
        let brute = (0..10_000_000u64)
            .map(|k| a * (k as f64).powf(0.1) - (k as f64).powf(0.2))
            .fold(0.0, f64::max)
            .exp();
        assert!((wt.exp_sup - brute).abs() < 1e-9 * brute);
        assert!((wt.c - 9f64.max(brute)).abs() < 1e-9 * wt.c);
        assert!(weight_transfer(0.0, 0.3, 0.3, 3, 1).is_err());
    }

    #[test]
    fn residual_of_constant_is_one() {
        let f = OuterApprox::from_coeffs(vec![Complex64::new(1.0, 0.0)]).unwrap();
        assert!((annihilation_residual(&f, 3, 0, 6).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn bound_factorizes() {
        let f = OuterApprox::from_coeffs(
            (0..64).map(|k| Complex64::new(0.5f64.powi(k), 0.0)).collect(),
        )
        .unwrap();
        let b1 = inverse_power_bound(&f, 3, 1, 0.0).unwrap();
        let sum: f64 = (1..64).map(|k| 0.5f64.powi(k)).sum();
        assert!((b1.bound - sum).abs() < 1e-15);
        assert_eq!(b1.m, 0);
        let b9 = inverse_power_bound(&f, 3, 9, 2.0).unwrap();
        assert_eq!(b9.m, 2);
        let b8 = inverse_power_bound(&f, 3, 8, 2.0).unwrap();
        assert_eq!(b8.m, 1);
        assert!((b9.bound / 81.0 - b8.bound / 64.0).abs() < 1e-12 * b9.bound);
    }

    #[test]
    fn flat_coefficients_are_rejected() {
        let f = OuterApprox::from_coeffs(vec![Complex64::new(1.0, 0.0); 64]).unwrap();
        assert!(matches!(inverse_power_bound(&f, 3, 5, 1.0), Err(Error::Precision(_))));
    }
}
