//! Least-squares fits on log-log data.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Ordinary least squares of `y` on `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> Result<LinearFit> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::Fit(format!("need at least 2 paired points, got {}", x.len())));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let syy: f64 = y.iter().map(|v| (v - my).powi(2)).sum();
    if !(sxx > 1e-300) {
        return Err(Error::Fit("abscissas are degenerate".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r2 = if syy <= 1e-300 * n { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(LinearFit { slope, intercept, r2 })
}

/// Fit `log value = slope · log n + intercept`.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if let Some(&(n, v)) = points.iter().find(|(n, v)| !(*n > 0.0 && *v > 0.0)) {
        return Err(Error::Fit(format!("log-log fit needs positive data, got ({n}, {v})")));
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    linear_fit(&x, &y)
}

/// Growth exponent of a sequence of positive values indexed by `n`.
///
/// Requires at least five points.
pub fn growth_exponent_fit(points: &[(f64, f64)]) -> Result<LinearFit> {
    if points.len() < 5 {
        return Err(Error::Fit(format!("growth fit needs at least 5 points, got {}", points.len())));
    }
    loglog_fit(points)
}
