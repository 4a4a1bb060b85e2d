//! Convergence of `f_{N,p}` to `f` in `‖·‖_s`.

use serde::Serialize;

use super::interpolant::herz_interpolant;
use crate::error::{Error, Result};
use crate::fit::{loglog_fit, LinearFit};
use crate::series::FourierSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(rename = "N")]
    pub nodes: usize,
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub s: f64,
    pub rows: Vec<ConvergenceRow>,
    /// Fitted on rows with `N ≥ 2·deg f` and nonzero error.
    pub fit: Option<LinearFit>,
    pub fit_min_nodes: usize,
}

impl ConvergenceTable {
    pub fn fitted_rate(&self) -> Option<f64> {
        self.fit.map(|f| f.slope)
    }

    pub fn strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].err < w[0].err)
    }
}

/// Checks `f^{(j)}(1) = 0` for `j ≤ ⌊s⌋` relative to `Σ |n|^j |c_n|`.
pub fn check_vanishing_at_one(f: &FourierSeries, s: f64) -> Result<()> {
    if s < 1.0 {
        return Ok(());
    }
    let p = s.floor() as u32;
    for j in 0..=p {
        let value = f.derivative_at_one(j).norm();
        let scale: f64 = f.iter().map(|(n, c)| c.norm() * (n.unsigned_abs() as f64).powi(j as i32)).sum();
        if value > 1e-12 * scale.max(1e-300) {
            return Err(Error::contract(format!(
                "f^({j})(1) = {value:.3e} must vanish for s = {s}"
            )));
        }
    }
    Ok(())
}

/// `‖f - f_{N,⌊s⌋}‖_s` for each `N`, and the log-log slope over `N ≥ 2·deg f`.
pub fn convergence_study(f: &FourierSeries, s: f64, nodes: &[usize]) -> Result<ConvergenceTable> {
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("smoothness s must be finite and >= 0, got {s}")));
    }
    if nodes.is_empty() {
        return Err(Error::parameter("the N list is empty"));
    }
    check_vanishing_at_one(f, s)?;
    let rows = nodes
        .iter()
        .map(|&n| {
            let g = herz_interpolant(f, n, s)?;
            Ok(ConvergenceRow { nodes: n, err: g.error_norm(f, s) })
        })
        .collect::<Result<Vec<_>>>()?;
    let fit_min_nodes = 2 * f.degree().unwrap_or(0);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.nodes >= fit_min_nodes && r.err > 0.0)
        .map(|r| (r.nodes as f64, r.err))
        .collect();
    let fit = if pts.len() >= 2 { Some(loglog_fit(&pts)?) } else { None };
    Ok(ConvergenceTable { s, rows, fit, fit_min_nodes })
}
