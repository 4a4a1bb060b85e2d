//! Interpolants of functions vanishing on `E_{1/q}` vanish on the cover `F_n`.
//!
//! With `N = q^n` nodes the level-`n` arcs are exactly the node intervals
//! `[2πj/N, 2π(j+1)/N]` whose endpoints lie in the set, so on each arc the
//! interpolant only sees two node values that are already small.

use std::f64::consts::PI;

use serde::Serialize;

use super::interpolant::herz_interpolant;
use crate::cantor::PerfectSymmetricSet;
use crate::error::{Error, Result};
use crate::series::FourierSeries;
use crate::special::factorial;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoverResidual {
    /// Largest `|f_{q^n,p}|` over the sampled points of `F_n`.
    pub max_residual: f64,
    /// Largest `|f^{(j)}|`, `j ≤ p`, over the level-`n` endpoints.
    pub max_endpoint_value: f64,
    /// `C` in `max_residual ≤ C · max |f^{(p)}(endpoint)|`.
    pub constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VanishingReport {
    pub max_residual: f64,
    pub constant: f64,
    pub tol: f64,
    pub holds: bool,
}

/// Residual of `f_{q^n,⌊s⌋}` on `F_n` without checking the endpoint values.
pub fn cover_residual(
    f: &FourierSeries,
    s: f64,
    q: u32,
    n: u32,
    samples: usize,
) -> Result<CoverResidual> {
    let set = PerfectSymmetricSet::from_q(q)?;
    let cover = set.level_cover(n)?;
    let nodes = (q as usize)
        .checked_pow(n)
        .filter(|&v| (2..=1 << 24).contains(&v))
        .ok_or_else(|| Error::resource(format!("q^n = {q}^{n} nodes is out of range")))?;
    if samples == 0 {
        return Err(Error::parameter("samples must be positive"));
    }
    let p = s.floor() as u32;
    let g = herz_interpolant(f, nodes, s)?;

    let mut max_endpoint_value = 0.0f64;
    for t in cover.endpoints() {
        for j in 0..=p {
            max_endpoint_value = max_endpoint_value.max(f.derivative_at(j, t).norm());
        }
    }

    let arcs = cover.arcs.len();
    let per_arc = samples.div_ceil(arcs).max(1);
    let mut max_residual = 0.0f64;
    for arc in &cover.arcs {
        for i in 0..=per_arc {
            let t = arc.start + arc.length * i as f64 / per_arc as f64;
            max_residual = max_residual.max(g.eval(t)?.norm());
        }
    }
    let eps = 2.0 * PI / nodes as f64;
    let constant = 2.0 * eps.powi(p as i32) / factorial(p as usize + 1);
    Ok(CoverResidual { max_residual, max_endpoint_value, constant })
}

/// Requires `|f^{(j)}| ≤ tol` at every level-`n` endpoint for `j ≤ ⌊s⌋`,
/// then reports the residual of the interpolant on `F_n`.
pub fn vanishing_on_cover(
    f: &FourierSeries,
    s: f64,
    q: u32,
    n: u32,
    samples: usize,
    tol: f64,
) -> Result<VanishingReport> {
    if !(tol >= 0.0) {
        return Err(Error::parameter(format!("tolerance must be nonnegative, got {tol}")));
    }
    let r = cover_residual(f, s, q, n, samples)?;
    if r.max_endpoint_value > tol {
        return Err(Error::contract(format!(
            "f does not vanish on the level-{n} endpoints of E_1/{q}: max |f^(j)| = {:.3e} > tol = {tol:.3e}",
            r.max_endpoint_value
        )));
    }
    Ok(VanishingReport {
        max_residual: r.max_residual,
        constant: r.constant,
        tol,
        holds: r.max_residual <= r.constant * tol * (1.0 + 1e-12),
    })
}
