//! Norm bound `‖f_{N,0}‖_s ≤ K(s) ‖f‖_s` for `0 ≤ s < 1`.

use std::f64::consts::PI;

use serde::Serialize;

use super::interpolant::{herz_interpolant, ResidueWeights};
use crate::error::{Error, Result};
use crate::series::FourierSeries;
use crate::special::{riemann_zeta, shifted_ratio_sum};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub k1: f64,
    /// Sum of the two far-field contributions.
    pub k2: f64,
    /// Larger of the two far-field contributions.
    pub k2_max_form: f64,
    pub k: f64,
}

/// `K₁(s) = 2^{s-2} Σ_{k∈Z} (|k|+1/2)^s / (|k|-1/2)²`.
pub fn k1(s: f64) -> f64 {
    2f64.powf(s - 2.0) * (4.0 * 2f64.powf(-s) + 2.0 * shifted_ratio_sum(s, 2.0, 1.5, 0.5))
}

fn k2_parts(s: f64) -> (f64, f64) {
    (2f64.powf(1.0 + s), 2f64.powf(2.0 * s + 1.0) / (PI * PI) * riemann_zeta(2.0 - s))
}

pub fn bound_constants(s: f64) -> Result<BoundConstants> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::domain(format!("the interpolation bound needs 0 <= s < 1, got {s}")));
    }
    let k1 = k1(s);
    let (near, far) = k2_parts(s);
    let k2 = near + far;
    Ok(BoundConstants { k1, k2, k2_max_form: near.max(far), k: k1.max(k2) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HerzBound {
    pub norm_fn: f64,
    pub bound: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub constants: BoundConstants,
    pub holds: bool,
}

/// Evaluates both sides of the bound for one `f` and `N`.
pub fn herz_bound(f: &FourierSeries, nodes: usize, s: f64) -> Result<HerzBound> {
    let constants = bound_constants(s)?;
    let table = ResidueWeights::new(nodes, 0, s);
    herz_bound_with(f, nodes, s, &constants, &table)
}

/// [`herz_bound`] with the constants and class sums supplied by the caller.
pub fn herz_bound_with(
    f: &FourierSeries,
    nodes: usize,
    s: f64,
    constants: &BoundConstants,
    table: &ResidueWeights,
) -> Result<HerzBound> {
    let g = herz_interpolant(f, nodes, s)?;
    let norm_fn = g.norm_with(table);
    let bound = constants.k * f.sobolev_norm(s);
    Ok(HerzBound {
        norm_fn,
        bound,
        k: constants.k,
        constants: *constants,
        holds: norm_fn <= bound * (1.0 + 1e-12),
    })
}

/// Near-field term-by-term estimate for `f = e^{int}` and `N ≥ 2|n|`:
/// returns `(|f̂_{N,0}(m)|(1+|m|)^s, 2^{s-2}(|k|+1/2)^s/(|k|-1/2)²·(1+|n|)^s)`
/// with `m = n + kN`.
pub fn case_one_term(n: i64, k: i64, nodes: usize, s: f64) -> (f64, f64) {
    let m = n + k * nodes as i64;
    let lhs = if m == 0 {
        1.0
    } else {
        let x = PI * m as f64 / nodes as f64;
        let r = (PI * n as f64 / nodes as f64).sin();
        r * r / (x * x) * (1.0 + m.unsigned_abs() as f64).powf(s)
    };
    let ka = k.unsigned_abs() as f64;
    let rhs = 2f64.powf(s - 2.0) * (ka + 0.5).powf(s) / (ka - 0.5).powi(2)
        * (1.0 + n.unsigned_abs() as f64).powf(s);
    (lhs, rhs)
}
