//! Point regularizers `u_n(z) = ((z - ζ) / (z - ζ(1 + 1/n)))^{p+1}`.
//!
//! `u_n` is analytic on `|z| < 1 + 1/n`, vanishes to order `p+1` at `ζ` and
//! tends to 1 away from `ζ`. Its Taylor coefficients have a closed form:
//! with `w = ζ(1+1/n)` and `a = 1/(n+1)`,
//! `(z-ζ)/(z-w) = 1 - a Σ_{k≥0} (z/w)^k`, and raising to the power `p+1`
//! gives `Σ_j C(p+1, j)(-a)^j (1 - z/w)^{-j}`.

use num_complex::Complex64;
use serde::Serialize;

use crate::cantor::Angle;
use crate::error::{Error, Result};
use crate::series::FourierSeries;

/// Taylor coefficients of `u_n` up to degree `m`.
pub fn point_regularizer(zeta: Angle, s: f64, n: u64, m: usize) -> Result<FourierSeries> {
    if n == 0 {
        return Err(Error::parameter("regularizer index n must be positive"));
    }
    if !(s >= 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("regularizer needs s >= 0, got {s}")));
    }
    let ratio = 1.0 + 1.0 / n as f64;
    let tail = (-(m as f64) * ratio.ln()).exp();
    if !(tail < 1e-12) {
        return Err(Error::precision(format!(
            "truncation M = {m} leaves a geometric tail of {tail:.3e} for n = {n}; need M >= {}",
            (12.0 * std::f64::consts::LN_10 / ratio.ln()).ceil()
        )));
    }
    let power = s.floor() as usize + 1;
    let a = 1.0 / (n as f64 + 1.0);
    // coefficient of x^k in Σ_j C(P, j) (-a)^j (1-x)^{-j}, x = z/w
    let mut binom_p = vec![1.0; power + 1];
    for j in 1..=power {
        binom_p[j] = binom_p[j - 1] * (power - j + 1) as f64 / j as f64;
    }
    let w_inv = Complex64::from_polar(1.0 / ratio, -zeta.radians());
    let mut coeffs = Vec::with_capacity(m + 1);
    let mut w_pow = Complex64::new(1.0, 0.0);
    // multiset counts C(k+j-1, j-1) for j = 1..=P, updated in k
    let mut counts = vec![1.0; power + 1];
    for k in 0..=m {
        let mut c = if k == 0 { 1.0 } else { 0.0 };
        let mut neg_a = 1.0;
        for j in 1..=power {
            neg_a *= -a;
            c += binom_p[j] * neg_a * counts[j];
        }
        coeffs.push(w_pow * c);
        w_pow *= w_inv;
        for (j, count) in counts.iter_mut().enumerate().skip(1) {
            // C(k+j, j-1) = C(k+j-1, j-1) · (k+j) / (k+1)
            *count *= (k + j) as f64 / (k + 1) as f64;
        }
    }
    Ok(FourierSeries::from_taylor(&coeffs))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularizerDefect {
    pub n: u64,
    pub defect: f64,
    pub regularizer_norm0: f64,
}

/// `‖u_n f - f‖_s` for each `n`, with `M` chosen adaptively.
pub fn regularizer_defects(
    f: &FourierSeries,
    zeta: Angle,
    s: f64,
    ns: &[u64],
) -> Result<Vec<RegularizerDefect>> {
    ns.iter()
        .map(|&n| {
            let m = adaptive_truncation(n, s);
            let u = point_regularizer(zeta, s, n, m)?;
            let defect = (&u.multiply(f) - f).sobolev_norm(s);
            Ok(RegularizerDefect { n, defect, regularizer_norm0: u.l1_norm() })
        })
        .collect()
}

/// Truncation large enough that the polynomially weighted geometric tail
/// of `u_n` is below `1e-12`.
pub fn adaptive_truncation(n: u64, s: f64) -> usize {
    let log_ratio = (1.0 + 1.0 / n as f64).ln();
    let p = s.floor() + 1.0;
    let mut m = (30.0 / log_ratio).ceil();
    // grow until k^{p+s} ρ^{-k} is negligible at the cut
    while (p + s) * m.ln() - m * log_ratio > -30.0 {
        m *= 1.25;
    }
    m as usize
}
