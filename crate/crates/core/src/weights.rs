//! Beurling weights and the norm sandwich for derivatives.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fit::linear_fit;
use crate::series::FourierSeries;
use crate::special::factorial;

/// A weight `ω: Z → [1, ∞)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Weight {
    /// `(1+|n|)^s`.
    Polynomial { s: f64 },
    /// `(1+n)^s` for `n ≥ 0` and `exp(|n|^β)` for `n < 0`.
    OneSided { s: f64, beta: f64 },
    Table(TableWeight),
}

/// Tabulated weight on a contiguous index range.
#[derive(Debug, Clone, PartialEq)]
pub struct TableWeight {
    first: i64,
    values: Vec<f64>,
}

impl TableWeight {
    /// Values `ω(first), ω(first+1), ...`; every value must be finite and `≥ 1`.
    pub fn new(first: i64, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::parameter("weight table is empty"));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 1.0)) {
            return Err(Error::parameter(format!(
                "weight table entry at {} is {v}; values must be finite and >= 1",
                first + i as i64
            )));
        }
        Ok(Self { first, values })
    }

    pub fn range(&self) -> (i64, i64) {
        (self.first, self.first + self.values.len() as i64 - 1)
    }

    fn get(&self, n: i64) -> Option<f64> {
        let i = n - self.first;
        (i >= 0 && (i as usize) < self.values.len()).then(|| self.values[i as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightAxioms {
    pub submultiplicative: bool,
    pub regular: bool,
}

impl Weight {
    pub fn polynomial(s: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("polynomial weight needs finite s >= 0, got {s}")));
        }
        Ok(Weight::Polynomial { s })
    }

    pub fn one_sided(s: f64, beta: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::domain(format!("one-sided weight needs finite s >= 0, got {s}")));
        }
        if !(beta > 0.0 && beta < 1.0) {
            return Err(Error::domain(format!("one-sided weight needs beta in (0, 1), got {beta}")));
        }
        Ok(Weight::OneSided { s, beta })
    }

    /// `log ω(n)`; never overflows for the built-in families.
    pub fn log_value(&self, n: i64) -> Result<f64> {
        let a = n.unsigned_abs() as f64;
        match self {
            Weight::Polynomial { s } => Ok(s * a.ln_1p()),
            Weight::OneSided { s, beta } => Ok(if n >= 0 { s * a.ln_1p() } else { a.powf(*beta) }),
            Weight::Table(t) => t
                .get(n)
                .map(f64::ln)
                .ok_or_else(|| Error::parameter(format!("index {n} outside the weight table"))),
        }
    }

    pub fn value(&self, n: i64) -> Result<f64> {
        let v = self.log_value(n)?.exp();
        if !v.is_finite() {
            return Err(Error::Range(format!("weight overflows at n = {n}")));
        }
        Ok(v)
    }

    /// Exhaustive submultiplicativity on `|n|, |m| ≤ range` and regularity
    /// (`Σ log ω(n) / (1+n²) < ∞`).
    ///
    /// Regularity is analytic for the built-in families. For a table it is
    /// decided from the growth of `log ω`: a fitted power `|n|^a` with
    /// `a < 1` on the outer half of each side is taken as summable.
    pub fn axioms(&self, range: i64) -> Result<WeightAxioms> {
        if range < 1 {
            return Err(Error::parameter(format!("axiom range must be >= 1, got {range}")));
        }
        let (lo, hi) = match self {
            Weight::Table(t) => {
                let (a, b) = t.range();
                (a.max(-range), b.min(range))
            }
            _ => (-range, range),
        };
        let mut logs = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for n in lo..=hi {
            logs.push(self.log_value(n)?);
        }
        let log_at = |n: i64| logs[(n - lo) as usize];
        let mut submultiplicative = true;
        'outer: for n in lo..=hi {
            for m in lo..=hi {
                let k = n + m;
                if k < lo || k > hi {
                    continue;
                }
                let lhs = log_at(k);
                let rhs = log_at(n) + log_at(m);
                if lhs > rhs + 1e-12 * rhs.abs().max(1.0) {
                    submultiplicative = false;
                    break 'outer;
                }
            }
        }
        let regular = match self {
            Weight::Polynomial { .. } | Weight::OneSided { .. } => true,
            Weight::Table(t) => table_regular(t)?,
        };
        Ok(WeightAxioms { submultiplicative, regular })
    }
}

fn table_regular(t: &TableWeight) -> Result<bool> {
    let (lo, hi) = t.range();
    for side in [1i64, -1] {
        let extent = if side > 0 { hi } else { -lo };
        if extent < 8 {
            continue;
        }
        let mut x = Vec::new();
        let mut y = Vec::new();
        for a in (extent / 2).max(1)..=extent {
            let l = t.get(side * a).map(f64::ln).unwrap_or(0.0);
            if l > 1e-12 {
                x.push((a as f64).ln());
                y.push(l.ln());
            }
        }
        if x.len() >= 2 && linear_fit(&x, &y)?.slope >= 1.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub lhs: f64,
    pub mid: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Compares `‖f^{(p)}‖_{s-p}`, `‖f‖_s` and the integration-by-parts upper
/// bound, where `p = ⌊s⌋`.
pub fn norme_sandwich(f: &FourierSeries, s: f64) -> Result<Sandwich> {
    if !(s >= 1.0 && s.is_finite()) {
        return Err(Error::domain(format!("the sandwich needs s >= 1, got {s}")));
    }
    let p = s.floor() as u32;
    let lhs = f.derivative(p).sobolev_norm(s - p as f64);
    let mid = f.sobolev_norm(s);
    let two_pi = 2.0 * std::f64::consts::PI;
    let lead = 2f64.powi(p as i32) + two_pi.powi(p as i32) / factorial(p as usize + 1);
    let boundary: f64 = (0..p)
        .map(|j| two_pi.powi(j as i32) / factorial(j as usize + 1) * f.derivative_at_one(j).norm())
        .sum();
    let rhs = lead * lhs + boundary;
    let slack = 1e-12;
    let holds = lhs <= mid * (1.0 + slack) + slack && mid <= rhs * (1.0 + slack) + slack;
    Ok(Sandwich { lhs, mid, rhs, holds })
}
