//! The compactly supported piecewise-polynomial kernel `Δ_{p,ε}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::factorial;

/// `Δ_{p,ε}(t) = (-1)^p (ε - t)^{p+1} / ((p+1)! ε)` on `[0, ε]`, zero on
/// `[ε, π]`, extended by `Δ(t) = (-1)^p Δ(-t)` and `2π`-periodicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaKernel {
    p: u32,
    eps: f64,
}

/// Below this value of `|mε|` the Fourier integral is summed as a power series.
const SERIES_CUTOFF: f64 = 4.0;

impl DeltaKernel {
    pub fn new(p: u32, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps <= PI) {
            return Err(Error::domain(format!("kernel width must lie in (0, π], got {eps}")));
        }
        Ok(Self { p, eps })
    }

    /// Kernel attached to the grid of `n` equispaced nodes (`ε = 2π/n`).
    pub fn for_nodes(p: u32, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("need at least 2 nodes for a kernel of width 2π/N, got {n}")));
        }
        Self::new(p, 2.0 * PI / n as f64)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `Δ(t)`; `t = 0` is evaluated from the right-hand branch.
    pub fn eval(&self, t: f64) -> f64 {
        self.derivative_eval(0, t)
    }

    /// `Δ^{(j)}(t)` for `j ≤ p + 1`, away from the break points `0, ±ε`.
    pub fn derivative_eval(&self, j: u32, t: f64) -> f64 {
        assert!(j <= self.p + 1, "derivative order {j} exceeds p + 1 = {}", self.p + 1);
        let t = reduce(t);
        let deg = (self.p + 1 - j) as i32;
        let norm = factorial(deg as usize) * self.eps;
        if (0.0..self.eps).contains(&t) {
            let sign = if (self.p + j).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * (self.eps - t).powi(deg) / norm
        } else if t < 0.0 && t > -self.eps {
            (self.eps + t).powi(deg) / norm
        } else {
            0.0
        }
    }

    /// `Δ̂(m) = (1/2π) ∫ Δ(t) e^{-imt} dt`.
    pub fn fourier(&self, m: i64) -> Complex64 {
        if self.p == 0 {
            let x = 0.5 * m as f64 * self.eps;
            return Complex64::new(self.eps / (2.0 * PI) * sinc(x).powi(2), 0.0);
        }
        let n = self.p + 1;
        let c = sign(self.p) / (factorial(n as usize) * self.eps);
        let me = m as f64 * self.eps;
        let a = Complex64::new(0.0, m as f64);
        let right = Complex64::from_polar(1.0, -me) * moment(n, self.eps, a);
        let left = Complex64::from_polar(1.0, me) * moment(n, self.eps, -a) * sign(self.p);
        (right + left) * (c / (2.0 * PI))
    }
}

/// `∫_0^ε u^n e^{au} du` for purely imaginary `a`.
fn moment(n: u32, eps: f64, a: Complex64) -> Complex64 {
    let ae = a * eps;
    if ae.norm() < SERIES_CUTOFF {
        // Σ_k a^k ε^{n+1+k} / (k! (n+1+k))
        let mut term = Complex64::new(eps.powi(n as i32 + 1), 0.0);
        let mut acc = term / (n as f64 + 1.0);
        for k in 1..200 {
            term *= ae / k as f64;
            let add = term / (n as f64 + 1.0 + k as f64);
            acc += add;
            if add.norm() < 1e-18 * acc.norm().max(1e-300) {
                break;
            }
        }
        acc
    } else {
        // repeated integration by parts
        let mut upper = Complex64::new(0.0, 0.0);
        let mut falling = 1.0;
        let mut a_pow = a;
        for k in 0..=n {
            let sgn = if k % 2 == 0 { 1.0 } else { -1.0 };
            upper += sgn * falling * eps.powi((n - k) as i32) / a_pow;
            falling *= (n - k) as f64;
            a_pow *= a;
        }
        let lower = sign(n) * factorial(n as usize) / a.powu(n + 1);
        Complex64::from_polar(1.0, ae.im) * upper - lower
    }
}

fn sign(k: u32) -> f64 {
    if k.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

pub(crate) fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Representative of `t` in `[-π, π)`.
fn reduce(t: f64) -> f64 {
    let r = (t + PI).rem_euclid(2.0 * PI) - PI;
    if r >= PI {
        r - 2.0 * PI
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Composite 5-point Gauss–Legendre quadrature of `f` on `[a, b]`.
    fn gauss(f: impl Fn(f64) -> Complex64, a: f64, b: f64, panels: usize) -> Complex64 {
        let x = [0.0, 0.538_469_310_105_683_1, -0.538_469_310_105_683_1, 0.906_179_845_938_664, -0.906_179_845_938_664];
        let w = [0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1, 0.236_926_885_056_189_1];
        let h = (b - a) / panels as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            let mid = a + (i as f64 + 0.5) * h;
            for (xi, wi) in x.iter().zip(&w) {
                acc += f(mid + 0.5 * h * xi) * (wi * 0.5 * h);
            }
        }
        acc
    }

    fn quadrature(k: &DeltaKernel, m: i64) -> Complex64 {
        let e = k.eps();
        let f = |t: f64| k.eval(t) * Complex64::from_polar(1.0, -(m as f64) * t);
        let panels = 64 + 4 * m.unsigned_abs() as usize;
        (gauss(f, 0.0, e, panels) + gauss(f, -e, 0.0, panels)) / (2.0 * PI)
    }

    #[test]
    fn values_at_landmarks() {
        let k = DeltaKernel::new(0, 0.7).unwrap();
        assert_eq!(k.eval(0.0), 1.0);
        assert_eq!(k.eval(0.7), 0.0);
        assert!((k.eval(0.35) - 0.5).abs() < 1e-15);
        assert!((k.eval(-0.35) - 0.5).abs() < 1e-15);
        let k1 = DeltaKernel::new(1, 0.7).unwrap();
        assert!((k1.eval(0.0) + 0.35).abs() < 1e-15);
        assert!((k1.eval(-0.2) + k1.eval(0.2)).abs() < 1e-15);
        assert_eq!(k1.eval(2.0), 0.0);
        assert!((k.eval(0.35 + 2.0 * PI) - 0.5).abs() < 1e-13);
    }

    #[test]
    fn p_fold_derivative_is_hat() {
        for p in 0..=3 {
            let k = DeltaKernel::new(p, 1.1).unwrap();
            let hat = DeltaKernel::new(0, 1.1).unwrap();
            for i in 0..100 {
                let t = -3.1 + 0.0621 * i as f64;
                assert!((k.derivative_eval(p, t) - hat.eval(t)).abs() < 1e-14, "p={p} t={t}");
            }
        }
    }

    #[test]
    fn hat_closed_form_values() {
        let e = 2.0 * PI / 8.0;
        let k = DeltaKernel::new(0, e).unwrap();
        assert!((k.fourier(0).re - e / (2.0 * PI)).abs() < 1e-16);
        assert!(k.fourier(8).norm() < 1e-17);
    }

    #[test]
    fn higher_order_coefficients_match_quadrature() {
        for p in 1..=3 {
            for &e in &[0.05, 0.4, 1.3, PI] {
                let k = DeltaKernel::new(p, e).unwrap();
                for m in [-40i64, -7, -1, 0, 1, 2, 3, 5, 11, 60] {
                    let got = k.fourier(m);
                    let want = quadrature(&k, m);
                    assert!((got - want).norm() < 1e-12, "p={p} e={e} m={m}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn odd_kernel_has_zero_mean() {
        let k = DeltaKernel::new(1, 0.9).unwrap();
        assert!(k.fourier(0).norm() < 1e-16);
    }

    #[test]
    fn rejects_bad_width() {
        assert!(DeltaKernel::new(0, 0.0).is_err());
        assert!(DeltaKernel::new(0, 4.0).is_err());
    }
}
