//! Special functions and lattice sums used by the interpolation bounds.
//!
//! The Herz interpolant of a trigonometric polynomial has infinitely many
//! nonzero Fourier coefficients along each residue class `m ≡ r (mod N)`.
//! Their weighted norms reduce to sums of the form
//! `Σ_{k≥0} (k+a)^s / (k+b)^c`, which converge slowly when `c - s` is close
//! to one. Those sums are evaluated here exactly (to rounding) by a short
//! direct sum followed by a binomial expansion into Hurwitz zeta values.

/// Bernoulli numbers `B_2, B_4, ..., B_24`.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Hurwitz zeta function `ζ(σ, a) = Σ_{k≥0} (k+a)^{-σ}` for `σ > 1`, `a > 0`.
///
/// Euler–Maclaurin summation after shifting the argument past 20.
pub fn hurwitz_zeta(sigma: f64, a: f64) -> f64 {
    assert!(sigma > 1.0, "hurwitz_zeta needs sigma > 1, got {sigma}");
    assert!(a > 0.0, "hurwitz_zeta needs a > 0, got {a}");
    let shift = if a >= 20.0 { 0 } else { (20.0 - a).ceil() as usize };
    let mut head = 0.0;
    for k in 0..shift {
        head += (k as f64 + a).powf(-sigma);
    }
    let x = shift as f64 + a;
    let x_pow = x.powf(-sigma);
    let mut tail = x * x_pow / (sigma - 1.0) + 0.5 * x_pow;

    // term_j = B_{2j}/(2j)! * σ(σ+1)...(σ+2j-2) * x^{-σ-2j+1}
    let mut poch_over_fact = sigma / 2.0; // σ / 2!
    let mut x_term = x_pow / x; // x^{-σ-1}
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b * poch_over_fact * x_term;
        tail += term;
        if term.abs() < 1e-18 * tail.abs() {
            break;
        }
        let jj = (j + 1) as f64;
        // advance to j+1: multiply rising factorial by (σ+2j-1)(σ+2j), divide by (2j+1)(2j+2)
        poch_over_fact *=
            (sigma + 2.0 * jj - 1.0) * (sigma + 2.0 * jj) / ((2.0 * jj + 1.0) * (2.0 * jj + 2.0));
        x_term /= x * x;
    }
    head + tail
}

/// Riemann zeta for real `σ > 1`.
pub fn riemann_zeta(sigma: f64) -> f64 {
    hurwitz_zeta(sigma, 1.0)
}

/// Generalized binomial coefficient `C(s, j)` for real `s`.
pub fn binomial(s: f64, j: usize) -> f64 {
    let mut c = 1.0;
    for i in 0..j {
        c *= (s - i as f64) / (i as f64 + 1.0);
    }
    c
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `Σ_{k≥0} (k+a)^s / (k+b)^c` for `a, b > 0` and `c - s > 1`.
pub fn shifted_ratio_sum(s: f64, c: f64, a: f64, b: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "shifted_ratio_sum needs a, b > 0");
    assert!(c - s > 1.0, "shifted_ratio_sum diverges for c - s <= 1");
    let d = a - b;
    let start = 32usize.max((64.0 * d.abs() - b).ceil().max(0.0) as usize);
    let mut head = 0.0;
    for k in 0..start {
        let k = k as f64;
        head += (k + a).powf(s) / (k + b).powf(c);
    }
    let base = start as f64 + b;
    let mut tail = 0.0;
    let mut d_pow = 1.0;
    for j in 0..64 {
        let coef = binomial(s, j) * d_pow;
        if coef == 0.0 {
            break;
        }
        let term = coef * hurwitz_zeta(c - s + j as f64, base);
        tail += term;
        if term.abs() <= 1e-18 * (head + tail).abs() {
            break;
        }
        d_pow *= d;
    }
    head + tail
}

/// `Σ_{m ≡ r (mod n), m ≠ 0} m^{-q}` for integer `q ≥ 2` and `0 < r < n`.
pub fn residue_power_sum(q: u32, r: u64, n: u64) -> f64 {
    assert!(q >= 2 && r > 0 && r < n);
    let x = r as f64 / n as f64;
    let sign = if q.is_multiple_of(2) { 1.0 } else { -1.0 };
    (n as f64).powi(-(q as i32)) * (hurwitz_zeta(q as f64, x) + sign * hurwitz_zeta(q as f64, 1.0 - x))
}
