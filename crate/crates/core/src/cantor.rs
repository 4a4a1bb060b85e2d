//! Perfect symmetric sets on the circle.
//!
//! For `0 < ξ < 1/2` the set `E_ξ` consists of the points
//! `exp(2iπ(1-ξ) Σ ε_k ξ^{k-1})` with binary digits `ε_k`. Its level-`n`
//! cover `F_n` is the union of the `2^n` closed arcs indexed by the first `n`
//! digits, each of length `2πξ^n`, and `E_ξ = ∩ F_n`.
//!
//! When `ξ = 1/q` for an integer `q ≥ 3` every level-`n` endpoint is an
//! integer multiple of `2π/q^n`; the construction then keeps the integer
//! numerators so that endpoint coordinates are reproduced bit-for-bit by
//! every routine that needs them.

use std::f64::consts::{LN_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};

const TAU: f64 = 2.0 * PI;

/// Largest level materialized by default (`2^22` arcs).
pub const DEFAULT_MAX_LEVEL: u32 = 22;

/// A point of the circle, stored as radians reduced to `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Result<Self> {
        if !radians.is_finite() {
            return Err(Error::parameter(format!("angle must be finite, got {radians}")));
        }
        let mut v = radians.rem_euclid(TAU);
        if v >= TAU {
            v = 0.0;
        }
        Ok(Angle(v))
    }

    /// `2π · num/den`, computed as a single correctly rounded quotient.
    pub fn from_turns(num: u64, den: u64) -> Self {
        let v = TAU * (num as f64 / den as f64);
        if v >= TAU {
            Angle(0.0)
        } else {
            Angle(v)
        }
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Closed arc `[start, start + length]`, never wrapping past `2π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Arc {
    pub start: f64,
    pub length: f64,
}

impl Arc {
    pub fn end(&self) -> f64 {
        self.start + self.length
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.start && t <= self.end()
    }
}

/// Distance convention on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    #[default]
    ArcLength,
    Chordal,
}

impl Metric {
    fn apply(self, arc_distance: f64) -> f64 {
        match self {
            Metric::ArcLength => arc_distance,
            Metric::Chordal => 2.0 * (0.5 * arc_distance).sin(),
        }
    }
}

/// Where the atoms of the discretized Cantor–Lebesgue measure sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AtomPlacement {
    #[default]
    LeftEndpoint,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Atom {
    pub angle: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscreteMeasure {
    pub atoms: Vec<Atom>,
    pub total_mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSeries {
    pub converges: bool,
    pub threshold: f64,
    pub closed_form_sum: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IntegralCriterion {
    pub converges: bool,
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceEnclosure {
    pub lower: f64,
    pub upper: f64,
}

impl DistanceEnclosure {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// A complementary interval of a level cover together with the stage that
/// removed it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gap {
    pub stage: u32,
    pub start: f64,
    pub length: f64,
}

/// `E_ξ` together with the bookkeeping needed to build its covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerfectSymmetricSet {
    xi: f64,
    q: Option<u32>,
    max_level: u32,
}

impl PerfectSymmetricSet {
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi < 0.5) {
            return Err(Error::domain(format!("xi must lie in (0, 1/2), got {xi}")));
        }
        Ok(Self { xi, q: None, max_level: DEFAULT_MAX_LEVEL })
    }

    /// `E_{1/q}` with exact rational endpoints.
    pub fn from_q(q: u32) -> Result<Self> {
        if q < 3 {
            return Err(Error::domain(format!("q must be at least 3, got {q}")));
        }
        Ok(Self { xi: 1.0 / q as f64, q: Some(q), max_level: DEFAULT_MAX_LEVEL })
    }

    /// Accepts `1/q`, a general fraction `a/b`, or a decimal.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let num: u64 = num
                .trim()
                .parse()
                .map_err(|_| Error::parameter(format!("bad xi numerator in {text:?}")))?;
            let den: u64 = den
                .trim()
                .parse()
                .map_err(|_| Error::parameter(format!("bad xi denominator in {text:?}")))?;
            if den == 0 {
                return Err(Error::parameter("xi denominator is zero"));
            }
            if num == 1 && den <= u32::MAX as u64 {
                return Self::from_q(den as u32);
            }
            return Self::new(num as f64 / den as f64);
        }
        let xi: f64 = text
            .parse()
            .map_err(|_| Error::parameter(format!("cannot parse xi from {text:?}")))?;
        Self::new(xi)
    }

    pub fn with_max_level(mut self, max_level: u32) -> Self {
        self.max_level = max_level.min(40);
        self
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn q(&self) -> Option<u32> {
        self.q
    }

    pub fn max_level(&self) -> u32 {
        self.max_level
    }

    /// `b(ξ) = (log(1/ξ) - log 2) / (2 log(1/ξ) - log 2)`.
    pub fn critical_exponent(&self) -> f64 {
        critical_exponent(self.xi)
    }

    fn check_level(&self, n: u32) -> Result<()> {
        if n > self.max_level {
            return Err(Error::resource(format!(
                "level {n} exceeds the configured maximum {} (2^{n} arcs)",
                self.max_level
            )));
        }
        Ok(())
    }

    /// Offset of the right child at stage `k` (`k ≥ 1`): `2π(1-ξ)ξ^{k-1}`.
    fn right_offset(&self, k: u32) -> f64 {
        TAU * (1.0 - self.xi) * self.xi.powi(k as i32 - 1)
    }

    fn arc_length(&self, k: u32) -> f64 {
        match self.q {
            Some(q) => TAU * (1.0 / (q as f64).powi(k as i32)),
            None => TAU * self.xi.powi(k as i32),
        }
    }

    /// All `2^n` arcs of the level-`n` cover, sorted by start angle.
    pub fn level_cover(&self, n: u32) -> Result<CantorLevel> {
        self.check_level(n)?;
        let length = self.arc_length(n);
        let (arcs, exact) = match self.q {
            Some(q) => {
                let den = (q as u64).pow(n);
                let nums = exact_numerators(q, n);
                let arcs = nums
                    .iter()
                    .map(|&num| Arc { start: Angle::from_turns(num, den).radians(), length })
                    .collect();
                (arcs, Some(ExactEndpoints { den, nums }))
            }
            None => {
                let mut starts = vec![0.0f64];
                for k in 1..=n {
                    starts = interleave_children(&starts, self.right_offset(k));
                }
                (starts.into_iter().map(|start| Arc { start, length }).collect(), None)
            }
        };
        Ok(CantorLevel { level: n, xi: self.xi, arcs, exact })
    }

    /// Convergence of `Σ |L_n|^γ` over the contiguous arcs.
    pub fn gap_analysis(&self, gamma: f64) -> GapSeries {
        let threshold = LN_2 / (1.0 / self.xi).ln();
        let converges = gamma > threshold;
        let closed_form_sum = converges.then(|| {
            let ratio = 2.0 * self.xi.powf(gamma);
            (TAU * (1.0 - 2.0 * self.xi)).powf(gamma) / (2.0 * self.xi.powf(gamma)) * ratio
                / (1.0 - ratio)
        });
        GapSeries { converges, threshold, closed_form_sum }
    }

    /// Convergence of `∫ d(e^{it}, E_ξ)^{-δ} dt`.
    pub fn integral_criterion(&self, delta: f64) -> IntegralCriterion {
        let threshold = 1.0 - LN_2 / (1.0 / self.xi).ln();
        IntegralCriterion { converges: delta < threshold, threshold }
    }

    /// Partial integrals of `d(t, E_ξ)^{-δ}` over the gaps removed at
    /// stages `1..=n`, integrated exactly on each gap.
    ///
    /// Entry `k-1` holds the integral over all gaps of stage at most `k`.
    /// These stabilize geometrically exactly when the full integral
    /// converges; for `δ ≥ 1` each gap already contributes `+∞`.
    pub fn integral_partial_sums(&self, delta: f64, n: u32) -> Vec<f64> {
        let mut out = Vec::with_capacity(n as usize);
        let mut acc = 0.0;
        for k in 1..=n {
            let gap = TAU * self.xi.powi(k as i32 - 1) * (1.0 - 2.0 * self.xi);
            let per_gap = if delta < 1.0 {
                2.0 * (0.5 * gap).powf(1.0 - delta) / (1.0 - delta)
            } else {
                f64::INFINITY
            };
            acc += 2f64.powi(k as i32 - 1) * per_gap;
            out.push(acc);
        }
        out
    }

    /// Enclosure of the distance from `t` to `E_ξ` using the level-`n` cover.
    ///
    /// Outside the cover the nearest point of the set is a gap endpoint and
    /// the enclosure collapses to the exact value; inside a level-`n` arc the
    /// lower bound is 0 and the upper bound is the distance to the arc's
    /// endpoints.
    pub fn distance_to_set(&self, t: Angle, n: u32, metric: Metric) -> Result<DistanceEnclosure> {
        if n == 0 {
            return Err(Error::parameter("distance enclosure needs level n >= 1"));
        }
        let t = t.radians();
        let (lower, upper) = match self.q {
            Some(q) => self.descend_exact(q, t, n),
            None => self.descend_float(t, n),
        };
        Ok(DistanceEnclosure { lower: metric.apply(lower), upper: metric.apply(upper) })
    }

    fn descend_float(&self, t: f64, n: u32) -> (f64, f64) {
        let mut a = 0.0;
        for k in 1..=n {
            let len = self.arc_length(k);
            let left_end = a + len;
            let right_start = a + self.right_offset(k);
            if t <= left_end {
                continue;
            } else if t >= right_start {
                a = right_start;
            } else {
                let d = (t - left_end).min(right_start - t);
                return (d, d);
            }
        }
        let len = self.arc_length(n);
        (0.0, (t - a).min(a + len - t).max(0.0))
    }

    fn descend_exact(&self, q: u32, t: f64, n: u32) -> (f64, f64) {
        let q = q as u64;
        let mut num = 0u64;
        let mut den = 1u64;
        for _ in 1..=n {
            // children of [num/den, (num+1)/den] at denominator den*q
            num *= q;
            den *= q;
            let left_end = Angle::from_turns(num + 1, den).radians();
            let right_start = Angle::from_turns(num + q - 1, den).radians();
            if t <= left_end {
                continue;
            } else if t >= right_start {
                num += q - 1;
            } else {
                let d = (t - left_end).min(right_start - t);
                return (d, d);
            }
        }
        let a = Angle::from_turns(num, den).radians();
        let b = if num + 1 == den { TAU } else { Angle::from_turns(num + 1, den).radians() };
        (0.0, (t - a).min(b - t).max(0.0))
    }

    /// Cantor–Lebesgue measure discretized at level `m`, total mass `2π`.
    pub fn cantor_measure(&self, m: u32, placement: AtomPlacement) -> Result<DiscreteMeasure> {
        self.cantor_measure_with_mass(m, placement, TAU)
    }

    pub fn cantor_measure_with_mass(
        &self,
        m: u32,
        placement: AtomPlacement,
        total_mass: f64,
    ) -> Result<DiscreteMeasure> {
        if !(total_mass > 0.0) || !total_mass.is_finite() {
            return Err(Error::parameter(format!("total mass must be positive, got {total_mass}")));
        }
        let cover = self.level_cover(m)?;
        let mass = total_mass / 2f64.powi(m as i32);
        let atoms = cover
            .arcs
            .iter()
            .map(|arc| {
                let angle = match placement {
                    AtomPlacement::LeftEndpoint => arc.start,
                    AtomPlacement::Midpoint => arc.start + 0.5 * arc.length,
                };
                Atom { angle, mass }
            })
            .collect();
        Ok(DiscreteMeasure { atoms, total_mass })
    }
}

/// `b(ξ)` for `ξ ∈ (0, 1/2]`; equals 0 at `ξ = 1/2`.
pub fn critical_exponent(xi: f64) -> f64 {
    let l = (1.0 / xi).ln();
    (l - LN_2) / (2.0 * l - LN_2)
}

fn interleave_children(starts: &[f64], off: f64) -> Vec<f64> {
    // Index i at level k-1 has binary digits ε_1..ε_{k-1}; appending ε_k as
    // the least significant digit keeps the list sorted.
    let mut next = Vec::with_capacity(starts.len() * 2);
    for &a in starts {
        next.push(a);
        next.push(a + off);
    }
    next
}

/// Start numerators (over `q^n`) of the level-`n` arcs of `E_{1/q}`.
fn exact_numerators(q: u32, n: u32) -> Vec<u64> {
    let q = q as u64;
    let mut nums = vec![0u64];
    for _ in 0..n {
        let mut next = Vec::with_capacity(nums.len() * 2);
        for &a in &nums {
            next.push(a * q);
            next.push(a * q + q - 1);
        }
        nums = next;
    }
    nums
}

/// The `2^n` arcs of one level cover.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorLevel {
    pub level: u32,
    pub xi: f64,
    pub arcs: Vec<Arc>,
    exact: Option<ExactEndpoints>,
}

/// Start numerators over the common denominator `q^n`.
#[derive(Debug, Clone, PartialEq)]
struct ExactEndpoints {
    den: u64,
    nums: Vec<u64>,
}

impl CantorLevel {
    /// Right end of arc `i`, exact to rounding when `ξ = 1/q`.
    pub fn arc_end(&self, i: usize) -> f64 {
        match &self.exact {
            Some(e) if e.nums[i] + 1 == e.den => TAU,
            Some(e) => Angle::from_turns(e.nums[i] + 1, e.den).radians(),
            None => self.arcs[i].end(),
        }
    }

    /// Start numerators over `q^n` when the set has rational ratio `1/q`.
    pub fn exact_numerators(&self) -> Option<(&[u64], u64)> {
        self.exact.as_ref().map(|e| (e.nums.as_slice(), e.den))
    }

    /// Sorted arc endpoints; `2π` is reported as the right end of the last arc.
    pub fn endpoints(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(self.arcs.len() * 2);
        for (i, arc) in self.arcs.iter().enumerate() {
            pts.push(arc.start);
            pts.push(self.arc_end(i));
        }
        pts
    }

    /// Open complementary intervals between consecutive arcs, each tagged
    /// with the construction stage that produced it.
    pub fn gaps(&self) -> Vec<Gap> {
        let mut gaps = Vec::with_capacity(self.arcs.len().saturating_sub(1));
        for i in 1..self.arcs.len() {
            let start = self.arc_end(i - 1);
            let length = self.arcs[i].start - start;
            gaps.push(Gap { stage: stage_of_gap(self.xi, length, self.level), start, length });
        }
        gaps
    }

    /// Whether every arc lies inside exactly one arc of `coarser`.
    pub fn nests_in(&self, coarser: &CantorLevel) -> bool {
        let tol = 1e-12;
        self.arcs.iter().all(|arc| {
            coarser
                .arcs
                .iter()
                .filter(|outer| arc.start >= outer.start - tol && arc.end() <= outer.end() + tol)
                .count()
                == 1
        })
    }

    pub fn contains(&self, t: f64) -> bool {
        let idx = self.arcs.partition_point(|a| a.start <= t);
        idx > 0 && t <= self.arc_end(idx - 1)
    }
}

fn stage_of_gap(xi: f64, length: f64, max_stage: u32) -> u32 {
    let mut best = 1;
    let mut best_err = f64::INFINITY;
    for k in 1..=max_stage.max(1) {
        let expected = TAU * xi.powi(k as i32 - 1) * (1.0 - 2.0 * xi);
        let err = ((length - expected) / expected).abs();
        if err < best_err {
            best_err = err;
            best = k;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn level_one_triadic() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let lvl = set.level_cover(1).unwrap();
        assert_eq!(lvl.arcs.len(), 2);
        assert!(close(lvl.arcs[0].start, 0.0, 0.0));
        assert!(close(lvl.arcs[0].length, TAU / 3.0, 1e-15));
        assert!(close(lvl.arcs[1].start, 4.0 * PI / 3.0, 1e-15));
        assert!(close(lvl.arcs[1].end(), TAU, 1e-15));
    }

    #[test]
    fn level_zero_is_whole_circle() {
        let set = PerfectSymmetricSet::new(1.0 / 3.0).unwrap();
        let lvl = set.level_cover(0).unwrap();
        assert_eq!(lvl.arcs, vec![Arc { start: 0.0, length: TAU }]);
        assert_eq!(lvl.endpoints(), vec![0.0, TAU]);
    }

    #[test]
    fn quarter_level_two() {
        let set = PerfectSymmetricSet::from_q(4).unwrap();
        let lvl = set.level_cover(2).unwrap();
        assert_eq!(lvl.arcs.len(), 4);
        assert_eq!(lvl.arcs[0].start, 0.0);
        for arc in &lvl.arcs {
            assert!(close(arc.length, TAU / 16.0, 1e-15));
        }
        // float route agrees with the exact route
        let float = PerfectSymmetricSet::new(0.25).unwrap().level_cover(2).unwrap();
        for (a, b) in lvl.arcs.iter().zip(&float.arcs) {
            assert!(close(a.start, b.start, 1e-14));
        }
    }

    #[test]
    fn level_too_large_is_resource_error() {
        let set = PerfectSymmetricSet::from_q(3).unwrap().with_max_level(10);
        assert!(matches!(set.level_cover(11), Err(Error::Resource(_))));
    }

    #[test]
    fn domain_checks() {
        assert!(PerfectSymmetricSet::new(0.5).is_err());
        assert!(PerfectSymmetricSet::new(0.0).is_err());
        assert!(PerfectSymmetricSet::from_q(2).is_err());
        let s = PerfectSymmetricSet::parse("1/3").unwrap();
        assert_eq!(s.q(), Some(3));
        let s = PerfectSymmetricSet::parse("0.3").unwrap();
        assert_eq!(s.q(), None);
        assert!(PerfectSymmetricSet::parse("2/3").is_err());
    }

    #[test]
    fn critical_exponent_values() {
        // reference value from a 30-digit evaluation of the closed form
        assert!(close(critical_exponent(1.0 / 3.0), 0.269_577_289_690_815, 1e-14));
        assert!(close(critical_exponent(0.25), 1.0 / 3.0, 1e-15));
        assert_eq!(critical_exponent(0.5), 0.0);
    }

    #[test]
    fn gap_series_cases() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let g = set.gap_analysis(1.0);
        assert!(g.converges);
        assert!(close(g.closed_form_sum.unwrap(), TAU, 1e-13));
        let boundary = set.gap_analysis(LN_2 / 3f64.ln());
        assert!(!boundary.converges);
        assert!(boundary.closed_form_sum.is_none());
        assert!(!set.gap_analysis(0.5).converges);
    }

    #[test]
    fn integral_cases() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let c = set.integral_criterion(0.3);
        assert!(c.converges);
        assert!(close(c.threshold, 0.369_070_246_428_542_6, 1e-14));
        assert!(!set.integral_criterion(0.4).converges);
        let near_half = PerfectSymmetricSet::new(0.5 - 1e-7).unwrap();
        assert!(!near_half.integral_criterion(0.01).converges);
        assert!(near_half.integral_criterion(0.01).threshold < 1e-6);
    }

    #[test]
    fn partial_sums_track_verdict() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let conv = set.integral_partial_sums(0.3, 40);
        // stage increments shrink by 2ξ^{1-δ} < 1
        let inc_late = conv[39] - conv[38];
        assert!(inc_late < 0.1 * (conv[1] - conv[0]));
        let div = set.integral_partial_sums(0.45, 40);
        assert!(div[39] - div[38] >= div[1] - div[0]);
        assert!(set.integral_partial_sums(1.2, 3)[0].is_infinite());
    }

    #[test]
    fn distance_center_of_big_gap() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let d = set.distance_to_set(Angle::new(PI).unwrap(), 6, Metric::ArcLength).unwrap();
        assert!(close(d.lower, PI / 3.0, 1e-14));
        assert!(close(d.upper, PI / 3.0, 1e-14));
    }

    #[test]
    fn distance_zero_on_endpoints() {
        for q in [3, 4, 7] {
            let set = PerfectSymmetricSet::from_q(q).unwrap();
            let d = set.distance_to_set(Angle::new(0.0).unwrap(), 5, Metric::ArcLength).unwrap();
            assert_eq!((d.lower, d.upper), (0.0, 0.0));
            let lvl = set.level_cover(5).unwrap();
            for t in lvl.endpoints() {
                let d = set.distance_to_set(Angle::new(t).unwrap(), 5, Metric::ArcLength).unwrap();
                assert_eq!((d.lower, d.upper), (0.0, 0.0), "q = {q}, t = {t}");
            }
        }
    }

    #[test]
    fn float_endpoints_within_rounding() {
        let set = PerfectSymmetricSet::new(0.3).unwrap();
        let lvl = set.level_cover(5).unwrap();
        for t in lvl.endpoints() {
            let d = set.distance_to_set(Angle::new(t).unwrap(), 5, Metric::ArcLength).unwrap();
            assert!(d.upper <= 1e-15, "t = {t}: {d:?}");
        }
    }

    #[test]
    fn chordal_is_monotone_image() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let d = set.distance_to_set(Angle::new(PI).unwrap(), 3, Metric::Chordal).unwrap();
        assert!(close(d.upper, 2.0 * (PI / 6.0).sin(), 1e-14));
    }

    #[test]
    fn measure_atoms() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let mu = set.cantor_measure(1, AtomPlacement::LeftEndpoint).unwrap();
        assert_eq!(mu.atoms.len(), 2);
        assert_eq!(mu.atoms[0].angle, 0.0);
        assert!(close(mu.atoms[1].angle, 4.0 * PI / 3.0, 1e-15));
        assert!(close(mu.atoms[0].mass, PI, 1e-15));
        let mu0 = set.cantor_measure(0, AtomPlacement::LeftEndpoint).unwrap();
        assert_eq!(mu0.atoms, vec![Atom { angle: 0.0, mass: TAU }]);
        for m in 0..8 {
            let mu = set.cantor_measure(m, AtomPlacement::Midpoint).unwrap();
            let total: f64 = mu.atoms.iter().map(|a| a.mass).sum();
            assert!(close(total, TAU, 1e-12));
        }
    }

    #[test]
    fn contains_and_gaps() {
        let set = PerfectSymmetricSet::from_q(3).unwrap();
        let lvl = set.level_cover(2).unwrap();
        assert!(lvl.contains(0.1));
        assert!(!lvl.contains(PI));
        let gaps = lvl.gaps();
        assert_eq!(gaps.len(), 3);
        assert_eq!(gaps.iter().filter(|g| g.stage == 1).count(), 1);
        assert_eq!(gaps.iter().filter(|g| g.stage == 2).count(), 2);
    }
}
