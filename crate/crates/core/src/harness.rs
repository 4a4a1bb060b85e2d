//! Command-line experiments over every module of the crate.
//!
//! Each subcommand validates its parameters, runs one experiment and writes a
//! JSON record (stdout or `--json`) plus an optional CSV curve. Records carry
//! [`SCHEMA_VERSION`] and the seed. Exit codes: 0 ok, 1 a checked inequality
//! failed, 2 usage, 3 resource or precision failure.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cantor::{AtomPlacement, Metric, PerfectSymmetricSet};
use crate::error::{Error, ErrorCategory, Result};
use crate::fit::growth_exponent_fit;
use crate::herz::{bound_constants, convergence_study, cover_residual, herz_bound_with, ResidueWeights};
use crate::model::{
    inner_from_measure, inverse_power_lower_bound, projection_norms, refinement_gap, RadiusPolicy,
};
use crate::outer::{
    admissible_parameters, annihilation_residual, inverse_power_bound, outer_from_modulus_with,
    LogModulusProfile, OuterApprox, OuterOptions, DEFAULT_CLAMP,
};
use crate::series::FourierSeries;
use crate::weights::{norme_sandwich, Weight};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed_ca27;

#[derive(Debug, Parser)]
#[command(name = "cantor-spectral", version, about = "Experiments on perfect symmetric sets and weighted algebras")]
pub struct Cli {
    /// Seed for every random draw of the run.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the JSON record here instead of stdout.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level covers, gap census and convergence thresholds of E_ξ.
    Cantor(CantorArgs),
    /// Weight axioms, algebra inequality and norm sandwich on random polynomials.
    Weights(WeightsArgs),
    /// Interpolation convergence table and norm bound check.
    Herz(HerzArgs),
    /// Outer function with prescribed decay near E_{1/q}.
    Outer(OuterArgs),
    /// Annihilation residuals and inverse power bounds of an outer function.
    Synthcheck(SynthArgs),
    /// Certified lower bounds for inverse powers of the model operator.
    Model(ModelArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Arc,
    Chordal,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlacementArg {
    Left,
    Midpoint,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Normalization {
    /// Total mass 2π.
    TwoPi,
    /// Total mass 1.
    Probability,
}

#[derive(Debug, Args)]
pub struct CantorArgs {
    /// Dissection ratio: `1/q`, `a/b` or a decimal in (0, 1/2).
    #[arg(long, default_value = "1/3")]
    pub xi: String,
    #[arg(long, default_value_t = 3)]
    pub level: u32,
    /// Exponents for the gap series.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0])]
    pub gamma: Vec<f64>,
    /// Exponents for the distance integral.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])]
    pub delta: Vec<f64>,
    /// Angles (radians) whose distance to the set is enclosed.
    #[arg(long, value_delimiter = ',')]
    pub at: Vec<f64>,
    #[arg(long, value_enum, default_value_t = MetricArg::Arc)]
    pub metric: MetricArg,
    /// Gap census CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.5, 1.0, 1.5, 2.0, 3.7])]
    pub s: Vec<f64>,
    /// Also check the one-sided weight with this exponent.
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value_t = 50)]
    pub max_degree: usize,
    /// Index range for the weight axiom scan.
    #[arg(long, default_value_t = 256)]
    pub range: i64,
}

#[derive(Debug, Args)]
pub struct HerzArgs {
    #[arg(long, default_value_t = 0.0)]
    pub s: f64,
    #[arg(long = "N", value_delimiter = ',', default_values_t = [8, 16, 32, 64, 128, 256, 512, 1024])]
    pub nodes: Vec<usize>,
    /// Series JSON; defaults to `e^{3it}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Convergence table CSV.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct OuterParams {
    #[arg(long, default_value_t = 3)]
    pub q: u32,
    #[arg(long, default_value_t = 0.0, conflicts_with = "delta")]
    pub beta: f64,
    /// Decay exponent; overrides the admissible choice derived from `beta`.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, default_value_t = 1 << 16)]
    pub grid: usize,
    #[arg(long = "M", default_value_t = 1 << 12)]
    pub truncation: usize,
    #[arg(long, default_value_t = DEFAULT_CLAMP, allow_hyphen_values = true)]
    pub clamp: f64,
    /// Fail when the alias energy exceeds this.
    #[arg(long)]
    pub alias_threshold: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OuterArgs {
    #[command(flatten)]
    pub params: OuterParams,
    /// Series JSON of the outer function.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[command(flatten)]
    pub params: OuterParams,
    /// Analytic series JSON used instead of constructing the outer function.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Dilation exponents `m` in `f(z^{q^m})`.
    #[arg(long, value_delimiter = ',', default_values_t = [0u32, 1, 2])]
    pub m: Vec<u32>,
    #[arg(long, default_value_t = 8)]
    pub level: u32,
    #[arg(long = "n-list", value_delimiter = ',', default_values_t = [1u64, 2, 3, 5, 9, 27, 81])]
    pub n_list: Vec<u64>,
    #[arg(long = "s-list", value_delimiter = ',', default_values_t = [0.0, 1.0, 2.5])]
    pub s_list: Vec<f64>,
    #[arg(long, default_value_t = 4)]
    pub cover_level: u32,
    #[arg(long, default_value_t = 0.5)]
    pub cover_s: f64,
    /// Assert every annihilation residual is at most this.
    #[arg(long)]
    pub residual_tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "1/3")]
    pub xi: String,
    #[arg(long, default_value_t = 12)]
    pub measure_level: u32,
    #[arg(long = "M", default_value_t = 1 << 14)]
    pub truncation: usize,
    /// `amplification:A` or `fixed:r`.
    #[arg(long, default_value = "amplification:1e4", value_parser = parse_policy)]
    pub radius_policy: RadiusPolicy,
    #[arg(long = "n-list", value_delimiter = ',', default_values_t = [1usize, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024])]
    pub n_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = PlacementArg::Left)]
    pub placement: PlacementArg,
    #[arg(long, value_enum, default_value_t = Normalization::TwoPi)]
    pub normalization: Normalization,
    /// Repeat at measure level `m - 1` and compare projection norms.
    #[arg(long)]
    pub refine: bool,
    /// Lower bound CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn parse_policy(text: &str) -> std::result::Result<RadiusPolicy, String> {
    let (kind, value) = text
        .split_once(':')
        .ok_or_else(|| format!("expected `amplification:A` or `fixed:r`, got `{text}`"))?;
    let v: f64 = value.trim().parse().map_err(|e| format!("bad number `{value}`: {e}"))?;
    match kind.trim() {
        "amplification" | "amp" => Ok(RadiusPolicy::Amplification(v)),
        "fixed" => Ok(RadiusPolicy::Fixed(v)),
        other => Err(format!("unknown radius policy `{other}`")),
    }
}

/// Result of one experiment.
#[derive(Debug, Clone)]
pub struct Report {
    pub record: Value,
    /// False when a checked inequality failed.
    pub passed: bool,
}

/// Trigonometric polynomial of random degree `d ≤ max_degree` with
/// coefficients on `[-d, d]` whose real and imaginary parts are uniform in `[-1, 1]`.
pub fn random_polynomial<R: Rng>(rng: &mut R, max_degree: usize) -> FourierSeries {
    let d = rng.random_range(0..=max_degree) as i64;
    FourierSeries::from_pairs(
        (-d..=d)
            .map(|n| (n, Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))))
            .collect::<Vec<_>>(),
    )
}

/// Parses `args`, runs the experiment and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e.category() {
        ErrorCategory::Usage => 2,
        ErrorCategory::Numerical => 3,
    }
}

/// Runs the experiment and writes its JSON record; returns whether all checks held.
pub fn execute(cli: &Cli) -> Result<bool> {
    let report = run(cli)?;
    let mut text = serde_json::to_string_pretty(&report.record)?;
    text.push('\n');
    match &cli.json {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(report.passed)
}

/// Runs the experiment without writing the JSON record. CSV and series
/// artifacts requested by the subcommand are written.
pub fn run(cli: &Cli) -> Result<Report> {
    let (name, mut report) = match &cli.command {
        Command::Cantor(a) => ("cantor", run_cantor(a, cli.seed)?),
        Command::Weights(a) => ("weights", run_weights(a, cli.seed)?),
        Command::Herz(a) => ("herz", run_herz(a, cli.seed)?),
        Command::Outer(a) => ("outer", run_outer(a)?),
        Command::Synthcheck(a) => ("synthcheck", run_synth(a)?),
        Command::Model(a) => ("model", run_model(a, cli.seed)?),
    };
    if let Value::Object(map) = &mut report.record {
        map.insert("schema".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(name));
        map.insert("seed".into(), json!(cli.seed));
        map.insert("passed".into(), json!(report.passed));
    }
    Ok(report)
}

fn write_csv(path: &Path, command: &str, seed: u64, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut buf = format!("# schema={SCHEMA_VERSION} command={command} seed={seed}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    fs::write(path, buf)?;
    Ok(())
}

fn read_series(path: &Path) -> Result<FourierSeries> {
    FourierSeries::from_json(&fs::read_to_string(path)?)
}

fn fmt(v: f64) -> String {
    format!("{v:e}")
}

fn run_cantor(a: &CantorArgs, seed: u64) -> Result<Report> {
    let set = PerfectSymmetricSet::parse(&a.xi)?;
    if a.level > set.max_level() {
        return Err(Error::resource(format!(
            "level {} exceeds the maximum level {}",
            a.level,
            set.max_level()
        )));
    }
    let metric = match a.metric {
        MetricArg::Arc => Metric::ArcLength,
        MetricArg::Chordal => Metric::Chordal,
    };
    let xi = set.xi();
    let cover = set.level_cover(a.level)?;

    let mut nesting = true;
    let mut prev = set.level_cover(0)?;
    for n in 1..=a.level {
        let next = set.level_cover(n)?;
        nesting &= next.nests_in(&prev);
        prev = next;
    }

    let mut census_ok = true;
    let mut census = Vec::new();
    let mut rows = Vec::new();
    let gaps = cover.gaps();
    for k in 1..=a.level {
        let expected_len = 2.0 * PI * xi.powi(k as i32 - 1) * (1.0 - 2.0 * xi);
        let stage: Vec<_> = gaps.iter().filter(|g| g.stage == k).collect();
        let expected_count = 1usize << (k - 1);
        let err = stage.iter().map(|g| (g.length - expected_len).abs()).fold(0.0, f64::max);
        let ok = stage.len() == expected_count && err <= 1e-12 * 2.0 * PI;
        census_ok &= ok;
        census.push(json!({
            "stage": k, "count": stage.len(), "expected_count": expected_count,
            "length": expected_len, "max_length_error": err, "ok": ok,
        }));
        rows.push(vec![
            k.to_string(),
            stage.len().to_string(),
            expected_count.to_string(),
            fmt(expected_len),
            fmt(err),
        ]);
    }
    if let Some(path) = &a.csv {
        write_csv(
            path,
            "cantor",
            seed,
            &["stage", "count", "expected_count", "length", "max_length_error"],
            &rows,
        )?;
    }

    let mut agreement = true;
    let integral: Vec<Value> = a
        .delta
        .iter()
        .map(|&d| {
            let ic = set.integral_criterion(d);
            let gs = set.gap_analysis(1.0 - d);
            agreement &= ic.converges == gs.converges;
            json!({"delta": d, "converges": ic.converges, "gap_series_converges": gs.converges})
        })
        .collect();
    let gap_series: Vec<Value> = a
        .gamma
        .iter()
        .map(|&g| {
            let gs = set.gap_analysis(g);
            json!({"gamma": g, "converges": gs.converges, "sum": gs.closed_form_sum})
        })
        .collect();
    let distances = a
        .at
        .iter()
        .map(|&t| {
            let e = set.distance_to_set(crate::cantor::Angle::new(t)?, a.level.max(1), metric)?;
            Ok(json!({"t": t, "lower": e.lower, "upper": e.upper}))
        })
        .collect::<Result<Vec<_>>>()?;

    let arcs: Vec<[f64; 2]> = cover.arcs.iter().map(|arc| [arc.start, arc.length]).collect();
    let record = json!({
        "xi": xi,
        "level": a.level,
        "arcs": arcs,
        "b": set.critical_exponent(),
        "thresholds": {
            "gap_series": set.gap_analysis(1.0).threshold,
            "integral": set.integral_criterion(0.0).threshold,
        },
        "gap_series": gap_series,
        "integral": integral,
        "distances": distances,
        "metric": format!("{:?}", metric),
        "checks": {"nesting": nesting, "gap_census": census_ok, "criteria_agree": agreement},
        "census": census,
    });
    Ok(Report { record, passed: nesting && census_ok && agreement })
}

fn run_weights(a: &WeightsArgs, seed: u64) -> Result<Report> {
    if a.samples == 0 {
        return Err(Error::parameter("samples must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut passed = true;
    let mut weights = Vec::new();
    for &s in &a.s {
        let w = Weight::polynomial(s)?;
        let ax = w.axioms(a.range)?;
        let mut violations = 0usize;
        let mut worst = 0.0f64;
        for _ in 0..a.samples {
            let f = random_polynomial(&mut rng, a.max_degree);
            let g = random_polynomial(&mut rng, a.max_degree);
            let lhs = f.multiply(&g).weighted_norm(&w)?;
            let rhs = f.weighted_norm(&w)? * g.weighted_norm(&w)?;
            if rhs > 0.0 {
                worst = worst.max(lhs / rhs);
            }
            if lhs > rhs * (1.0 + 1e-12) + 1e-300 {
                violations += 1;
            }
        }
        let sandwich = if s >= 1.0 {
            let mut bad = 0usize;
            for _ in 0..a.samples {
                let f = random_polynomial(&mut rng, a.max_degree);
                if !norme_sandwich(&f, s)?.holds {
                    bad += 1;
                }
            }
            passed &= bad == 0;
            json!({"samples": a.samples, "violations": bad})
        } else {
            Value::Null
        };
        passed &= ax.submultiplicative && ax.regular && violations == 0;
        weights.push(json!({
            "s": s,
            "axioms": ax,
            "algebra": {"samples": a.samples, "violations": violations, "worst_ratio": worst},
            "sandwich": sandwich,
        }));
    }
    let one_sided = match a.beta {
        Some(beta) => {
            let s = a.s.first().copied().unwrap_or(0.0);
            let ax = Weight::one_sided(s, beta)?.axioms(a.range)?;
            passed &= ax.submultiplicative && ax.regular;
            json!({"s": s, "beta": beta, "axioms": ax})
        }
        None => Value::Null,
    };
    let record = json!({
        "max_degree": a.max_degree,
        "range": a.range,
        "polynomial": weights,
        "one_sided": one_sided,
    });
    Ok(Report { record, passed })
}

fn run_herz(a: &HerzArgs, seed: u64) -> Result<Report> {
    let f = match &a.input {
        Some(path) => read_series(path)?,
        None => FourierSeries::monomial(3, Complex64::new(1.0, 0.0)),
    };
    let table = convergence_study(&f, a.s, &a.nodes)?;
    let bounds = if a.s < 1.0 {
        let constants = bound_constants(a.s)?;
        a.nodes
            .iter()
            .map(|&n| herz_bound_with(&f, n, a.s, &constants, &ResidueWeights::new(n, 0, a.s)))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    let holds = bounds.iter().all(|b| b.holds);
    if let Some(path) = &a.report {
        let rows: Vec<Vec<String>> = table
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = vec![r.nodes.to_string(), fmt(r.err)];
                if let Some(b) = bounds.get(i) {
                    row.push(fmt(b.norm_fn));
                    row.push(fmt(b.bound));
                } else {
                    row.push(String::new());
                    row.push(String::new());
                }
                row
            })
            .collect();
        write_csv(path, "herz", seed, &["N", "err", "interpolant_norm", "bound"], &rows)?;
    }
    let record = json!({
        "s": a.s,
        "input": {"M": f.truncation(), "degree": f.degree(), "norm": f.sobolev_norm(a.s)},
        "table": table,
        "fitted_rate": table.fitted_rate(),
        "expected_rate": -(2.0 - a.s),
        "strictly_decreasing": table.strictly_decreasing(),
        "bounds": bounds,
        "bound_holds": holds,
    });
    Ok(Report { record, passed: holds })
}

/// Outer function for the decay `exp(-d^{-δ})` near `E_{1/q}`.
pub fn build_outer(p: &OuterParams) -> Result<(OuterApprox, Value)> {
    let set = PerfectSymmetricSet::from_q(p.q)?;
    let (delta, params) = match p.delta {
        Some(d) => (d, json!({"delta": d})),
        None => {
            let ap = admissible_parameters(p.beta, p.q)?;
            (ap.delta, json!({"beta": p.beta, "admissible": ap}))
        }
    };
    let profile = LogModulusProfile::from_set(&set, delta, p.grid, p.clamp)?;
    let f = outer_from_modulus_with(
        &profile,
        p.truncation,
        &OuterOptions { alias_threshold: p.alias_threshold },
    )?;
    let record = json!({
        "q": p.q,
        "parameters": params,
        "grid": p.grid,
        "M": p.truncation,
        "clamp": p.clamp,
        "distance_level": profile.distance_level(),
    });
    Ok((f, record))
}

fn run_outer(a: &OuterArgs) -> Result<Report> {
    let (f, mut record) = build_outer(&a.params)?;
    let coeffs = f.coeffs();
    let decay: Vec<Value> = std::iter::successors(Some(1usize), |k| Some(k * 2))
        .take_while(|&k| k <= f.truncation())
        .map(|k| json!([k, coeffs[k].norm()]))
        .collect();
    if let Some(path) = &a.out {
        fs::write(path, f.to_series().to_json()?)?;
    }
    record["diagnostics"] = json!(f.diagnostics());
    record["coefficient_decay"] = json!(decay);
    record["l1_norm"] = json!(coeffs.iter().map(|c| c.norm()).sum::<f64>());
    Ok(Report { record, passed: true })
}

fn run_synth(a: &SynthArgs) -> Result<Report> {
    let q = a.params.q;
    let (f, mut record) = match &a.input {
        Some(path) => {
            let g = read_series(path)?;
            if g.iter().any(|(n, c)| n < 0 && c.norm_sqr() > 0.0) {
                return Err(Error::parameter("input series has negative frequencies"));
            }
            let m = g.truncation();
            let f = OuterApprox::from_coeffs((0..=m as i64).map(|n| g.coeff(n)).collect())?;
            (f, json!({"q": q, "input": path.display().to_string()}))
        }
        None => build_outer(&a.params)?,
    };
    let mut passed = true;

    let residuals: Vec<Value> = a
        .m
        .iter()
        .map(|&m| match annihilation_residual(&f, q, m, a.level) {
            Ok(r) => {
                if let Some(tol) = a.residual_tol {
                    passed &= r <= tol;
                }
                json!({"m": m, "level": a.level, "residual": r})
            }
            Err(e) => {
                if a.residual_tol.is_some() {
                    passed = false;
                }
                json!({"m": m, "level": a.level, "error": e.to_string()})
            }
        })
        .collect();

    let mut bounds = Vec::new();
    let mut factorization = Vec::new();
    for &s in &a.s_list {
        let mut ratios = Vec::new();
        for &n in &a.n_list {
            match inverse_power_bound(&f, q, n, s) {
                Ok(b) => {
                    let ratio = b.bound / (n as f64).powf(s);
                    ratios.push(ratio);
                    bounds.push(json!({"s": s, "n": n, "m": b.m, "bound": b.bound,
                        "weighted_sum": b.weighted_sum, "bound_over_n_s": ratio}));
                }
                Err(e) => bounds.push(json!({"s": s, "n": n, "error": e.to_string()})),
            }
        }
        if let (Some(lo), Some(hi)) = (
            ratios.iter().copied().reduce(f64::min),
            ratios.iter().copied().reduce(f64::max),
        ) {
            let spread = (hi - lo) / hi.abs().max(f64::MIN_POSITIVE);
            passed &= spread <= 1e-12;
            factorization.push(json!({"s": s, "relative_spread": spread}));
        }
    }

    let g = f.to_series();
    let cover = match cover_residual(&g, a.cover_s, q, a.cover_level, 4096) {
        Ok(c) => {
            let norm = g.sobolev_norm(a.cover_s);
            json!({"level": a.cover_level, "s": a.cover_s, "result": c, "relative": c.max_residual / norm})
        }
        Err(e) => json!({"level": a.cover_level, "s": a.cover_s, "error": e.to_string()}),
    };

    record["residuals"] = json!(residuals);
    record["bounds"] = json!(bounds);
    record["factorization"] = json!(factorization);
    record["cover"] = cover;
    Ok(Report { record, passed })
}

fn run_model(a: &ModelArgs, seed: u64) -> Result<Report> {
    let set = PerfectSymmetricSet::parse(&a.xi)?;
    if a.n_list.is_empty() || a.n_list.contains(&0) {
        return Err(Error::parameter("the n list must be nonempty and positive"));
    }
    let n_max = *a.n_list.iter().max().expect("nonempty");
    if n_max >= a.truncation {
        return Err(Error::parameter(format!("max n = {n_max} must be below M = {}", a.truncation)));
    }
    let placement = match a.placement {
        PlacementArg::Left => AtomPlacement::LeftEndpoint,
        PlacementArg::Midpoint => AtomPlacement::Midpoint,
    };
    let mass = match a.normalization {
        Normalization::TwoPi => 2.0 * PI,
        Normalization::Probability => 1.0,
    };
    let table_at = |level: u32| -> Result<_> {
        let mu = set.cantor_measure_with_mass(level, placement, mass)?;
        let v = inner_from_measure(&mu, a.truncation, a.radius_policy)?.with_measure_level(level);
        let t = projection_norms(&v, a.truncation)?;
        Ok((v, t))
    };
    let (v, table) = table_at(a.measure_level)?;

    let lower = a
        .n_list
        .iter()
        .map(|&n| inverse_power_lower_bound(&table, n, a.truncation - n))
        .collect::<Result<Vec<_>>>()?;
    let contractive = table.pnorm2.windows(2).all(|w| w[1] <= w[0]);
    let bounded_below = lower.iter().all(|l| l.value >= 1.0);
    let strictly_increasing = lower.windows(2).all(|w| w[1].value > w[0].value);

    let points: Vec<(f64, f64)> = lower.iter().map(|l| (l.n as f64, l.value)).collect();
    let fit = growth_exponent_fit(&points).ok();
    let b = set.critical_exponent();

    let mut passed = contractive && bounded_below;
    let refinement = if a.refine && a.measure_level > 0 {
        let (_, coarse) = table_at(a.measure_level - 1)?;
        let gap = refinement_gap(&table, &coarse, a.truncation / 2);
        let slack = table.tail_bound.max(coarse.tail_bound);
        passed &= gap <= slack;
        json!({"measure_level": a.measure_level - 1, "gap": gap, "tail_slack": slack, "stable": gap <= slack})
    } else {
        Value::Null
    };

    if let Some(path) = &a.csv {
        let rows: Vec<Vec<String>> = lower
            .iter()
            .map(|l| vec![l.n.to_string(), fmt(l.value), fmt(l.slack)])
            .collect();
        write_csv(path, "model", seed, &["n", "lower_bound", "tail_slack"], &rows)?;
    }

    let record = json!({
        "xi": set.xi(),
        "measure_level": a.measure_level,
        "M": a.truncation,
        "total_mass": v.total_mass(),
        "radius": v.radius(),
        "grid": v.grid(),
        "zeroed": v.zeroed(),
        "V0": v.coeffs()[0].re,
        "pnorm0": table.pnorm2[0],
        "tail_bound": table.tail_bound,
        "b": b,
        "fit": fit,
        "slope_within_b_plus_0_1": fit.map(|f| f.slope <= b + 0.1),
        "lower_bounds": lower,
        "strictly_increasing": strictly_increasing,
        "checks": {"contractive": contractive, "bounded_below": bounded_below},
        "refinement": refinement,
    });
    Ok(Report { record, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("cantor-spectral").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn cantor_level_three() {
        let r = run(&parse(&["cantor", "--xi", "1/3", "--level", "3"])).unwrap();
        assert!(r.passed);
        assert_eq!(r.record["arcs"].as_array().unwrap().len(), 8);
        assert!((r.record["b"].as_f64().unwrap() - 0.269577).abs() < 1e-6);
        assert_eq!(r.record["schema"], json!(SCHEMA_VERSION));
    }

    #[test]
    fn usage_errors_map_to_two() {
        assert_eq!(main_with_args(["cantor-spectral", "cantor", "--xi", "0.7"]), 2);
        assert_eq!(main_with_args(["cantor-spectral", "bogus"]), 2);
        assert_eq!(main_with_args(["cantor-spectral", "model", "--radius-policy", "fixed:2"]), 2);
    }

    #[test]
    fn precision_errors_map_to_three() {
        assert_eq!(exit_code(&Error::precision("x")), 3);
        assert_eq!(exit_code(&Error::resource("x")), 3);
    }

    #[test]
    fn herz_default_rate() {
        let r = run(&parse(&["herz", "--s", "0"])).unwrap();
        assert!(r.passed);
        assert!((r.record["fitted_rate"].as_f64().unwrap() + 2.0).abs() < 0.1);
    }

    #[test]
    fn weights_are_seeded() {
        let a = run(&parse(&["--seed", "7", "weights", "--samples", "20"])).unwrap();
        let b = run(&parse(&["--seed", "7", "weights", "--samples", "20"])).unwrap();
        assert!(a.passed);
        assert_eq!(a.record, b.record);
    }

    #[test]
    fn policy_parser() {
        assert_eq!(parse_policy("fixed:0.9").unwrap(), RadiusPolicy::Fixed(0.9));
        assert_eq!(parse_policy("amp:100").unwrap(), RadiusPolicy::Amplification(100.0));
        assert!(parse_policy("other:1").is_err());
        assert!(parse_policy("1e4").is_err());
    }
}
