//! C ABI for `cantor-spectral`.
//!
//! Objects are exposed as opaque handles created by `cs_*_new`/`cs_*_build`
//! functions and released with the matching `cs_*_free`. Every fallible call
//! returns a [`CsStatus`]; on failure the message is available from
//! [`cs_last_error_message`] on the calling thread until the next failure.
//! Strings returned by the library are released with [`cs_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cantor_spectral::harness::{build_outer, OuterParams};
use cantor_spectral::herz::{herz_bound, herz_interpolant};
use cantor_spectral::model::{inner_from_measure, inverse_power_lower_bound, projection_norms, RadiusPolicy};
use cantor_spectral::outer::{annihilation_residual, inverse_power_bound};
use cantor_spectral::{Angle, Complex64, Error, FourierSeries, Metric, OuterApprox, PerfectSymmetricSet};
use libc::c_char;

/// Result of a library call. `CS_STATUS_OK` is zero.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CsStatus {
    Ok = 0,
    Domain = 1,
    Contract = 2,
    Parameter = 3,
    Resource = 4,
    Precision = 5,
    Resolution = 6,
    Range = 7,
    Fit = 8,
    Io = 9,
    Format = 10,
    NullPointer = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

/// Perfect symmetric set `E_ξ`.
pub struct CsSet(PerfectSymmetricSet);

/// Trigonometric polynomial.
pub struct CsSeries(FourierSeries);

/// Analytic outer function with coefficients `0..=M`.
pub struct CsOuter(OuterApprox);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CsStatus {
    match e {
        Error::Domain(_) => CsStatus::Domain,
        Error::Contract(_) => CsStatus::Contract,
        Error::Parameter(_) => CsStatus::Parameter,
        Error::Resource(_) => CsStatus::Resource,
        Error::Precision(_) => CsStatus::Precision,
        Error::Resolution(_) => CsStatus::Resolution,
        Error::Range(_) => CsStatus::Range,
        Error::Fit(_) => CsStatus::Fit,
        Error::Io(_) => CsStatus::Io,
        Error::Json(_) | Error::Csv(_) => CsStatus::Format,
    }
}

enum Failure {
    Lib(Error),
    Status(CsStatus, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(CsStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CsStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            let s = status_of(&e);
            set_last_error(e.to_string());
            s
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic".into());
            CsStatus::Panic
        }
    }
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn cs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Creates `E_ξ` for `ξ ∈ (0, 1/2)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_set_new(xi: f64, out: *mut *mut CsSet) -> CsStatus {
    guard(|| {
        let set = PerfectSymmetricSet::new(xi)?;
        write(out, Box::into_raw(Box::new(CsSet(set))), "out")
    })
}

/// Creates `E_{1/q}` with exact rational endpoints.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_set_from_q(q: u32, out: *mut *mut CsSet) -> CsStatus {
    guard(|| {
        let set = PerfectSymmetricSet::from_q(q)?;
        write(out, Box::into_raw(Box::new(CsSet(set))), "out")
    })
}

/// # Safety
/// `set` must be null or a handle from `cs_set_new`/`cs_set_from_q` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cs_set_free(set: *mut CsSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Critical exponent `b(ξ)`.
///
/// # Safety
/// `set` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_set_critical_exponent(set: *const CsSet, out: *mut f64) -> CsStatus {
    guard(|| write(out, handle(set, "set")?.0.critical_exponent(), "out"))
}

/// Writes the `2^level` arcs of the level cover as `(start, length)` pairs.
///
/// `count` receives `2^level` even when `capacity` is too small, in which
/// case nothing else is written and `CS_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `set` must be a live handle; `starts` and `lengths` must be valid for
/// `capacity` writes; `count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_set_level_arcs(
    set: *const CsSet,
    level: u32,
    starts: *mut f64,
    lengths: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> CsStatus {
    guard(|| {
        let cover = handle(set, "set")?.0.level_cover(level)?;
        let n = cover.arcs.len();
        write(count, n, "count")?;
        if n > capacity {
            return Err(Failure::Status(
                CsStatus::BufferTooSmall,
                format!("{n} arcs do not fit in a buffer of {capacity}"),
            ));
        }
        if starts.is_null() || lengths.is_null() {
            return Err(null("output buffer"));
        }
        for (i, arc) in cover.arcs.iter().enumerate() {
            starts.add(i).write(arc.start);
            lengths.add(i).write(arc.length);
        }
        Ok(())
    })
}

/// Encloses the distance from `e^{it}` to the set using the level-`level`
/// cover. `chordal` selects `|e^{it} - e^{iθ}|` instead of arc length.
///
/// # Safety
/// `set` must be a live handle; `lower` and `upper` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_set_distance(
    set: *const CsSet,
    t: f64,
    level: u32,
    chordal: bool,
    lower: *mut f64,
    upper: *mut f64,
) -> CsStatus {
    guard(|| {
        let metric = if chordal { Metric::Chordal } else { Metric::ArcLength };
        let e = handle(set, "set")?.0.distance_to_set(Angle::new(t)?, level, metric)?;
        write(lower, e.lower, "lower")?;
        write(upper, e.upper, "upper")
    })
}

/// Builds `Σ c_k e^{i n_k t}` from `len` triples `(n_k, re_k, im_k)`.
/// Repeated indices are summed.
///
/// # Safety
/// `indices`, `re` and `im` must be valid for `len` reads; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_series_new(
    indices: *const i64,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut CsSeries,
) -> CsStatus {
    guard(|| {
        if len > 0 && (indices.is_null() || re.is_null() || im.is_null()) {
            return Err(null("coefficient array"));
        }
        let pairs: Vec<(i64, Complex64)> = (0..len)
            .map(|k| (*indices.add(k), Complex64::new(*re.add(k), *im.add(k))))
            .collect();
        write(out, Box::into_raw(Box::new(CsSeries(FourierSeries::from_pairs(pairs)))), "out")
    })
}

/// Parses the JSON series format `{"M": m, "coeffs": [[n, re, im], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_series_from_json(json: *const c_char, out: *mut *mut CsSeries) -> CsStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure::Status(CsStatus::Format, format!("json is not UTF-8: {e}")))?;
        let f = FourierSeries::from_json(text)?;
        write(out, Box::into_raw(Box::new(CsSeries(f))), "out")
    })
}

/// Serializes a series; free the result with `cs_string_free`.
///
/// # Safety
/// `series` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_series_to_json(series: *const CsSeries, out: *mut *mut c_char) -> CsStatus {
    guard(|| {
        let text = handle(series, "series")?.0.to_json()?;
        let c = CString::new(text).expect("JSON has no interior nul");
        write(out, c.into_raw(), "out")
    })
}

/// # Safety
/// `series` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn cs_series_free(series: *mut CsSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// `f(e^{it})`.
///
/// # Safety
/// `series` must be a live handle; `re` and `im` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_series_eval(series: *const CsSeries, t: f64, re: *mut f64, im: *mut f64) -> CsStatus {
    guard(|| {
        let v = handle(series, "series")?.0.evaluate(t);
        write(re, v.re, "re")?;
        write(im, v.im, "im")
    })
}

/// `‖f‖_s = Σ |f̂(n)| (1+|n|)^s`.
///
/// # Safety
/// `series` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_series_sobolev_norm(series: *const CsSeries, s: f64, out: *mut f64) -> CsStatus {
    guard(|| write(out, handle(series, "series")?.0.sobolev_norm(s), "out"))
}

/// Interpolant norm `‖f_{N,0}‖_s` and the bound `K(s)‖f‖_s`, for `0 ≤ s < 1`.
///
/// # Safety
/// `series` must be a live handle; `norm`, `bound` and `holds` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_herz_bound(
    series: *const CsSeries,
    nodes: usize,
    s: f64,
    norm: *mut f64,
    bound: *mut f64,
    holds: *mut bool,
) -> CsStatus {
    guard(|| {
        let b = herz_bound(&handle(series, "series")?.0, nodes, s)?;
        write(norm, b.norm_fn, "norm")?;
        write(bound, b.bound, "bound")?;
        write(holds, b.holds, "holds")
    })
}

/// `‖f - f_{N,⌊s⌋}‖_s`.
///
/// # Safety
/// `series` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_herz_error_norm(series: *const CsSeries, nodes: usize, s: f64, out: *mut f64) -> CsStatus {
    guard(|| {
        let f = &handle(series, "series")?.0;
        let g = herz_interpolant(f, nodes, s)?;
        write(out, g.error_norm(f, s), "out")
    })
}

/// Outer function with modulus `exp(-d(e^{it}, E_{1/q})^{-δ})` on a grid of
/// `grid` points, truncated to degree `m`. `delta <= 0` selects the
/// admissible exponent derived from `beta`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_outer_build(
    q: u32,
    beta: f64,
    delta: f64,
    grid: usize,
    m: usize,
    clamp: f64,
    out: *mut *mut CsOuter,
) -> CsStatus {
    guard(|| {
        let params = OuterParams {
            q,
            beta,
            delta: (delta > 0.0).then_some(delta),
            grid,
            truncation: m,
            clamp,
            alias_threshold: None,
        };
        let (f, _) = build_outer(&params)?;
        write(out, Box::into_raw(Box::new(CsOuter(f))), "out")
    })
}

/// # Safety
/// `outer` must be null or a live outer handle.
#[no_mangle]
pub unsafe extern "C" fn cs_outer_free(outer: *mut CsOuter) {
    if !outer.is_null() {
        drop(Box::from_raw(outer));
    }
}

/// Copies `f̂(0..=M)`; `count` receives `M + 1`. Same buffer protocol as
/// `cs_set_level_arcs`.
///
/// # Safety
/// `outer` must be a live handle; `re` and `im` valid for `capacity` writes;
/// `count` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_outer_coeffs(
    outer: *const CsOuter,
    re: *mut f64,
    im: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> CsStatus {
    guard(|| {
        let coeffs = handle(outer, "outer")?.0.coeffs();
        write(count, coeffs.len(), "count")?;
        if coeffs.len() > capacity {
            return Err(Failure::Status(
                CsStatus::BufferTooSmall,
                format!("{} coefficients do not fit in a buffer of {capacity}", coeffs.len()),
            ));
        }
        if re.is_null() || im.is_null() {
            return Err(null("output buffer"));
        }
        for (k, c) in coeffs.iter().enumerate() {
            re.add(k).write(c.re);
            im.add(k).write(c.im);
        }
        Ok(())
    })
}

/// `max |f(z^{q^m})|` over the level-`level` endpoints of `E_{1/q}`.
///
/// # Safety
/// `outer` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_outer_annihilation_residual(
    outer: *const CsOuter,
    q: u32,
    m: u32,
    level: u32,
    out: *mut f64,
) -> CsStatus {
    guard(|| write(out, annihilation_residual(&handle(outer, "outer")?.0, q, m, level)?, "out"))
}

/// Upper bound for the `s`-norm of the `n`-th inverse power.
///
/// # Safety
/// `outer` must be a live handle; `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cs_outer_inverse_power_bound(
    outer: *const CsOuter,
    q: u32,
    n: u64,
    s: f64,
    out: *mut f64,
) -> CsStatus {
    guard(|| write(out, inverse_power_bound(&handle(outer, "outer")?.0, q, n, s)?.bound, "out"))
}

/// Certified lower bounds for `‖T^{-n}‖` on the model space of the singular
/// inner function built from the level-`measure_level` Cantor measure of
/// `E_ξ` (total mass 2π, left endpoints), truncated to degree `m`.
/// `amplification` fixes the evaluation radius `r = A^{-1/m}`.
///
/// # Safety
/// `ns` must be valid for `len` reads and `out` for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn cs_model_lower_bounds(
    xi: f64,
    measure_level: u32,
    m: usize,
    amplification: f64,
    ns: *const usize,
    len: usize,
    out: *mut f64,
) -> CsStatus {
    guard(|| {
        if len > 0 && (ns.is_null() || out.is_null()) {
            return Err(null("n list or output"));
        }
        let ns = std::slice::from_raw_parts(ns, len);
        if let Some(&n) = ns.iter().find(|&&n| n == 0 || n >= m) {
            return Err(Failure::Lib(Error::Parameter(format!("n = {n} must lie in [1, M)"))));
        }
        let set = PerfectSymmetricSet::new(xi)?;
        let mu = set.cantor_measure(measure_level, Default::default())?;
        let v = inner_from_measure(&mu, m, RadiusPolicy::Amplification(amplification))?;
        let table = projection_norms(&v, m)?;
        for (i, &n) in ns.iter().enumerate() {
            out.add(i).write(inverse_power_lower_bound(&table, n, m - n)?.value);
        }
        Ok(())
    })
}
