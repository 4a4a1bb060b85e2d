use std::ffi::{CStr, CString};
use std::ptr;

use cantor_spectral_ffi::*;

fn last_error() -> String {
    let p = cs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn set_round_trip() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(cs_set_from_q(3, &mut set), CsStatus::Ok);
        let mut b = 0.0;
        assert_eq!(cs_set_critical_exponent(set, &mut b), CsStatus::Ok);
        assert!((b - 0.269_577_289_690_815).abs() < 1e-12);

        let mut count = 0usize;
        let status = cs_set_level_arcs(set, 3, ptr::null_mut(), ptr::null_mut(), 0, &mut count);
        assert_eq!(status, CsStatus::BufferTooSmall);
        assert_eq!(count, 8);
        let (mut starts, mut lengths) = (vec![0.0; count], vec![0.0; count]);
        let status = cs_set_level_arcs(set, 3, starts.as_mut_ptr(), lengths.as_mut_ptr(), count, &mut count);
        assert_eq!(status, CsStatus::Ok);
        assert_eq!(starts[0], 0.0);
        assert!(lengths.iter().all(|&l| (l - 2.0 * std::f64::consts::PI / 27.0).abs() < 1e-15));

        let (mut lo, mut hi) = (0.0, 0.0);
        assert_eq!(cs_set_distance(set, std::f64::consts::PI, 6, false, &mut lo, &mut hi), CsStatus::Ok);
        assert!((lo - std::f64::consts::PI / 3.0).abs() < 1e-12 && lo <= hi);
        cs_set_free(set);
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    unsafe {
        let mut set = ptr::null_mut();
        assert_eq!(cs_set_new(0.75, &mut set), CsStatus::Domain);
        assert!(set.is_null());
        assert!(last_error().contains("domain"));
        assert_eq!(cs_set_new(0.3, ptr::null_mut()), CsStatus::NullPointer);
        let mut b = 0.0;
        assert_eq!(cs_set_critical_exponent(ptr::null(), &mut b), CsStatus::NullPointer);
        cs_set_free(ptr::null_mut());
        cs_series_free(ptr::null_mut());
        cs_outer_free(ptr::null_mut());
        cs_string_free(ptr::null_mut());
    }
}

#[test]
fn series_json_and_herz() {
    unsafe {
        let idx = [1i64];
        let (re, im) = ([1.0], [0.0]);
        let mut f = ptr::null_mut();
        assert_eq!(cs_series_new(idx.as_ptr(), re.as_ptr(), im.as_ptr(), 1, &mut f), CsStatus::Ok);

        let mut text = ptr::null_mut();
        assert_eq!(cs_series_to_json(f, &mut text), CsStatus::Ok);
        let json = CStr::from_ptr(text).to_str().unwrap().to_owned();
        cs_string_free(text);
        let c = CString::new(json).unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(cs_series_from_json(c.as_ptr(), &mut g), CsStatus::Ok);
        let (mut vr, mut vi) = (0.0, 0.0);
        assert_eq!(cs_series_eval(g, 0.5, &mut vr, &mut vi), CsStatus::Ok);
        assert!((vr - 0.5f64.cos()).abs() < 1e-15 && (vi - 0.5f64.sin()).abs() < 1e-15);

        let (mut norm, mut bound, mut holds) = (0.0, 0.0, false);
        assert_eq!(cs_herz_bound(f, 16, 0.5, &mut norm, &mut bound, &mut holds), CsStatus::Ok);
        assert!(holds && norm <= bound);
        let mut err = 0.0;
        assert_eq!(cs_herz_error_norm(f, 64, 0.0, &mut err), CsStatus::Ok);
        assert!(err > 0.0 && err < 1e-2);
        assert_eq!(cs_herz_error_norm(f, 0, 0.0, &mut err), CsStatus::Parameter);

        let bad = CString::new("{\"M\": 1}").unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(cs_series_from_json(bad.as_ptr(), &mut h), CsStatus::Format);
        cs_series_free(f);
        cs_series_free(g);
    }
}

#[test]
fn outer_and_model() {
    unsafe {
        let mut f = ptr::null_mut();
        assert_eq!(cs_outer_build(3, 0.0, 0.0, 1 << 16, 4096, -40.0, &mut f), CsStatus::Ok);
        let mut count = 0usize;
        let (mut re, mut im) = (vec![0.0; 4097], vec![0.0; 4097]);
        assert_eq!(cs_outer_coeffs(f, re.as_mut_ptr(), im.as_mut_ptr(), 4097, &mut count), CsStatus::Ok);
        assert_eq!(count, 4097);
        assert_eq!((re[0], im[0]), (1.0, 0.0));
        let mut r = 0.0;
        assert_eq!(cs_outer_annihilation_residual(f, 3, 1, 4, &mut r), CsStatus::Ok);
        assert!(r.is_finite());
        let (mut b1, mut b2) = (0.0, 0.0);
        assert_eq!(cs_outer_inverse_power_bound(f, 3, 1, 0.5, &mut b1), CsStatus::Ok, "{}", last_error());
        assert_eq!(cs_outer_inverse_power_bound(f, 3, 4, 0.5, &mut b2), CsStatus::Ok);
        assert!((b2 / b1 - 2.0).abs() < 1e-12);
        cs_outer_free(f);

        let ns = [1usize, 2, 4, 8];
        let mut out = [0.0; 4];
        let status = cs_model_lower_bounds(1.0 / 3.0, 6, 512, 1e4, ns.as_ptr(), 4, out.as_mut_ptr());
        assert_eq!(status, CsStatus::Ok, "{}", last_error());
        assert!(out.iter().all(|&v| v >= 1.0));
        assert!(out.windows(2).all(|w| w[1] >= w[0]));
        let bad = [0usize];
        assert_eq!(cs_model_lower_bounds(1.0 / 3.0, 6, 512, 1e4, bad.as_ptr(), 1, out.as_mut_ptr()), CsStatus::Parameter);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(cs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}
