use std::ffi::{c_char, CStr, CString};
use std::ptr;

use bethe_spectra_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(bs_last_error()) }
        .to_str()
        .unwrap()
        .to_string()
}

unsafe fn take_string(p: *mut c_char) -> String {
    let s = CStr::from_ptr(p).to_str().unwrap().to_string();
    bs_string_free(p);
    s
}

fn degrees(s: &str) -> *mut BsDegrees {
    let c = CString::new(s).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(
        unsafe { bs_degrees_parse(c.as_ptr(), &mut d) },
        BsStatus::BS_OK
    );
    d
}

#[test]
fn char_poly_of_k3() {
    unsafe {
        let d = degrees("1,3");
        let mut p = ptr::null_mut();
        assert_eq!(bs_char_poly(d, &mut p), BsStatus::BS_OK);
        assert_eq!(bs_poly_degree(p), 3);
        let want = [-2i64, -3, 0, 1];
        for (i, w) in want.iter().enumerate() {
            let mut c = 0;
            assert_eq!(bs_poly_coeff_i64(p, i, &mut c), BsStatus::BS_OK);
            assert_eq!(c, *w);
        }
        let mut s = ptr::null_mut();
        assert_eq!(bs_poly_to_string(p, &mut s), BsStatus::BS_OK);
        assert_eq!(take_string(s), "λ^3 - 3λ - 2");
        assert_eq!(bs_poly_to_json(p, &mut s), BsStatus::BS_OK);
        assert_eq!(take_string(s), r#"{"coeffs":["-2","-3","0","1"]}"#);
        bs_poly_free(p);
        bs_degrees_free(d);
    }
}

#[test]
fn big_coefficients_need_strings() {
    unsafe {
        let d = degrees("1,6,6,6,6");
        let mut p = ptr::null_mut();
        assert_eq!(bs_char_poly(d, &mut p), BsStatus::BS_OK);
        let deg = bs_poly_degree(p) as usize;
        let mut overflowed = false;
        for i in 0..=deg {
            let mut c = 0;
            let mut s = ptr::null_mut();
            assert_eq!(bs_poly_coeff_string(p, i, &mut s), BsStatus::BS_OK);
            let text = take_string(s);
            match bs_poly_coeff_i64(p, i, &mut c) {
                BsStatus::BS_OK => assert_eq!(text, c.to_string()),
                BsStatus::BS_OUT_OF_RANGE => overflowed = true,
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(overflowed, "expected some coefficient beyond int64_t");
        bs_poly_free(p);
        bs_degrees_free(d);
    }
}

#[test]
fn g_polynomials_by_index() {
    unsafe {
        let d = degrees("1,3,4");
        let mut p = ptr::null_mut();
        assert_eq!(bs_g_poly(d, 2, &mut p), BsStatus::BS_OK);
        let mut s = ptr::null_mut();
        assert_eq!(bs_poly_to_string(p, &mut s), BsStatus::BS_OK);
        assert_eq!(take_string(s), "λ^2 - 3");
        bs_poly_free(p);
        assert_eq!(bs_g_poly(d, 4, &mut p), BsStatus::BS_OUT_OF_RANGE);
        bs_degrees_free(d);
    }
}

#[test]
fn lambda_min_struct_and_json() {
    unsafe {
        let d = degrees("1,2,5");
        let mut lm = BsLambdaMin::default();
        assert_eq!(bs_lambda_min(d, ptr::null(), &mut lm), BsStatus::BS_OK);
        let golden = -(1.0 + 5f64.sqrt()) / 2.0;
        assert!(lm.lo <= golden && golden <= lm.hi);
        assert!((lm.approx - golden).abs() < 1e-12);
        assert_eq!(lm.multiplicity, 4);

        let eps = CString::new("1/1000").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(bs_lambda_min_json(d, eps.as_ptr(), &mut s), BsStatus::BS_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["approx"], "-1.618033988750");
        assert_eq!(v["multiplicity"], 4);

        let bad = CString::new("-1").unwrap();
        assert_eq!(
            bs_lambda_min(d, bad.as_ptr(), &mut lm),
            BsStatus::BS_INVALID_INPUT
        );
        bs_degrees_free(d);
    }
}

#[test]
fn family_and_corona() {
    unsafe {
        let prefix = CString::new("1,3").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(
            bs_family_csv(prefix.as_ptr(), 2, 6, ptr::null(), &mut s),
            BsStatus::BS_OK
        );
        let csv = take_string(s);
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("dk,lambda_min_lo,lambda_min_hi,multiplicity"));
        assert_eq!(
            bs_family_csv(prefix.as_ptr(), 1, 6, ptr::null(), &mut s),
            BsStatus::BS_INVALID_INPUT
        );

        assert_eq!(bs_corona_check_json(2, 3, &mut s), BsStatus::BS_OK);
        let v: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(v["matches"], serde_json::json!(["K_2 ⊗ K_2"]));
        assert_eq!(
            bs_corona_check_json(2, 1, &mut s),
            BsStatus::BS_INVALID_INPUT
        );
    }
}

#[test]
fn verify_sweep() {
    let mut passed = 0;
    assert_eq!(
        unsafe { bs_verify(3, 10, 80, &mut passed) },
        BsStatus::BS_OK
    );
    assert_eq!(passed, 100);
    assert_eq!(
        unsafe { bs_verify(3, 1, 501, ptr::null_mut()) },
        BsStatus::BS_INVALID_INPUT
    );
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut d = ptr::null_mut();
        let raw = [2usize, 3];
        assert_eq!(
            bs_degrees_new(raw.as_ptr(), 2, &mut d),
            BsStatus::BS_INVALID_INPUT
        );
        assert!(d.is_null());
        assert!(last_error().contains("d_1 must equal 1"));

        assert_eq!(
            bs_degrees_new(ptr::null(), 2, &mut d),
            BsStatus::BS_NULL_POINTER
        );
        assert_eq!(
            bs_degrees_parse(ptr::null(), &mut d),
            BsStatus::BS_NULL_POINTER
        );
        let mut p = ptr::null_mut();
        assert_eq!(bs_char_poly(ptr::null(), &mut p), BsStatus::BS_NULL_POINTER);
        assert_eq!(bs_poly_degree(ptr::null()), -1);
        assert_eq!(bs_degrees_levels(ptr::null()), 0);

        let invalid_utf8 = [0xffu8, 0];
        assert_eq!(
            bs_degrees_parse(invalid_utf8.as_ptr().cast(), &mut d),
            BsStatus::BS_INVALID_UTF8
        );
        // freeing NULL is a no-op
        bs_degrees_free(ptr::null_mut());
        bs_poly_free(ptr::null_mut());
        bs_string_free(ptr::null_mut());
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(bs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/bethe_spectra.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .filter_map(|rest| rest.split('(').next())
        .collect();
    assert!(exports.len() >= 15, "{exports:?}");
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}
