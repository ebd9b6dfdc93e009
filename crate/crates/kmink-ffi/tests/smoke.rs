//! Exercises the C ABI from Rust: handle lifecycles, status codes, the
//! canonical-string round trip, and the generated header.

use kmink_ffi::*;
use std::ffi::{CStr, CString};
use std::ptr;

fn parse(src: &str) -> *mut KmkElement {
    let c = CString::new(src).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { kmk_parse(c.as_ptr(), &mut out) };
    assert_eq!(status, KmkStatus::Ok, "parsing {src:?}");
    assert!(!out.is_null());
    out
}

fn to_string(e: *const KmkElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { kmk_element_to_string(e, &mut s) }, KmkStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { kmk_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(kmk_last_error_message()) }
        .to_str()
        .unwrap()
        .to_string()
}

// ---- parse, print, free ----

#[test]
fn parse_orders_and_prints_canonically() {
    let e = parse("x1*x0");
    assert_eq!(to_string(e), ":x0*x1: - i/k :x1:");
    unsafe { kmk_element_free(e) };
}

#[test]
fn canonical_strings_round_trip() {
    for src in ["x2*x1*x0", "(x0 + x1)^3", "k^2 x3*x0 - i/k"] {
        let e = parse(src);
        let printed = to_string(e);
        let back = parse(&printed);
        let mut eq = false;
        assert_eq!(unsafe { kmk_element_eq(e, back, &mut eq) }, KmkStatus::Ok);
        assert!(eq, "{src:?} round-tripped through {printed:?}");
        unsafe { kmk_element_free(e) };
        unsafe { kmk_element_free(back) };
    }
}

#[test]
fn syntax_errors_set_the_thread_message() {
    let c = CString::new("x4").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { kmk_parse(c.as_ptr(), &mut out) }, KmkStatus::Syntax);
    assert!(last_error().contains("syntax error at byte 0"));
}

#[test]
fn null_arguments_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { kmk_parse(ptr::null(), &mut out) },
        KmkStatus::NullArgument
    );
    let e = parse("x0");
    assert_eq!(
        unsafe { kmk_element_to_string(e, ptr::null_mut()) },
        KmkStatus::NullArgument
    );
    unsafe { kmk_element_free(e) };
    unsafe { kmk_element_free(ptr::null_mut()) };
    unsafe { kmk_string_free(ptr::null_mut()) };
}

// ---- algebra through the ABI ----

#[test]
fn the_product_is_noncommutative() {
    let x0 = parse("x0");
    let x1 = parse("x1");
    let mut ab = ptr::null_mut();
    let mut ba = ptr::null_mut();
    assert_eq!(unsafe { kmk_element_mul(x0, x1, &mut ab) }, KmkStatus::Ok);
    assert_eq!(unsafe { kmk_element_mul(x1, x0, &mut ba) }, KmkStatus::Ok);
    assert_eq!(to_string(ab), ":x0*x1:");
    assert_eq!(to_string(ba), ":x0*x1: - i/k :x1:");
    for h in [x0, x1, ab, ba] {
        unsafe { kmk_element_free(h) };
    }
}

#[test]
fn addition_and_cloning_agree() {
    let a = parse("x0 + x1");
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { kmk_element_clone(a, &mut b) }, KmkStatus::Ok);
    let mut sum = ptr::null_mut();
    assert_eq!(unsafe { kmk_element_add(a, b, &mut sum) }, KmkStatus::Ok);
    let doubled = parse("2*x0 + 2*x1");
    let mut eq = false;
    assert_eq!(unsafe { kmk_element_eq(sum, doubled, &mut eq) }, KmkStatus::Ok);
    assert!(eq);
    for h in [a, b, sum, doubled] {
        unsafe { kmk_element_free(h) };
    }
}

#[test]
fn operators_apply_by_name() {
    let f = parse("x0^2");
    let mut out = ptr::null_mut();
    let name = CString::new("box").unwrap();
    assert_eq!(unsafe { kmk_apply(name.as_ptr(), f, &mut out) }, KmkStatus::Ok);
    assert_eq!(to_string(out), "1/4");
    unsafe { kmk_element_free(out) };

    let name = CString::new("p1").unwrap();
    let x1 = parse("x1");
    assert_eq!(unsafe { kmk_apply(name.as_ptr(), x1, &mut out) }, KmkStatus::Ok);
    assert_eq!(to_string(out), "i");
    unsafe { kmk_element_free(out) };

    let name = CString::new("Q7").unwrap();
    assert_eq!(
        unsafe { kmk_apply(name.as_ptr(), x1, &mut out) },
        KmkStatus::UnknownOperator
    );
    assert!(last_error().contains("Q7"));
    unsafe { kmk_element_free(f) };
    unsafe { kmk_element_free(x1) };
}

#[test]
fn the_exterior_derivative_exposes_all_five_coefficients() {
    let f = parse("x0*x1");
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { kmk_exterior_d(f, &mut d) }, KmkStatus::Ok);
    let mut texts = Vec::new();
    for label in [KmkForm::T0, KmkForm::T1, KmkForm::T2, KmkForm::T3, KmkForm::Tau] {
        let mut c = ptr::null_mut();
        assert_eq!(unsafe { kmk_oneform_coeff(d, label, &mut c) }, KmkStatus::Ok);
        texts.push(to_string(c));
        unsafe { kmk_element_free(c) };
    }
    assert_eq!(texts, [":x1:", ":x0: + i/k", "0", "0", "0"]);
    unsafe { kmk_oneform_free(d) };
    unsafe { kmk_element_free(f) };
}

// ---- suites and numerics ----

#[test]
fn suites_report_case_counts() {
    let mut failed = u32::MAX;
    let mut total = 0;
    let status = unsafe { kmk_check(KmkSuite::Relations, 2, -1, &mut failed, &mut total) };
    assert_eq!(status, KmkStatus::Ok);
    assert_eq!((failed, total), (0, 675));

    let status = unsafe { kmk_check(KmkSuite::Relations, 2, 1, &mut failed, &mut total) };
    assert_eq!(status, KmkStatus::Ok);
    assert!(failed > 0);

    let status = unsafe { kmk_check(KmkSuite::Relations, 1, -1, &mut failed, &mut total) };
    assert_eq!(status, KmkStatus::Domain);
    let status = unsafe { kmk_check(KmkSuite::Relations, 2, 3, &mut failed, &mut total) };
    assert_eq!(status, KmkStatus::Domain);
}

#[test]
fn dispersion_functions_mirror_the_solver() {
    let kvec = [0.0f64; 3];
    let mut root = f64::NAN;
    let status = unsafe { kmk_solve_k0(1.0, 1.0, kvec.as_ptr(), &mut root) };
    assert_eq!(status, KmkStatus::Ok);
    assert!((root - 2.0 * (0.5f64).asinh()).abs() < 1e-12);

    let mut r = f64::NAN;
    let status = unsafe { kmk_dispersion_residual(1.0, 1.0, kvec.as_ptr(), root, &mut r) };
    assert_eq!(status, KmkStatus::Ok);
    assert!(r.abs() < 1e-12);

    let status = unsafe { kmk_solve_k0(-1.0, 1.0, kvec.as_ptr(), &mut root) };
    assert_eq!(status, KmkStatus::Domain);
    assert!(last_error().contains("kappa"));
}

// ---- generated header ----

#[test]
fn header_declares_the_full_surface() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/include/kmink.h");
    let header = std::fs::read_to_string(path).expect("cbindgen output exists");
    for needle in [
        "typedef struct KmkElement KmkElement;",
        "typedef struct KmkOneForm KmkOneForm;",
        "KMK_STATUS_OK",
        "KMK_FORM_TAU",
        "KMK_SUITE_RELATIONS",
        "kmk_parse",
        "kmk_element_to_string",
        "kmk_element_mul",
        "kmk_exterior_d",
        "kmk_oneform_coeff",
        "kmk_check",
        "kmk_dispersion_residual",
        "kmk_solve_k0",
        "kmk_last_error_message",
    ] {
        assert!(header.contains(needle), "header lacks {needle:?}");
    }
}
