use std::ffi::{CStr, CString};
use std::ptr;

use plainchart_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    pc_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let e = pc_last_error();
    assert!(!e.is_null());
    CStr::from_ptr(e).to_string_lossy().into_owned()
}

#[test]
fn builtin_examples_run_through_handles() {
    for name in [
        "circle",
        "surface-3-3",
        "space-curve-2-2",
        "elliptic-blowup",
        "a2-origin",
    ] {
        unsafe {
            let mut s = ptr::null_mut();
            assert_eq!(pc_scenario_example(c(name).as_ptr(), &mut s), PcStatus::Ok);
            let mut o = ptr::null_mut();
            assert_eq!(pc_scenario_run(s, &mut o), PcStatus::Ok, "{name}");
            assert_eq!(pc_outcome_passed(o), 1);
            let mut json = ptr::null_mut();
            assert_eq!(pc_outcome_to_json(o, &mut json), PcStatus::Ok);
            assert!(take(json).contains("\"passed\": true"));
            let mut text = ptr::null_mut();
            assert_eq!(pc_outcome_to_text(o, &mut text), PcStatus::Ok);
            assert!(!take(text).is_empty());
            assert!(pc_last_error().is_null());
            pc_outcome_free(o);
            pc_scenario_free(s);
        }
    }
}

#[test]
fn failed_membership_reports_verification_failure() {
    let json = c(
        r#"{"ring":["x","y"],"command":"member","payload":{"polynomial":"x","ideal":["x^2","y"]}}"#,
    );
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(pc_scenario_from_json(json.as_ptr(), &mut s), PcStatus::Ok);
        let mut o = ptr::null_mut();
        assert_eq!(pc_scenario_run(s, &mut o), PcStatus::VerificationFailed);
        assert!(!o.is_null());
        assert_eq!(pc_outcome_passed(o), 0);
        pc_outcome_free(o);
        pc_scenario_free(s);
    }
}

#[test]
fn budget_override_is_reported() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            pc_scenario_example(c("elliptic-blowup").as_ptr(), &mut s),
            PcStatus::Ok
        );
        assert_eq!(pc_scenario_set_budget(s, 1), PcStatus::Ok);
        let mut o = ptr::null_mut();
        assert_eq!(pc_scenario_run(s, &mut o), PcStatus::BudgetExceeded);
        pc_outcome_free(o);
        pc_scenario_free(s);
    }
}

#[test]
fn input_errors_set_the_message() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            pc_scenario_from_json(c("{").as_ptr(), &mut s),
            PcStatus::InputError
        );
        assert!(s.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            pc_scenario_example(c("torus").as_ptr(), &mut s),
            PcStatus::InputError
        );
        assert!(last_error().contains("a2-origin"));
        assert_eq!(
            pc_scenario_example(ptr::null(), &mut s),
            PcStatus::NullPointer
        );
        assert_eq!(
            pc_scenario_run(ptr::null(), ptr::null_mut()),
            PcStatus::NullPointer
        );
        let bad = [0xffu8, 0];
        assert_eq!(
            pc_scenario_example(bad.as_ptr().cast(), &mut s),
            PcStatus::InvalidUtf8
        );
        pc_scenario_free(ptr::null_mut());
        pc_outcome_free(ptr::null_mut());
        pc_string_free(ptr::null_mut());
    }
}

#[test]
fn canonical_polynomials() {
    unsafe {
        let mut out = ptr::null_mut();
        let st = pc_polynomial_canonicalize(
            c("x, y, z").as_ptr(),
            c("x-(x^2+z^2)*y").as_ptr(),
            &mut out,
        );
        assert_eq!(st, PcStatus::Ok);
        assert_eq!(take(out), "-x^2*y - y*z^2 + x");
        let st = pc_polynomial_canonicalize(c("x").as_ptr(), c("2x").as_ptr(), &mut out);
        assert_eq!(st, PcStatus::InputError);
        assert!(last_error().contains("1:2"));
    }
}

#[test]
fn header_declares_every_export() {
    let header =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/plainchart.h"))
            .unwrap();
    for f in [
        "pc_scenario_from_json",
        "pc_scenario_example",
        "pc_scenario_set_seed",
        "pc_scenario_set_budget",
        "pc_scenario_run",
        "pc_scenario_free",
        "pc_outcome_passed",
        "pc_outcome_to_json",
        "pc_outcome_to_text",
        "pc_outcome_free",
        "pc_polynomial_canonicalize",
        "pc_last_error",
        "pc_string_free",
        "typedef struct PcScenario PcScenario",
        "PC_STATUS_BUDGET_EXCEEDED = 5",
    ] {
        assert!(header.contains(f), "{f}");
    }
}
