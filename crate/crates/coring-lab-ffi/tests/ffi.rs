use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::ptr;

use coring_lab_ffi::*;

fn fixture(name: &str) -> CString {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    CString::new(p.to_str().unwrap()).unwrap()
}

fn load(name: &str) -> *mut CoringLabWorkspace {
    let mut ws = ptr::null_mut();
    let s = unsafe { coring_lab_workspace_load(fixture(name).as_ptr(), &mut ws) };
    assert_eq!(s, CoringLabStatus::Ok);
    assert!(!ws.is_null());
    ws
}

fn last_error() -> String {
    let p = coring_lab_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn cartier_dims_through_the_c_abi() {
    let ws = load("dual_numbers_gf2.json");
    let id = CString::new("dualnum").unwrap();
    let mut dims = [0usize; 5];
    let mut written = 0usize;
    let s = unsafe { coring_lab_cartier_dims(ws, id.as_ptr(), 4, dims.as_mut_ptr(), dims.len(), &mut written) };
    assert_eq!(s, CoringLabStatus::Ok);
    assert_eq!(written, 5);
    assert_eq!(dims, [2, 2, 2, 2, 2]);

    let ext = CString::new("dn_over_k").unwrap();
    let s = unsafe { coring_lab_hochschild_dims(ws, ext.as_ptr(), 4, dims.as_mut_ptr(), dims.len(), &mut written) };
    assert_eq!(s, CoringLabStatus::Ok);
    assert_eq!(dims, [2, 2, 2, 2, 2]);

    let mut small = [0usize; 2];
    let s = unsafe { coring_lab_cartier_dims(ws, id.as_ptr(), 4, small.as_mut_ptr(), small.len(), &mut written) };
    assert_eq!(s, CoringLabStatus::BufferTooSmall);
    assert_eq!(written, 5);
    unsafe { coring_lab_workspace_free(ws) };
}

#[test]
fn run_returns_report_and_status() {
    let ws = load("dual_numbers_gf3.json");
    let cmd = CString::new("verify-duality").unwrap();
    let coring = CString::new("dualnum").unwrap();
    let mut opts = coring_lab_options_default();
    opts.coring = coring.as_ptr();
    opts.max_degree = 3;
    opts.seed = 5;
    let mut rep = ptr::null_mut();
    let s = unsafe { coring_lab_run(ws, cmd.as_ptr(), &opts, &mut rep) };
    assert_eq!(s, CoringLabStatus::Ok);
    assert_eq!(unsafe { coring_lab_report_status(rep) }, CoringLabStatus::Ok);
    let json = unsafe { CStr::from_ptr(coring_lab_report_json(rep)) }.to_str().unwrap().to_string();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["command"], "verify-duality");
    let text = unsafe { CStr::from_ptr(coring_lab_report_text(rep)) }.to_str().unwrap();
    assert!(text.contains("Thm-coringtoalg"));
    unsafe {
        coring_lab_report_free(rep);
        coring_lab_workspace_free(ws);
    }
}

#[test]
fn math_failure_still_yields_a_report() {
    let ws = load("yd_s3_q.json");
    let cmd = CString::new("entwine").unwrap();
    let mut rep = ptr::null_mut();
    let s = unsafe { coring_lab_run(ws, cmd.as_ptr(), ptr::null(), &mut rep) };
    assert_eq!(s, CoringLabStatus::MathFailure);
    assert!(!rep.is_null());
    assert_eq!(unsafe { coring_lab_report_status(rep) }, CoringLabStatus::MathFailure);
    unsafe {
        coring_lab_report_free(rep);
        coring_lab_workspace_free(ws);
    }
}

#[test]
fn errors_are_reported_with_messages() {
    let mut ws = ptr::null_mut();
    let missing = CString::new("/nonexistent/doc.json").unwrap();
    assert_eq!(unsafe { coring_lab_workspace_load(missing.as_ptr(), &mut ws) }, CoringLabStatus::InputError);
    assert!(ws.is_null());
    assert!(!last_error().is_empty());

    assert_eq!(unsafe { coring_lab_workspace_load(ptr::null(), &mut ws) }, CoringLabStatus::NullPointer);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { coring_lab_workspace_load(bad.as_ptr().cast(), &mut ws) }, CoringLabStatus::InvalidUtf8);

    let broken = CString::new(r#"{"field": "GF(4)"}"#).unwrap();
    assert_eq!(unsafe { coring_lab_workspace_parse(broken.as_ptr(), &mut ws) }, CoringLabStatus::InputError);
    assert!(!last_error().is_empty());

    let doc = CString::new(r#"{"field": "GF(2)", "algebras": {"k": {"type": "field"}}}"#).unwrap();
    assert_eq!(unsafe { coring_lab_workspace_parse(doc.as_ptr(), &mut ws) }, CoringLabStatus::Ok);
    let cmd = CString::new("frobnicate").unwrap();
    let mut rep = ptr::null_mut();
    assert_eq!(unsafe { coring_lab_run(ws, cmd.as_ptr(), ptr::null(), &mut rep) }, CoringLabStatus::InputError);
    assert!(rep.is_null());
    let cmd = CString::new("cartier").unwrap();
    assert_eq!(unsafe { coring_lab_run(ws, cmd.as_ptr(), ptr::null(), &mut rep) }, CoringLabStatus::InputError);
    assert!(!last_error().is_empty());

    unsafe {
        coring_lab_workspace_free(ws);
        coring_lab_workspace_free(ptr::null_mut());
        coring_lab_report_free(ptr::null_mut());
    }
    assert_eq!(unsafe { coring_lab_report_status(ptr::null()) }, CoringLabStatus::NullPointer);
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(coring_lab_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/coring_lab.h")).unwrap();
    for name in [
        "coring_lab_workspace_load",
        "coring_lab_workspace_parse",
        "coring_lab_workspace_free",
        "coring_lab_run",
        "coring_lab_report_json",
        "coring_lab_report_text",
        "coring_lab_report_status",
        "coring_lab_report_free",
        "coring_lab_cartier_dims",
        "coring_lab_hochschild_dims",
        "coring_lab_last_error",
        "typedef struct CoringLabWorkspace CoringLabWorkspace",
        "CORING_LAB_STATUS_MATH_FAILURE = 1",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
