use std::ffi::{c_char, CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use dualpair_ffi::*;
use serde_json::Value;

const MULT_Z4: &str = r#"{
  "ring": {"zmod": 4},
  "modules": {"V": {"side": "right", "factors": [4]}, "W": {"side": "left", "factors": [4]}},
  "pairings": {"P": {"v": "V", "w": "W", "beta": [[1]]}}
}"#;

const CANONICAL_Z2: &str = r#"{
  "ring": {"zmod": 4},
  "modules": {"W": {"side": "left", "factors": [2]}},
  "pairings": {"P": {"canonical": "W"}}
}"#;

fn open(json: &str) -> *mut DpInstance {
    let c = CString::new(json).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dp_instance_from_json(c.as_ptr(), &mut h) }, DpStatus::Ok);
    assert!(!h.is_null());
    h
}

fn take(s: *mut c_char) -> Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { dp_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(dp_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn analyze_multiplication_pairing() {
    let h = open(MULT_Z4);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dp_analyze(h, ptr::null(), &mut out) }, DpStatus::Ok);
    let r = take(out);
    assert_eq!(r["hausdorff"], true);
    assert_eq!(r["radical"], serde_json::json!([]));
    assert_eq!(r["submodules"].as_array().unwrap().len(), 3);
    unsafe { dp_instance_free(h) };
}

#[test]
fn alpha_fails_for_z2_over_z4() {
    let h = open(CANONICAL_Z2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dp_alpha(h, ptr::null(), &mut out) }, DpStatus::Ok);
    let r = take(out);
    assert_eq!(r["alpha"], false);
    assert_eq!(r["witness"]["test_relations"], serde_json::json!([[2]]));
    assert_eq!(r["witness"]["element"], serde_json::json!([1]));
    unsafe { dp_instance_free(h) };
}

#[test]
fn check_and_round_trip() {
    let h = open(MULT_Z4);
    let id = CString::new("lrs-bet.1").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dp_check(h, id.as_ptr(), &mut out) }, DpStatus::Ok);
    let r = take(out);
    assert_eq!(r["reports"][0]["status"], "pass");

    assert_eq!(unsafe { dp_instance_to_json(h, &mut out) }, DpStatus::Ok);
    let doc = take(out).to_string();
    let h2 = open(&doc);
    assert_eq!(unsafe { dp_instance_to_json(h2, &mut out) }, DpStatus::Ok);
    assert_eq!(take(out).to_string(), doc);
    unsafe {
        dp_instance_free(h);
        dp_instance_free(h2);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { dp_instance_from_json(ptr::null(), &mut h) }, DpStatus::NullArgument);
    assert!(h.is_null());

    let bad = CString::new(r#"{"ring": {"zmod": 4}, "modules": {"V": {"side": "right", "factors": [4]}, "W": {"side": "left", "factors": [4]}}, "pairings": {"P": {"v": "V", "w": "W", "beta": [[1], [0]]}}}"#).unwrap();
    assert_eq!(unsafe { dp_instance_from_json(bad.as_ptr(), &mut h) }, DpStatus::Input);
    assert!(last_error().contains("beta"));

    let junk = CString::new("{not json").unwrap();
    assert_eq!(unsafe { dp_instance_from_json(junk.as_ptr(), &mut h) }, DpStatus::Input);

    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dp_analyze(ptr::null(), ptr::null(), &mut out) }, DpStatus::NullArgument);
    let suite = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { dp_run_suite(suite.as_ptr(), ptr::null(), 0, ptr::null(), &mut out) },
        DpStatus::Input
    );
    assert!(last_error().contains("unknown suite"));

    let ok = open(MULT_Z4);
    assert!(last_error().is_empty());
    let missing = CString::new("Q").unwrap();
    assert_eq!(unsafe { dp_alpha(ok, missing.as_ptr(), &mut out) }, DpStatus::Input);
    unsafe { dp_instance_free(ok) };
}

#[test]
fn ring_table_and_suite() {
    let mut out = ptr::null_mut();
    let rings = CString::new("4,ut2_f2").unwrap();
    assert_eq!(unsafe { dp_ring_table(rings.as_ptr(), &mut out) }, DpStatus::Ok);
    let r = take(out);
    assert_eq!(r["rings"][0]["qf"], true);
    assert_eq!(r["rings"][1]["self_injective"], false);
    assert!(r["rings"][1]["baer_witness"].is_object());

    let suite = CString::new("semisimple").unwrap();
    let only = CString::new("2").unwrap();
    assert_eq!(
        unsafe { dp_run_suite(suite.as_ptr(), only.as_ptr(), 3, ptr::null(), &mut out) },
        DpStatus::Ok
    );
    let r = take(out);
    assert_eq!(r["seed"], 3);
    assert_eq!(r["summary"]["fail"], 0);
}

#[test]
fn mine_reports_findings() {
    let mut out = ptr::null_mut();
    let id = CString::new("lrs-bet.1").unwrap();
    let drop = CString::new("injective-cogenerator").unwrap();
    let rings = CString::new("ut2_f2").unwrap();
    assert_eq!(
        unsafe { dp_mine(id.as_ptr(), drop.as_ptr(), rings.as_ptr(), 0, &mut out) },
        DpStatus::Ok
    );
    let r = take(out);
    assert!(!r["findings"].as_array().unwrap().is_empty());
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(dp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export_and_compiles() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/dualpair.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "dp_instance_from_json",
        "dp_instance_free",
        "dp_instance_to_json",
        "dp_analyze",
        "dp_alpha",
        "dp_check",
        "dp_run_suite",
        "dp_mine",
        "dp_ring_table",
        "dp_string_free",
        "dp_last_error",
        "dp_version",
        "typedef struct DpInstance DpInstance",
        "DP_STATUS_CAP_EXCEEDED = 5",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
    let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-std=c99", "-Wall", "-Werror", "-x", "c"])
        .arg(&header)
        .status()
    else {
        eprintln!("no C compiler; syntax check skipped");
        return;
    };
    assert!(status.success());
}
