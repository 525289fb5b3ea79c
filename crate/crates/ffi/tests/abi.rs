use std::ffi::{c_char, CStr};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use ramanujan_audit_ffi::*;

fn take_json(s: *mut c_char) -> serde_json::Value {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ra_string_free(s) };
    serde_json::from_str(&text).unwrap()
}

#[test]
fn instance_accessors_and_audit() {
    let htilde = [1i64, 1];
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ra_instance_new(3, 1, htilde.as_ptr(), htilde.len(), &mut h) }, RaStatus::Ok);
    let (mut n, mut d, mut y, mut girth, mut bip) = (0usize, 0usize, 0usize, 0usize, false);
    unsafe {
        assert_eq!(ra_instance_order(h, &mut n), RaStatus::Ok);
        assert_eq!(ra_instance_degree(h, &mut d), RaStatus::Ok);
        assert_eq!(ra_instance_y_size(h, &mut y), RaStatus::Ok);
        assert_eq!(ra_instance_girth(h, &mut girth), RaStatus::Ok);
        assert_eq!(ra_instance_is_bipartite(h, &mut bip), RaStatus::Ok);
    }
    assert_eq!((n, d, y, girth, bip), (720, 4, 24, 8, true));

    let mut len = 0usize;
    assert_eq!(unsafe { ra_instance_y_vertices(h, ptr::null_mut(), 0, &mut len) }, RaStatus::Ok);
    let mut ids = vec![usize::MAX; len];
    assert_eq!(unsafe { ra_instance_y_vertices(h, ids.as_mut_ptr(), ids.len(), &mut len) }, RaStatus::Ok);
    assert_eq!(len, 24);
    assert!(ids.iter().all(|&v| v < n));

    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ra_instance_summary_json(h, &mut s) }, RaStatus::Ok);
    assert_eq!(take_json(s)["instance"]["x_order"], 720);

    assert_eq!(unsafe { ra_instance_audit_json(h, 1e-9, 4096, &mut s) }, RaStatus::Ok);
    let report = take_json(s);
    assert_eq!(report["pass"], true);
    assert_eq!(report["audits"]["vertex"]["histogram"]["2"], 48);

    assert_eq!(unsafe { ra_instance_audit_json(h, f64::NAN, 4096, &mut s) }, RaStatus::InvalidArgument);
    unsafe { ra_instance_free(h) };
}

#[test]
fn search_and_tree_reports() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { ra_search_json(3, 1, false, &mut s) }, RaStatus::Ok);
    let report = take_json(s);
    assert!(report["count"].as_u64().unwrap() >= 1);

    assert_eq!(unsafe { ra_tree_audit_json(2, 3, 2, RaEmbed::Ramified, &mut s) }, RaStatus::Ok);
    let report = take_json(s);
    assert_eq!(report["pass"], true);

    assert_eq!(unsafe { ra_tree_audit_json(2, 6, 2, RaEmbed::None, &mut s) }, RaStatus::InvalidArgument);
    let msg = unsafe { CStr::from_ptr(ra_last_error_message()) }.to_str().unwrap();
    assert!(!msg.is_empty());
}

#[test]
fn wrong_degree_htilde_is_rejected() {
    let htilde = [1i64, 0, 1];
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ra_instance_new(3, 1, htilde.as_ptr(), 3, &mut h) }, RaStatus::InvalidArgument);
    assert!(h.is_null());
    unsafe { ra_instance_free(ptr::null_mut()) };
    unsafe { ra_string_free(ptr::null_mut()) };
}

fn header() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("include/ramanujan_audit.h")
}

fn cc_available() -> bool {
    Command::new("cc").arg("--version").output().is_ok_and(|o| o.status.success())
}

#[test]
fn header_compiles_as_c() {
    if !cc_available() {
        eprintln!("cc not found; skipping");
        return;
    }
    let out = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c"])
        .arg(header())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn c_program_links_and_runs() {
    if !cc_available() {
        eprintln!("cc not found; skipping");
        return;
    }
    // target/<profile>/deps/<test binary> -> target/<profile>/
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(Path::parent).unwrap();
    let mut build = Command::new(env!("CARGO"));
    build.args(["build", "--quiet", "--lib", "-p", "ramanujan-audit-ffi"]);
    if profile_dir.file_name().is_some_and(|n| n == "release") {
        build.arg("--release");
    }
    let status = build.current_dir(env!("CARGO_MANIFEST_DIR")).status().unwrap();
    assert!(status.success());
    let lib = profile_dir.join("libramanujan_audit_ffi.a");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "ramanujan_audit.h"
int main(void) {
    RaInstance *h = NULL;
    int64_t coeffs[2] = {1, 1};
    if (ra_instance_new(3, 1, coeffs, 2, &h) != RA_STATUS_OK) return 10;
    size_t n = 0, y = 0;
    bool bip = false;
    ra_instance_order(h, &n);
    ra_instance_y_size(h, &y);
    ra_instance_is_bipartite(h, &bip);
    ra_instance_free(h);
    if (ra_instance_new(4, 1, NULL, 0, &h) != RA_STATUS_INVALID_ARGUMENT) return 11;
    printf("%zu %zu %d %s\n", n, y, (int)bip, ra_last_error_message()[0] ? "err" : "none");
    return 0;
}
"#,
    )
    .unwrap();
    let bin = dir.path().join("main");
    let out = Command::new("cc")
        .arg("-I")
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "720 24 1 err");
}
