use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use leaky_hurwitz_ffi::*;

unsafe fn text(v: *const LhValue) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(lh_value_to_string(v, &mut s), LhStatus::Ok);
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    lh_string_free(s);
    out
}

unsafe fn last_error() -> String {
    CStr::from_ptr(lh_last_error()).to_str().unwrap().to_string()
}

#[test]
fn compute_round_trip() {
    unsafe {
        let mu = [2u32];
        let nu = [1u32, 1];
        let mut q = ptr::null_mut();
        assert_eq!(lh_query_new(mu.as_ptr(), 1, nu.as_ptr(), 2, false, &mut q), LhStatus::Ok);
        assert_eq!(lh_query_push_insertion(q, 0, 2), LhStatus::Ok);
        for method in [LhMethod::Fock, LhMethod::Tropical, LhMethod::Auto] {
            let mut v = ptr::null_mut();
            assert_eq!(lh_compute(q, method, &mut v), LhStatus::Ok);
            assert_eq!(text(v), "1/1");
            lh_value_free(v);
        }
        lh_query_free(q);
    }
}

#[test]
fn closed_forms() {
    unsafe {
        let mut v = ptr::null_mut();
        assert_eq!(lh_one_part(1, 2, 1, 5, &mut v), LhStatus::Ok);
        assert_eq!(text(v), "3/2");
        lh_value_free(v);
        assert_eq!(lh_two_part(1, 2, 1, 2, 2, &mut v), LhStatus::Ok);
        assert_eq!(text(v), "3/2");
        lh_value_free(v);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut q = ptr::null_mut();
        let zero = [0u32];
        assert_eq!(lh_query_new(zero.as_ptr(), 1, ptr::null(), 0, false, &mut q), LhStatus::InvalidInput);
        assert!(last_error().contains("positive"));
        assert_eq!(lh_query_new(ptr::null(), 1, ptr::null(), 0, false, &mut q), LhStatus::NullPointer);
        assert_eq!(lh_compute(ptr::null(), LhMethod::Auto, ptr::null_mut()), LhStatus::NullPointer);
        let mut v = ptr::null_mut();
        assert_eq!(lh_one_part(0, 2, 1, 1, &mut v), LhStatus::InvalidInput);
        assert_eq!(lh_query_new(ptr::null(), 0, ptr::null(), 0, false, &mut q), LhStatus::Ok);
        assert!(last_error().is_empty());
        assert_eq!(lh_query_push_insertion(q, 1, 0), LhStatus::InvalidInput);
        lh_query_free(q);
        lh_query_free(ptr::null_mut());
        lh_value_free(ptr::null_mut());
        lh_string_free(ptr::null_mut());
    }
}

#[test]
fn verify_json() {
    unsafe {
        let req = CString::new(r#"{"suite":"bergman","k":1,"r":2,"q":1,"order":8}"#).unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(lh_verify_json(req.as_ptr(), &mut out), LhStatus::Ok);
        let report: serde_json::Value = serde_json::from_str(CStr::from_ptr(out).to_str().unwrap()).unwrap();
        assert_eq!(report["test"], "bergman");
        assert_eq!(report["status"], "pass");
        lh_string_free(out);
        let bad = CString::new(r#"{"suite":"bergman","k":1,"r":2,"q":1,"extra":0}"#).unwrap();
        assert_eq!(lh_verify_json(bad.as_ptr(), &mut out), LhStatus::InvalidInput);
    }
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/leaky_hurwitz.h")).unwrap();
    for name in ["lh_query_new", "lh_compute", "lh_verify_json", "lh_string_free", "LH_STATUS_MISMATCH", "typedef struct LhQuery LhQuery"] {
        assert!(header.contains(name), "{name}");
    }
}

/// Builds and runs a C program against the header and the static library
/// when a C compiler is present.
#[test]
fn c_program() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let exe = std::env::current_exe().unwrap();
    let target_dir = exe.parent().unwrap().parent().unwrap();
    let lib = target_dir.join("libleaky_hurwitz_ffi.a");
    if !lib.exists() {
        eprintln!("{} missing; skipped", lib.display());
        return;
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("c_program");
    std::fs::create_dir_all(&dir).unwrap();
    let src = dir.join("main.c");
    std::fs::write(
        &src,
        r#"
#include <stdio.h>
#include <string.h>
#include "leaky_hurwitz.h"
int main(void) {
    uint32_t mu[] = {3}, nu[] = {1, 1};
    LhQuery *q = NULL;
    LhValue *v = NULL;
    char *s = NULL;
    if (lh_query_new(mu, 1, nu, 2, true, &q) != LH_STATUS_OK) return 10;
    if (lh_query_push_insertion(q, 1, 2) != LH_STATUS_OK) return 11;
    if (lh_compute(q, LH_METHOD_AUTO, &v) != LH_STATUS_OK) return 12;
    if (lh_value_to_string(v, &s) != LH_STATUS_OK) return 13;
    int ok = strcmp(s, "1/1") == 0;
    lh_string_free(s);
    lh_value_free(v);
    lh_query_free(q);
    if (lh_one_part(0, 2, 1, 1, &v) != LH_STATUS_INVALID_INPUT) return 14;
    if (strlen(lh_last_error()) == 0) return 15;
    return ok ? 0 : 1;
}
"#,
    )
    .unwrap();
    let bin = dir.join("main");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let run = Command::new(&bin).status().unwrap();
    assert_eq!(run.code(), Some(0));
}

fn which_cc() -> Result<&'static str, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc);
        }
    }
    Err(())
}
