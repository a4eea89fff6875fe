use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use grouplet_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    let p = grouplet_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned()
}

fn parse(spec: &str) -> *mut GroupletGroup {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { grouplet_group_parse(c(spec).as_ptr(), &mut g) },
        GROUPLET_OK
    );
    g
}

fn take_string(p: *mut c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { grouplet_string_free(p) };
    s
}

#[test]
fn group_lifecycle() {
    let g = parse("C2xC4");
    assert_eq!(unsafe { grouplet_group_order(g) }, 8);
    let mut divides = false;
    assert_eq!(
        unsafe { grouplet_char_divides(c("F2").as_ptr(), g, &mut divides) },
        GROUPLET_OK
    );
    assert!(divides);
    assert_eq!(
        unsafe { grouplet_char_divides(c("Q").as_ptr(), g, &mut divides) },
        GROUPLET_OK
    );
    assert!(!divides);
    unsafe { grouplet_group_free(g) };
    unsafe { grouplet_group_free(ptr::null_mut()) };
    assert_eq!(unsafe { grouplet_group_order(ptr::null()) }, 0);
}

#[test]
fn verdicts() {
    let g = parse("C3");
    for (field, semisimple, dim) in [("Q", true, 0), ("F3", false, 2), ("F2", true, 0)] {
        let mut v = ptr::null_mut();
        assert_eq!(
            unsafe { grouplet_verdict_compute(g, c(field).as_ptr(), 7, &mut v) },
            GROUPLET_OK
        );
        assert_eq!(
            unsafe { grouplet_verdict_is_semisimple(v) },
            semisimple,
            "{field}"
        );
        let (mut d, mut exact) = (usize::MAX, false);
        assert_eq!(
            unsafe { grouplet_verdict_radical_dimension(v, &mut d, &mut exact) },
            GROUPLET_OK
        );
        assert_eq!((d, exact), (dim, true));
        let mut json = ptr::null_mut();
        assert_eq!(
            unsafe { grouplet_verdict_to_json(v, &mut json) },
            GROUPLET_OK
        );
        let report: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(report["field"], field);
        assert_eq!(report["order"], 3);
        unsafe { grouplet_verdict_free(v) };
    }
    unsafe { grouplet_group_free(g) };
}

#[test]
fn lower_bound_verdicts_report_inexact_dimension() {
    let g = parse("C12");
    let mut v = ptr::null_mut();
    assert_eq!(
        unsafe { grouplet_verdict_compute(g, c("F3").as_ptr(), 0, &mut v) },
        GROUPLET_OK
    );
    let (mut d, mut exact) = (0, true);
    assert_eq!(
        unsafe { grouplet_verdict_radical_dimension(v, &mut d, &mut exact) },
        GROUPLET_OK
    );
    assert!(!exact && d >= 1);
    unsafe {
        grouplet_verdict_free(v);
        grouplet_group_free(g);
    }
}

#[test]
fn embedding() {
    let g = parse("C3");
    let mut out = ptr::null_mut();
    let rc = unsafe { grouplet_embed_json(g, c("Q").as_ptr(), c("1,2,3").as_ptr(), &mut out) };
    assert_eq!(rc, GROUPLET_OK);
    assert_eq!(
        take_string(out),
        r#"[["1","2","3"],["3","1","2"],["2","3","1"]]"#
    );
    let rc = unsafe { grouplet_embed_json(g, c("Q").as_ptr(), c("1,2").as_ptr(), &mut out) };
    assert_eq!(rc, GROUPLET_ERR_PARSE);
    assert!(last_error().contains("1,2"), "{}", last_error());
    unsafe { grouplet_group_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(
        unsafe { grouplet_group_parse(c("Z5").as_ptr(), &mut g) },
        GROUPLET_ERR_PARSE
    );
    assert!(g.is_null());
    assert!(last_error().contains("Z5"));
    assert_eq!(
        unsafe { grouplet_group_parse(ptr::null(), &mut g) },
        GROUPLET_ERR_NULL
    );
    assert_eq!(
        unsafe { grouplet_group_parse(c("C2").as_ptr(), ptr::null_mut()) },
        GROUPLET_ERR_NULL
    );
    let bad_utf8 = [0xffu8, 0];
    assert_eq!(
        unsafe { grouplet_group_parse(bad_utf8.as_ptr().cast(), &mut g) },
        GROUPLET_ERR_UTF8
    );

    let g = parse("C2");
    let mut v = ptr::null_mut();
    assert_eq!(
        unsafe { grouplet_verdict_compute(g, c("F4").as_ptr(), 0, &mut v) },
        GROUPLET_ERR_PARSE
    );
    assert_eq!(
        unsafe { grouplet_verdict_compute(ptr::null(), c("Q").as_ptr(), 0, &mut v) },
        GROUPLET_ERR_NULL
    );
    let mut d = 0;
    let mut exact = false;
    assert_eq!(
        unsafe { grouplet_verdict_radical_dimension(ptr::null(), &mut d, &mut exact) },
        GROUPLET_ERR_NULL
    );
    assert!(!unsafe { grouplet_verdict_is_semisimple(ptr::null()) });
    unsafe { grouplet_group_free(g) };
}

#[test]
fn errors_are_per_thread() {
    let mut g = ptr::null_mut();
    assert_ne!(
        unsafe { grouplet_group_parse(c("nope").as_ptr(), &mut g) },
        GROUPLET_OK
    );
    std::thread::spawn(|| assert!(grouplet_last_error().is_null()))
        .join()
        .unwrap();
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/grouplet.h")
}

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(header()).unwrap();
    for name in [
        "typedef struct GroupletGroup GroupletGroup;",
        "typedef struct GroupletVerdict GroupletVerdict;",
        "grouplet_group_parse",
        "grouplet_verdict_compute",
        "grouplet_verdict_to_json",
        "grouplet_embed_json",
        "grouplet_string_free",
        "grouplet_last_error",
        "#define GROUPLET_ERR_INTERNAL 5",
    ] {
        assert!(text.contains(name), "missing {name}");
    }
}

const SMOKE_C: &str = r#"#include <stdio.h>
#include <string.h>
#include "grouplet.h"

int main(void) {
    GroupletGroup *g = NULL;
    GroupletVerdict *v = NULL;
    char *json = NULL;
    size_t dim = 0;
    bool exact = false;
    if (grouplet_group_parse("S3", &g) != GROUPLET_OK) return 10;
    if (grouplet_group_order(g) != 6) return 11;
    if (grouplet_verdict_compute(g, "F3", 1, &v) != GROUPLET_OK) return 12;
    if (grouplet_verdict_is_semisimple(v)) return 13;
    if (grouplet_verdict_radical_dimension(v, &dim, &exact) != GROUPLET_OK || dim != 4 || !exact) return 14;
    if (grouplet_verdict_to_json(v, &json) != GROUPLET_OK || !strstr(json, "\"non_semisimple\"")) return 15;
    grouplet_string_free(json);
    grouplet_verdict_free(v);
    if (grouplet_verdict_compute(g, "F9", 1, &v) != GROUPLET_ERR_PARSE) return 16;
    printf("%s\n", grouplet_last_error());
    grouplet_group_free(g);
    return 0;
}
"#;

/// Builds and runs a C program against the header and the static library.
#[test]
fn c_program_links_and_runs() {
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("no C compiler; skipping");
        return;
    }
    let profile_dir = std::env::current_exe()
        .unwrap()
        .parent()
        .unwrap()
        .parent()
        .unwrap()
        .to_path_buf();
    let lib = profile_dir.join("libgrouplet_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("grouplet-ffi-smoke");
    std::fs::create_dir_all(&dir).unwrap();
    let (src, exe) = (dir.join("smoke.c"), dir.join("smoke"));
    std::fs::write(&src, SMOKE_C).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(header().parent().unwrap())
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "compile/link failed");
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("F9"));
}
