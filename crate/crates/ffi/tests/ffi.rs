use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use trigonal_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { trigonal_string_free(s) };
    out
}

#[test]
fn monodromy_roundtrip() {
    let braids = CString::new("s1^3;s2^3;s1^-1.s2^3.s1;s2.s1^3.s2^-1").unwrap();
    let mut h = ptr::null_mut();
    // not a valid Gamma(3) tuple, but parsing must succeed and lax validation too
    assert_eq!(unsafe { trigonal_monodromy_parse(braids.as_ptr(), 2, ptr::null(), &mut h) }, TrigonalStatus::Ok);
    assert_eq!(unsafe { trigonal_monodromy_validate(h, false) }, TrigonalStatus::Ok);
    let (mut rank, mut len) = (0u64, 0usize);
    let mut fs = [0u64; 4];
    assert_eq!(unsafe { trigonal_uniform_quotient(h, &mut rank, fs.as_mut_ptr(), 4, &mut len) }, TrigonalStatus::Ok);
    assert_eq!((rank, &fs[..len]), (0, &[3u64, 3][..]));
    assert_eq!(unsafe { trigonal_uniform_quotient(h, &mut rank, fs.as_mut_ptr(), 1, &mut len) }, TrigonalStatus::BufferTooSmall);
    assert_eq!(len, 2);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { trigonal_invariants_json(h, &mut s) }, TrigonalStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["schema_version"], 1);
    unsafe { trigonal_monodromy_free(h) };
}

#[test]
fn errors_are_reported() {
    let bad = CString::new("s7").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { trigonal_monodromy_parse(bad.as_ptr(), 1, ptr::null(), &mut h) }, TrigonalStatus::Parse);
    assert!(h.is_null());
    let msg = unsafe { CStr::from_ptr(trigonal_last_error()) }.to_str().unwrap();
    assert!(msg.contains("s7"), "{msg}");
    assert_eq!(unsafe { trigonal_monodromy_parse(ptr::null(), 1, ptr::null(), &mut h) }, TrigonalStatus::NullPointer);
    let mut sk = ptr::null_mut();
    assert_eq!(unsafe { trigonal_skeleton_new(2, 3, &mut sk) }, TrigonalStatus::Invalid);
    let one = CString::new("s1").unwrap();
    assert_eq!(unsafe { trigonal_monodromy_parse(one.as_ptr(), 1, ptr::null(), &mut h) }, TrigonalStatus::Ok);
    assert_eq!(unsafe { trigonal_monodromy_validate(h, true) }, TrigonalStatus::Validation);
    unsafe { trigonal_monodromy_free(h) };
}

#[test]
fn skeleton_and_catalog() {
    let mut sk = ptr::null_mut();
    assert_eq!(unsafe { trigonal_skeleton_new(5, 5, &mut sk) }, TrigonalStatus::Ok);
    let mut c = TrigonalCensus::default();
    assert_eq!(unsafe { trigonal_skeleton_census(sk, &mut c) }, TrigonalStatus::Ok);
    assert_eq!((c.index, c.cusps, c.genus), (60, 12, 0));
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { trigonal_skeleton_export(sk, 0, &mut s) }, TrigonalStatus::Ok);
    assert!(take(s).starts_with("graph"));
    unsafe { trigonal_skeleton_free(sk) };

    assert_eq!(unsafe { trigonal_catalog_verify(1, 5, &mut s) }, TrigonalStatus::Ok);
    let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(unsafe { trigonal_catalog_verify(1, 11, &mut s) }, TrigonalStatus::Invalid);

    assert_eq!(unsafe { trigonal_isotrivial_quotient(0, 2, &mut s) }, TrigonalStatus::Ok);
    assert_eq!(take(s), r#"{"factors":[3],"rank":0}"#);
}

#[test]
fn header_declares_the_interface() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/trigonal.h")).unwrap();
    for name in ["trigonal_monodromy_parse", "trigonal_uniform_quotient", "trigonal_catalog_verify", "trigonal_last_error", "TRIGONAL_STATUS_OK"] {
        assert!(h.contains(name), "{name}");
    }
}

/// Links a small C program against the static library, when a C compiler
/// and the archive are available.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|p| p.parent()).unwrap().to_path_buf();
    let lib = profile_dir.join("libtrigonal_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no static library or C compiler");
        return;
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = std::env::temp_dir().join(format!("trigonal_ffi_{}", std::process::id()));
    std::fs::create_dir_all(&tmp).unwrap();
    let src = tmp.join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include "trigonal.h"
int main(void) {
    TrigonalSkeleton *s = NULL;
    if (trigonal_skeleton_new(3, 3, &s) != TRIGONAL_STATUS_OK) return 1;
    TrigonalCensus c;
    trigonal_skeleton_census(s, &c);
    trigonal_skeleton_free(s);
    if (trigonal_skeleton_new(0, 3, &s) != TRIGONAL_STATUS_INVALID) return 2;
    printf("%llu %llu %lld\n", (unsigned long long)c.index, (unsigned long long)c.cusps, (long long)c.genus);
    return 0;
}
"#,
    )
    .unwrap();
    let bin = tmp.join("smoke");
    let st = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "12 4 0");
}
