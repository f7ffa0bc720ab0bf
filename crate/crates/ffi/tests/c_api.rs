use std::ffi::{CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use affsemi_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(affsemi_last_error()) }.to_string_lossy().into_owned()
}

fn semigroup(dim: usize, gens: &[i64]) -> *mut AffsemiSemigroup {
    let mut out = ptr::null_mut();
    let status = unsafe { affsemi_semigroup_new(dim, gens.as_ptr(), gens.len() / dim.max(1), &mut out) };
    assert_eq!(status, AffsemiStatus::Ok, "{}", last_error());
    out
}

#[test]
fn membership_with_coefficients() {
    let s = semigroup(1, &[3, 5]);
    let mut verdict = AffsemiMembership::No;
    let mut coeffs = [0u64; 2];
    let mut n = 0usize;
    let x = [15i64];
    let status =
        unsafe { affsemi_semigroup_member(s, x.as_ptr(), 1, 64, &mut verdict, coeffs.as_mut_ptr(), 2, &mut n) };
    assert_eq!(status, AffsemiStatus::Ok);
    assert_eq!((verdict, coeffs, n), (AffsemiMembership::Yes, [0, 3], 2));
    let x = [7i64];
    let status =
        unsafe { affsemi_semigroup_member(s, x.as_ptr(), 1, 64, &mut verdict, ptr::null_mut(), 0, ptr::null_mut()) };
    assert_eq!((status, verdict), (AffsemiStatus::Ok, AffsemiMembership::No));
    let x = [15i64];
    let status =
        unsafe { affsemi_semigroup_member(s, x.as_ptr(), 1, 64, &mut verdict, coeffs.as_mut_ptr(), 1, &mut n) };
    assert_eq!(status, AffsemiStatus::BufferTooSmall);
    unsafe { affsemi_semigroup_free(s) };
}

#[test]
fn parse_errors_and_null_pointers() {
    let mut out = ptr::null_mut();
    let bad = CString::new("{").unwrap();
    assert_eq!(unsafe { affsemi_semigroup_parse(bad.as_ptr(), &mut out) }, AffsemiStatus::Parse);
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { affsemi_semigroup_parse(ptr::null(), &mut out) }, AffsemiStatus::NullPointer);
    let mut rank = 0usize;
    assert_eq!(unsafe { affsemi_semigroup_rank(ptr::null(), &mut rank) }, AffsemiStatus::NullPointer);
    let dim_mismatch = CString::new(r#"{"kind":"semigroup","dim":2,"gens":[[1]]}"#).unwrap();
    assert_eq!(unsafe { affsemi_semigroup_parse(dim_mismatch.as_ptr(), &mut out) }, AffsemiStatus::Precondition);
    unsafe {
        affsemi_semigroup_free(ptr::null_mut());
        affsemi_context_free(ptr::null_mut());
        affsemi_string_free(ptr::null_mut());
    }
}

#[test]
fn json_round_trip() {
    let text = CString::new(r#"{"kind":"semigroup","dim":2,"gens":[[2,0],[1,1],[0,2]]}"#).unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { affsemi_semigroup_parse(text.as_ptr(), &mut s) }, AffsemiStatus::Ok);
    let (mut rank, mut positive) = (0usize, false);
    unsafe {
        assert_eq!(affsemi_semigroup_rank(s, &mut rank), AffsemiStatus::Ok);
        assert_eq!(affsemi_semigroup_is_positive(s, &mut positive), AffsemiStatus::Ok);
    }
    assert_eq!((rank, positive), (2, true));
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { affsemi_semigroup_to_json(s, &mut json) }, AffsemiStatus::Ok);
    let printed = unsafe { CStr::from_ptr(json) }.to_str().unwrap().to_owned();
    assert_eq!(printed, r#"{"kind":"semigroup","dim":2,"gens":[[2,0],[1,1],[0,2]]}"#);
    unsafe {
        affsemi_string_free(json);
        affsemi_semigroup_free(s);
    }
}

#[test]
fn torsion_in_fibered_sums() {
    let (s1, s2) = (semigroup(1, &[2]), semigroup(1, &[3]));
    for (base, torsion_free, order) in [(6, true, 1u64), (12, false, 2)] {
        let s = semigroup(1, &[base]);
        let mut ctx = ptr::null_mut();
        assert_eq!(unsafe { affsemi_context_new(s1, s2, s, &mut ctx) }, AffsemiStatus::Ok);
        let (mut tf, mut ord) = (!torsion_free, 0u64);
        let mut tilde = ptr::null_mut();
        unsafe {
            assert_eq!(affsemi_context_is_torsion_free(ctx, &mut tf), AffsemiStatus::Ok);
            assert_eq!(affsemi_context_torsion_order(ctx, &mut ord), AffsemiStatus::Ok);
            assert_eq!(affsemi_context_tilde(ctx, &mut tilde), AffsemiStatus::Ok);
        }
        assert_eq!((tf, ord), (torsion_free, order));
        let mut rank = 0usize;
        unsafe {
            assert_eq!(affsemi_semigroup_rank(tilde, &mut rank), AffsemiStatus::Ok);
            affsemi_semigroup_free(tilde);
            affsemi_context_free(ctx);
            affsemi_semigroup_free(s);
        }
        assert_eq!(rank, 1);
    }
    unsafe {
        affsemi_semigroup_free(s1);
        affsemi_semigroup_free(s2);
    }
}

#[test]
fn gluing_verdicts() {
    let nc1 = semigroup(3, &[2, 1, 0, 1, 1, 1, 0, 1, 2]);
    let nc2 = semigroup(3, &[1, 2, 0, 1, 1, 1, 1, 0, 2]);
    let mut verdict = AffsemiGluing::No;
    let mut w = [0i64; 3];
    assert_eq!(unsafe { affsemi_glue(nc1, nc2, 1, 1, &mut verdict, w.as_mut_ptr(), 3) }, AffsemiStatus::Ok);
    assert_eq!((verdict, w), (AffsemiGluing::Yes, [1, 1, 1]));
    let quad = semigroup(2, &[2, 0, 1, 1, 0, 2]);
    assert_eq!(unsafe { affsemi_glue(quad, quad, 1, 1, &mut verdict, ptr::null_mut(), 0) }, AffsemiStatus::Ok);
    assert_eq!(verdict, AffsemiGluing::ImpossibleAllScales);
    assert_eq!(
        unsafe { affsemi_glue(quad, quad, 0, 1, &mut verdict, ptr::null_mut(), 0) },
        AffsemiStatus::Precondition
    );
    unsafe {
        affsemi_semigroup_free(nc1);
        affsemi_semigroup_free(nc2);
        affsemi_semigroup_free(quad);
    }
}

#[test]
fn header_declares_every_entry_point() {
    let header = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("include/affsemi.h")).unwrap();
    for name in [
        "affsemi_last_error",
        "affsemi_version",
        "affsemi_string_free",
        "affsemi_semigroup_new",
        "affsemi_semigroup_parse",
        "affsemi_semigroup_free",
        "affsemi_semigroup_member",
        "affsemi_semigroup_to_json",
        "affsemi_context_new",
        "affsemi_context_parse",
        "affsemi_context_tilde",
        "affsemi_glue",
        "AFFSEMI_STATUS_BOUND_EXHAUSTED",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

fn staticlib() -> Option<PathBuf> {
    let deps = std::env::current_exe().ok()?.parent()?.to_path_buf();
    let lib = deps.parent()?.join("libaffsemi_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_the_header() {
    let (Some(lib), Ok(cc)) = (staticlib(), which_cc()) else {
        eprintln!("skipping: no C compiler or static library");
        return;
    };
    let dir = tempfile_dir();
    let src = dir.join("smoke.c");
    std::fs::write(
        &src,
        r#"
#include "affsemi.h"
#include <stdio.h>
int main(void) {
    int64_t gens[] = {3, 5};
    AffsemiSemigroup *s = NULL;
    if (affsemi_semigroup_new(1, gens, 2, &s) != AFFSEMI_STATUS_OK) return 1;
    int64_t x[] = {15};
    AffsemiMembership v;
    uint64_t c[2];
    size_t n = 0;
    if (affsemi_semigroup_member(s, x, 1, 64, &v, c, 2, &n) != AFFSEMI_STATUS_OK) return 2;
    printf("%d %llu %llu\n", (int)v, (unsigned long long)c[0], (unsigned long long)c[1]);
    affsemi_semigroup_free(s);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.join("smoke");
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "0 0 3\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().map(|o| o.status.success()).unwrap_or(false) {
            return Ok(cc.to_string());
        }
    }
    Err(())
}

fn tempfile_dir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affsemi-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
