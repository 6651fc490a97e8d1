use std::ffi::{CStr, CString};
use std::ptr;

use modcheck_ffi::*;

fn corpus(name: &str) -> *mut McAlgebra {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_algebra_from_corpus(name.as_ptr(), &mut out) }, McStatus::Ok);
    assert!(!out.is_null());
    out
}

fn last_error() -> String {
    let p = mc_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn load_and_size() {
    let alg = corpus("z2xz2");
    let mut n = 0usize;
    assert_eq!(unsafe { mc_algebra_size(alg, &mut n) }, McStatus::Ok);
    assert_eq!(n, 4);
    unsafe { mc_algebra_free(alg) };
}

#[test]
fn load_json_and_report_errors() {
    let good = CString::new(r#"{"name":"s","size":2,"operations":[{"symbol":"m","arity":2,"table":[0,0,0,1]}]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_algebra_from_json(good.as_ptr(), &mut out) }, McStatus::Ok);
    let mut count = 0usize;
    assert_eq!(
        unsafe { mc_enumerate_count(out, McRelKind::ReflAdm, 1000, &mut count) },
        McStatus::Ok
    );
    assert_eq!(count, 4);
    unsafe { mc_algebra_free(out) };

    let bad = CString::new(r#"{"name":"s","size":2,"operations":[{"symbol":"m","arity":2,"table":[0]}]}"#).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_algebra_from_json(bad.as_ptr(), &mut out) }, McStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("table"));

    let missing = CString::new("nope").unwrap();
    assert_eq!(
        unsafe { mc_algebra_from_corpus(missing.as_ptr(), &mut out) },
        McStatus::NotFound
    );
}

#[test]
fn null_arguments() {
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { mc_algebra_from_json(ptr::null(), &mut out) }, McStatus::NullPointer);
    let mut n = 0usize;
    assert_eq!(unsafe { mc_algebra_size(ptr::null(), &mut n) }, McStatus::NullPointer);
    unsafe {
        mc_algebra_free(ptr::null_mut());
        mc_string_free(ptr::null_mut());
    }
}

#[test]
fn check_identities() {
    let alg = corpus("l2");
    let mut v = McVerdict::default();
    let label = CString::new("(1.1)").unwrap();
    assert_eq!(unsafe { mc_check_identity(alg, label.as_ptr(), 2, &mut v) }, McStatus::Ok);
    assert!(v.holds);
    assert_eq!(v.checked, 8);

    let text = CString::new("S:REFL |- S ; S <= S").unwrap();
    assert_eq!(unsafe { mc_check_identity(alg, text.as_ptr(), 1, &mut v) }, McStatus::Ok);
    assert!(v.holds);

    let broken = CString::new("S:REFL |- S <= T").unwrap();
    assert_eq!(unsafe { mc_check_identity(alg, broken.as_ptr(), 1, &mut v) }, McStatus::Parse);
    assert!(last_error().contains("`T`"));
    unsafe { mc_algebra_free(alg) };

    let klein = corpus("z2xz2");
    let variant = CString::new(
        "Theta:CON, S:CON, T:CON |- Theta & (S ; conv(T)) <= star(Theta & S ; Theta & conv(T))",
    )
    .unwrap();
    assert_eq!(unsafe { mc_check_identity(klein, variant.as_ptr(), 4, &mut v) }, McStatus::Ok);
    assert!(!v.holds);
    unsafe { mc_algebra_free(klein) };
}

#[test]
fn term_search() {
    let alg = corpus("l2");
    let mut k = 0usize;
    let mut terms = ptr::null_mut();
    assert_eq!(
        unsafe { mc_find_terms(alg, McFamily::DirectedGumm, 8, 1 << 20, &mut k, &mut terms) },
        McStatus::Ok
    );
    assert_eq!(k, 2);
    let text = unsafe { CStr::from_ptr(terms) }.to_str().unwrap().to_owned();
    assert_eq!(text.lines().count(), 3);
    assert!(text.starts_with("p = "));
    unsafe { mc_string_free(terms) };

    assert_eq!(
        unsafe { mc_find_terms(alg, McFamily::DirectedGumm, 8, 5, &mut k, &mut terms) },
        McStatus::CapExceeded
    );
    unsafe { mc_algebra_free(alg) };

    let sl = corpus("sl2");
    assert_eq!(
        unsafe { mc_find_terms(sl, McFamily::Day, 8, 1 << 20, &mut k, &mut terms) },
        McStatus::NotFound
    );
    unsafe { mc_algebra_free(sl) };
}

#[test]
fn header_declares_every_function() {
    let header = include_str!("../include/modcheck.h");
    for f in [
        "mc_algebra_from_json",
        "mc_algebra_from_corpus",
        "mc_algebra_free",
        "mc_algebra_size",
        "mc_check_identity",
        "mc_enumerate_count",
        "mc_find_terms",
        "mc_string_free",
        "mc_last_error",
    ] {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/modcheck.h");
    let Ok(status) = std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-x", "c", header])
        .status()
    else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(status.success());
}
