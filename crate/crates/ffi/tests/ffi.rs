use std::ffi::{CStr, CString};
use std::ptr;

use tsys_ffi::*;

fn parse(text: &str, close: bool) -> *mut TsysSystem {
    let c = CString::new(text).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { tsys_system_parse(c.as_ptr(), close, &mut out) };
    assert_eq!(st, TsysStatus::Ok, "{}", last_error());
    out
}

fn last_error() -> String {
    let p = tsys_last_error_message();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { tsys_string_free(p) };
    s
}

fn edges(t: *const TsysSystem) -> usize {
    let mut n = 0;
    assert_eq!(unsafe { tsys_system_edge_count(t, &mut n) }, TsysStatus::Ok);
    n
}

#[test]
fn parse_render_roundtrip() {
    let t = parse("grid 1 1\n0 0 -> 1 0\n0 1 -> 1 1\n", false);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { tsys_system_render(t, &mut s) }, TsysStatus::Ok);
    assert_eq!(take_string(s), "grid 1 1\n0 0 -> 1 0\n0 1 -> 1 1\n");
    assert_eq!(unsafe { tsys_system_to_json(t, &mut s) }, TsysStatus::Ok);
    assert_eq!(take_string(s), r#"{"r":1,"s":1,"edges":[[[0,0],[1,0]],[[0,1],[1,1]]]}"#);
    let mut comps = 0;
    assert_eq!(unsafe { tsys_system_component_count(t, &mut comps) }, TsysStatus::Ok);
    assert_eq!(comps, 2);
    unsafe { tsys_system_free(t) };
}

#[test]
fn parse_errors_set_message() {
    let c = CString::new("grid 1 1\n0 0 -> 5 5\n").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { tsys_system_parse(c.as_ptr(), false, &mut out) };
    assert_eq!(st, TsysStatus::InputError);
    assert!(out.is_null());
    assert!(last_error().contains("line 2"));

    // needs closing before it is a transfer system
    let c = CString::new("grid 1 1\n0 0 -> 1 1\n").unwrap();
    assert_eq!(unsafe { tsys_system_parse(c.as_ptr(), false, &mut out) }, TsysStatus::InputError);
    let t = parse("grid 1 1\n0 0 -> 1 1\n", true);
    assert_eq!(edges(t), 3);
    unsafe { tsys_system_free(t) };

    let bad = [0x67u8, 0xff, 0];
    let st = unsafe { tsys_system_parse(bad.as_ptr().cast(), false, &mut out) };
    assert_eq!(st, TsysStatus::InvalidUtf8);
}

#[test]
fn null_pointers_are_rejected() {
    let mut n = 0usize;
    assert_eq!(unsafe { tsys_system_edge_count(ptr::null(), &mut n) }, TsysStatus::NullPointer);
    let t = parse("grid 0 1\n", false);
    assert_eq!(unsafe { tsys_system_edge_count(t, ptr::null_mut()) }, TsysStatus::NullPointer);
    assert_eq!(
        unsafe { tsys_system_parse(ptr::null(), false, &mut ptr::null_mut()) },
        TsysStatus::NullPointer
    );
    unsafe {
        tsys_system_free(t);
        tsys_system_free(ptr::null_mut());
        tsys_string_free(ptr::null_mut());
    }
}

#[test]
fn hull_compat_and_extension() {
    let t = parse("grid 1 1\n0 0 -> 1 0\n0 1 -> 1 1\n", false);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { tsys_system_hull(t, &mut h) }, TsysStatus::Ok);
    let mut ok = false;
    assert_eq!(unsafe { tsys_is_compatible(t, h, &mut ok) }, TsysStatus::Ok);
    assert!(ok);

    let mut full = ptr::null_mut();
    assert_eq!(unsafe { tsys_system_complete(1, 1, &mut full) }, TsysStatus::Ok);
    assert_eq!(edges(full), 5);

    // adding 0,0 -> 0,1 to a two-column system forces everything
    let e = [0u32, 0, 0, 1];
    let mut ext = ptr::null_mut();
    assert_eq!(
        unsafe { tsys_min_compatible_extension(t, e.as_ptr(), 1, &mut ext) },
        TsysStatus::Ok
    );
    assert_eq!(edges(ext), 5);

    let mut empty = ptr::null_mut();
    assert_eq!(
        unsafe { tsys_min_compatible_extension(t, ptr::null(), 0, &mut empty) },
        TsysStatus::Ok
    );
    assert_eq!(edges(empty), edges(h));

    let oob = [0u32, 0, 4, 4];
    let st = unsafe { tsys_min_compatible_extension(t, oob.as_ptr(), 1, &mut ext) };
    assert_eq!(st, TsysStatus::InputError);

    unsafe {
        for p in [t, h, full, ext, empty] {
            tsys_system_free(p);
        }
    }
}

#[test]
fn lsp_and_witness() {
    let h0 = parse("grid 1 1\n0 0 -> 1 0\n0 1 -> 1 1\n", false);
    let mut is = false;
    let mut w = ptr::null_mut();
    assert_eq!(unsafe { tsys_lsp(h0, &mut is, &mut w) }, TsysStatus::Ok);
    assert!(is);
    assert!(w.is_null());

    let three = parse("grid 2 0\n", false);
    assert_eq!(unsafe { tsys_lsp(three, &mut is, &mut w) }, TsysStatus::Ok);
    assert!(!is);
    assert!(!w.is_null());
    let mut ok = false;
    assert_eq!(unsafe { tsys_is_compatible(three, w, &mut ok) }, TsysStatus::Ok);
    assert!(ok);
    assert_eq!(edges(w), 1);
    unsafe {
        tsys_system_free(w);
        tsys_system_free(h0);
        tsys_system_free(three);
    }
}

#[test]
fn counting_and_guard() {
    let mut n = 0u64;
    assert_eq!(unsafe { tsys_count_transfer_systems(1, 1, &mut n) }, TsysStatus::Ok);
    assert_eq!(n, 10);
    assert_eq!(unsafe { tsys_count_transfer_systems(3, 0, &mut n) }, TsysStatus::Ok);
    assert_eq!(n, 14);
    assert_eq!(unsafe { tsys_count_transfer_systems(3, 3, &mut n) }, TsysStatus::ResourceGuard);
    assert!(!last_error().is_empty());
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/tsys.h")).unwrap();
    assert!(header.contains("typedef struct TsysSystem TsysSystem;"));
    for name in [
        "tsys_system_parse",
        "tsys_system_free",
        "tsys_string_free",
        "tsys_system_render",
        "tsys_system_to_json",
        "tsys_system_hull",
        "tsys_system_complete",
        "tsys_is_compatible",
        "tsys_min_compatible_extension",
        "tsys_lsp",
        "tsys_count_transfer_systems",
        "tsys_last_error_message",
    ] {
        assert!(header.contains(&format!("{name}(")), "missing {name}");
    }
    assert!(header.contains("TSYS_STATUS_RESOURCE_GUARD = 3"));
}
