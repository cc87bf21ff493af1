use std::ffi::{c_char, c_int, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use toric_gtc_ffi::*;

fn json_of(d: *const TgDatum) -> String {
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { tg_datum_to_json(d, &mut s) }, TgStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { tg_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tg_last_error()) }.to_str().unwrap().to_string()
}

#[test]
fn mirror_round_trip_through_handles() {
    let verts = CString::new("[[1,0],[-1,0],[0,1],[0,-1]]").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tg_batyrev(verts.as_ptr(), &mut d) }, TgStatus::Ok);
    let mut m = ptr::null_mut();
    let mut mm = ptr::null_mut();
    assert_eq!(unsafe { tg_datum_mirror(d, &mut m) }, TgStatus::Ok);
    assert_eq!(unsafe { tg_datum_mirror(m, &mut mm) }, TgStatus::Ok);
    assert_eq!(json_of(d), json_of(mm));

    let text = CString::new(json_of(m)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { tg_datum_from_json(text.as_ptr(), &mut back) }, TgStatus::Ok);
    let mut passed: c_int = 0;
    assert_eq!(unsafe { tg_datum_validate(back, &mut passed) }, TgStatus::Ok);
    assert_eq!(passed, 1);
    unsafe {
        tg_datum_free(d);
        tg_datum_free(m);
        tg_datum_free(mm);
        tg_datum_free(back);
    }
}

#[test]
fn error_codes() {
    let mut out = 0u64;
    assert_eq!(unsafe { tg_count_triangle_types(9, &mut out) }, TgStatus::Ok);
    assert_eq!(out, 3);
    assert_eq!(unsafe { tg_count_triangle_types(9, ptr::null_mut()) }, TgStatus::NullPointer);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { tg_batyrev(ptr::null(), &mut d) }, TgStatus::NullPointer);
    let bad = CString::new("[[1, \"x\"]]").unwrap();
    assert_eq!(unsafe { tg_batyrev(bad.as_ptr(), &mut d) }, TgStatus::Malformed);
    assert!(last_error().contains("[0][1]"), "{}", last_error());
    let wide = CString::new("[[2],[-2]]").unwrap();
    assert_eq!(unsafe { tg_batyrev(wide.as_ptr(), &mut d) }, TgStatus::Validation);
    assert!(d.is_null());
    unsafe { tg_datum_free(ptr::null_mut()) };
}

#[test]
fn run_reports_exit_codes() {
    let args: Vec<CString> = ["classify-triple", "--b", "8"].iter().map(|a| CString::new(*a).unwrap()).collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err, mut code) = (ptr::null_mut(), ptr::null_mut(), 0);
    assert_eq!(unsafe { tg_run(argv.as_ptr(), argv.len(), &mut out, &mut err, &mut code) }, TgStatus::Ok);
    assert_eq!(code, 2);
    assert!(unsafe { CStr::from_ptr(err) }.to_str().unwrap().contains("odd"));
    unsafe {
        tg_string_free(out);
        tg_string_free(err);
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/toric_gtc.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source.lines().filter_map(|l| l.split("extern \"C\" fn ").nth(1)).map(|r| r.split('(').next().unwrap()).collect();
    assert!(exports.len() >= 9);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct TgDatum TgDatum;"));
}

#[test]
fn c_program_links_against_static_library() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let lib = deps.parent().unwrap().join("libtoric_gtc_ffi.a");
    assert!(lib.exists(), "{} not built", lib.display());
    let exe = deps.join(format!("ffi-smoke-{}", std::process::id()));
    let status = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    std::fs::remove_file(&exe).ok();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], serde_json::json!(3));
}
