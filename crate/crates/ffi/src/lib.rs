//! C interface to `toric-gtc`.
//!
//! Objects are passed as opaque handles that the caller frees with the
//! matching `*_free` function. Every call returns a [`TgStatus`]; on failure
//! [`tg_last_error`] describes the problem. Strings returned to the caller
//! are freed with [`tg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use toric_gtc::duality::{mirror, validate_duality, DualityDatum};
use toric_gtc::generators::{batyrev_datum, count_triangle_types};
use toric_gtc::json::{canonical, parse, polytope_in, DatumJson, JMat};
use toric_gtc::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Input that does not parse or has the wrong shape.
    Malformed = 3,
    /// Well-formed input failing a mathematical condition.
    Validation = 4,
    Panic = 5,
}

/// A duality datum.
pub struct TgDatum(DualityDatum);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> TgStatus {
    match e {
        Error::Dimension(_) | Error::Invalid(_) | Error::Precondition(_) | Error::Collinear => TgStatus::Malformed,
        _ => TgStatus::Validation,
    }
}

fn guard<F: FnOnce() -> Result<(), (TgStatus, String)>>(f: F) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            TgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            TgStatus::Panic
        }
    }
}

fn lib(e: Error) -> (TgStatus, String) {
    (status_of(&e), e.to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (TgStatus, String)> {
    if s.is_null() {
        return Err((TgStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| (TgStatus::InvalidUtf8, e.to_string()))
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), (TgStatus, String)> {
    if p.is_null() {
        Err((TgStatus::NullPointer, format!("null {what}")))
    } else {
        Ok(())
    }
}

fn give_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul").into_raw()
}

/// Message for the last failed call on this thread; empty after success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_datum_from_json(json: *const c_char, out: *mut *mut TgDatum) -> TgStatus {
    guard(|| {
        null_check(out, "output pointer")?;
        let text = read_str(json)?;
        let j: DatumJson = parse(text).map_err(|e| (TgStatus::Malformed, e.to_string()))?;
        let d = j.to_datum().map_err(lib)?;
        *out = Box::into_raw(Box::new(TgDatum(d)));
        Ok(())
    })
}

/// The Batyrev datum of a reflexive polytope given as a JSON vertex list.
///
/// # Safety
/// `vertices_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_batyrev(vertices_json: *const c_char, out: *mut *mut TgDatum) -> TgStatus {
    guard(|| {
        null_check(out, "output pointer")?;
        let text = read_str(vertices_json)?;
        let m: JMat = parse(text).map_err(|e| (TgStatus::Malformed, e.to_string()))?;
        let p = polytope_in(&m).map_err(lib)?;
        let b = batyrev_datum(&p).map_err(lib)?;
        *out = Box::into_raw(Box::new(TgDatum(b.datum)));
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_datum_mirror(d: *const TgDatum, out: *mut *mut TgDatum) -> TgStatus {
    guard(|| {
        null_check(d, "datum")?;
        null_check(out, "output pointer")?;
        let m = mirror(&(*d).0).map_err(lib)?;
        *out = Box::into_raw(Box::new(TgDatum(m)));
        Ok(())
    })
}

/// Sets `*passed` to 1 if the datum satisfies every duality condition, else
/// to 0 with the failed checks in [`tg_last_error`].
///
/// # Safety
/// `d` must come from this library and `passed` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_datum_validate(d: *const TgDatum, passed: *mut c_int) -> TgStatus {
    let mut failures = None;
    let status = guard(|| {
        null_check(d, "datum")?;
        null_check(passed, "output pointer")?;
        let r = validate_duality(&(*d).0);
        *passed = c_int::from(r.passed());
        if !r.passed() {
            failures = Some(r.to_string());
        }
        Ok(())
    });
    if let Some(f) = failures {
        set_error(&f);
    }
    status
}

/// Canonical JSON for the datum; free with [`tg_string_free`].
///
/// # Safety
/// `d` must come from this library and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_datum_to_json(d: *const TgDatum, out: *mut *mut c_char) -> TgStatus {
    guard(|| {
        null_check(d, "datum")?;
        null_check(out, "output pointer")?;
        let j = DatumJson::from_datum(&(*d).0).map_err(lib)?;
        *out = give_string(canonical(&j));
        Ok(())
    })
}

/// # Safety
/// `d` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn tg_datum_free(d: *mut TgDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn tg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of triangle types `a` for odd `b`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tg_count_triangle_types(b: u64, out: *mut u64) -> TgStatus {
    guard(|| {
        null_check(out, "output pointer")?;
        *out = count_triangle_types(b).map_err(lib)?;
        Ok(())
    })
}

/// Runs the command line with `argc` arguments (not including the program
/// name). Standard output and standard error go to `*out` and `*err` (free
/// both with [`tg_string_free`]), the command's exit code to `*exit_code`.
///
/// # Safety
/// `argv` must hold `argc` nul-terminated strings; `out`, `err` and
/// `exit_code` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn tg_run(
    argv: *const *const c_char,
    argc: usize,
    out: *mut *mut c_char,
    err: *mut *mut c_char,
    exit_code: *mut c_int,
) -> TgStatus {
    guard(|| {
        null_check(out, "output pointer")?;
        null_check(err, "error pointer")?;
        null_check(exit_code, "exit code pointer")?;
        if argc > 0 {
            null_check(argv, "argv")?;
        }
        let mut args = vec!["toric-gtc".to_string()];
        for i in 0..argc {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        let o = toric_gtc::cli::run(args);
        *exit_code = o.code;
        *out = give_string(o.stdout);
        *err = give_string(o.stderr);
        Ok(())
    })
}
