//! C ABI for the checker: run a problem from JSON text, a file path, or a
//! named built-in fixture, then read the resulting report through an opaque
//! handle. All returned strings are owned by the caller and must be released
//! with `eqv_string_free`; reports with `eqv_report_free`. Every entry point
//! catches panics and reports them as a status code.

use equivec::fixtures;
use equivec::problem::{run_json_str, run_path, Report};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

/// Status of an FFI call. Anything other than `Ok` leaves the out-pointer
/// untouched; `InvalidProblem` stores a diagnostic readable through
/// `eqv_last_error`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EqvStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    InvalidProblem = 3,
    UnknownFixture = 4,
    Panic = 5,
}

/// Opaque report handle.
pub struct EqvReport {
    inner: Report,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).ok();
    });
}

fn guarded<F: FnOnce() -> EqvStatus>(f: F) -> EqvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_last_error("internal panic");
            EqvStatus::Panic
        }
    }
}

unsafe fn read_c_str<'a>(s: *const c_char) -> Result<&'a str, EqvStatus> {
    if s.is_null() {
        return Err(EqvStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| EqvStatus::InvalidUtf8)
}

fn deliver(
    out: *mut *mut EqvReport,
    result: Result<Report, String>,
) -> EqvStatus {
    match result {
        Ok(report) => {
            let handle = Box::into_raw(Box::new(EqvReport { inner: report }));
            unsafe { *out = handle };
            EqvStatus::Ok
        }
        Err(diag) => {
            set_last_error(&diag);
            EqvStatus::InvalidProblem
        }
    }
}

/// Run a problem given as a JSON document.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn eqv_check_json(
    json: *const c_char,
    out: *mut *mut EqvReport,
) -> EqvStatus {
    guarded(|| {
        if out.is_null() {
            return EqvStatus::NullArgument;
        }
        let text = match read_c_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        deliver(out, run_json_str(text))
    })
}

/// Run a problem stored in a file.
///
/// # Safety
/// `path` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn eqv_check_file(
    path: *const c_char,
    out: *mut *mut EqvReport,
) -> EqvStatus {
    guarded(|| {
        if out.is_null() {
            return EqvStatus::NullArgument;
        }
        let p = match read_c_str(path) {
            Ok(t) => t,
            Err(status) => return status,
        };
        deliver(out, run_path(Path::new(p)))
    })
}

/// Run a named built-in fixture.
///
/// # Safety
/// `name` must be a valid NUL-terminated string; `out` must be a valid
/// pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn eqv_check_fixture(
    name: *const c_char,
    out: *mut *mut EqvReport,
) -> EqvStatus {
    guarded(|| {
        if out.is_null() {
            return EqvStatus::NullArgument;
        }
        let n = match read_c_str(name) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match fixtures::fixture(n) {
            None => {
                set_last_error("unknown fixture name");
                EqvStatus::UnknownFixture
            }
            Some(text) => deliver(out, run_json_str(text)),
        }
    })
}

/// Exit code of the report: 0 pass, 1 fail, 3 indeterminate; -1 on null.
///
/// # Safety
/// `report` must be null or a handle from a check function.
#[no_mangle]
pub unsafe extern "C" fn eqv_report_exit_code(report: *const EqvReport) -> i32 {
    if report.is_null() {
        return -1;
    }
    (*report).inner.exit_code()
}

fn to_owned_c_string(s: &str) -> *mut c_char {
    let sanitized: String = s.chars().filter(|&c| c != '\0').collect();
    CString::new(sanitized).map_or(ptr::null_mut(), CString::into_raw)
}

/// Verdict of the report as a string; null on null input. Release with
/// `eqv_string_free`.
///
/// # Safety
/// `report` must be null or a handle from a check function.
#[no_mangle]
pub unsafe extern "C" fn eqv_report_verdict(report: *const EqvReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    let code = (*report).inner.exit_code();
    to_owned_c_string(match code {
        0 => "pass",
        1 => "fail",
        _ => "indeterminate",
    })
}

/// The whole report as a JSON document; null on null input or on a
/// serialization failure. Release with `eqv_string_free`.
///
/// # Safety
/// `report` must be null or a handle from a check function.
#[no_mangle]
pub unsafe extern "C" fn eqv_report_json(report: *const EqvReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    match serde_json::to_string(&(*report).inner) {
        Ok(text) => to_owned_c_string(&text),
        Err(_) => ptr::null_mut(),
    }
}

/// The diagnostic from the most recent failing call on this thread; null if
/// there is none. Release with `eqv_string_free`.
#[no_mangle]
pub extern "C" fn eqv_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |msg| to_owned_c_string(msg.to_str().unwrap_or("")))
    })
}

/// Release a report handle. Null is ignored.
///
/// # Safety
/// `report` must be null or a handle from a check function, released at
/// most once.
#[no_mangle]
pub unsafe extern "C" fn eqv_report_free(report: *mut EqvReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, released at most
/// once.
#[no_mangle]
pub unsafe extern "C" fn eqv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn eqv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}
