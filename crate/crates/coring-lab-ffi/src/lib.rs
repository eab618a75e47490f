//! C interface to the coring-lab engine.
//!
//! Workspaces and reports are opaque handles owned by the caller and released
//! with their `_free` function. Every entry point returns a [`CoringLabStatus`];
//! on anything other than `CORING_LAB_STATUS_OK` or
//! `CORING_LAB_STATUS_MATH_FAILURE` a message is available from
//! [`coring_lab_last_error`]. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use coring_lab::bimodule::regular_bimodule;
use coring_lab::cli::{self, Command, Report, RunOptions, Workspace};
use coring_lab::cochain::{cartier_complex_regular, cohomology_report, relative_hochschild_complex_with, ComplexOptions};

/// Result of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoringLabStatus {
    Ok = 0,
    /// The computation ran and some required check failed.
    MathFailure = 1,
    /// Unreadable document, unknown command or target, guardrail exceeded.
    InputError = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    /// The output buffer is too small; the needed length was written.
    BufferTooSmall = 5,
    Panic = 6,
}

/// A loaded and validated workspace document.
pub struct CoringLabWorkspace {
    inner: Workspace,
    name: String,
}

/// The report of one command.
pub struct CoringLabReport {
    report: Report,
    json: CString,
    text: CString,
}

/// Parameters for [`coring_lab_run`]. Null strings and negative numbers mean
/// "not given"; start from [`coring_lab_options_default`].
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct CoringLabOptions {
    pub extension: *const c_char,
    pub coring: *const c_char,
    pub entwining: *const c_char,
    pub deformation: *const c_char,
    /// `"standard"` or `"transpose"`.
    pub structure: *const c_char,
    pub max_degree: i64,
    pub samples: i64,
    pub max_arity: i64,
    pub seed: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: CoringLabStatus, msg: impl Into<String>) -> CoringLabStatus {
    set_error(msg);
    status
}

fn guarded(f: impl FnOnce() -> CoringLabStatus) -> CoringLabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            fail(CoringLabStatus::Panic, msg)
        }
    }
}

/// Reads a required string argument.
///
/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn required(p: *const c_char, what: &str) -> Result<String, CoringLabStatus> {
    if p.is_null() {
        return Err(fail(CoringLabStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(str::to_string)
        .map_err(|_| fail(CoringLabStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` is null or a valid NUL-terminated string.
unsafe fn optional(p: *const c_char, what: &str) -> Result<Option<String>, CoringLabStatus> {
    if p.is_null() {
        Ok(None)
    } else {
        required(p, what).map(Some)
    }
}

fn count(v: i64) -> Option<usize> {
    usize::try_from(v).ok()
}

fn max_space() -> Result<usize, CoringLabStatus> {
    cli::max_space_from_env().map_err(|e| fail(CoringLabStatus::InputError, e.to_string()))
}

/// Options with every field unset and seed 0.
#[no_mangle]
pub extern "C" fn coring_lab_options_default() -> CoringLabOptions {
    CoringLabOptions {
        extension: ptr::null(),
        coring: ptr::null(),
        entwining: ptr::null(),
        deformation: ptr::null(),
        structure: ptr::null(),
        max_degree: -1,
        samples: -1,
        max_arity: -1,
        seed: 0,
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn coring_lab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn coring_lab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Loads and validates a workspace document from a file.
///
/// # Safety
/// `path` is a valid NUL-terminated string and `out` is a valid pointer to
/// writable storage for one handle. On success `*out` owns a workspace that
/// must be released with [`coring_lab_workspace_free`]; otherwise `*out` is set to null.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_workspace_load(
    path: *const c_char,
    out: *mut *mut CoringLabWorkspace,
) -> CoringLabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CoringLabStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let path = match required(path, "path") {
            Ok(p) => p,
            Err(s) => return s,
        };
        match cli::load_document(std::path::Path::new(&path)) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(CoringLabWorkspace { inner: ws, name: path }));
                CoringLabStatus::Ok
            }
            Err(e) => fail(CoringLabStatus::InputError, e.to_string()),
        }
    })
}

/// Loads and validates a workspace document from JSON text.
///
/// # Safety
/// Same contract as [`coring_lab_workspace_load`], with `json` a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_workspace_parse(
    json: *const c_char,
    out: *mut *mut CoringLabWorkspace,
) -> CoringLabStatus {
    guarded(|| {
        if out.is_null() {
            return fail(CoringLabStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        let text = match required(json, "json") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match cli::load_str(&text) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(CoringLabWorkspace { inner: ws, name: "<memory>".into() }));
                CoringLabStatus::Ok
            }
            Err(e) => fail(CoringLabStatus::InputError, e.to_string()),
        }
    })
}

/// Releases a workspace. Null is ignored.
///
/// # Safety
/// `ws` is null or a handle from this library that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_workspace_free(ws: *mut CoringLabWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Runs one command (`"cartier"`, `"verify-duality"`, ...) on a workspace.
///
/// Returns `CORING_LAB_STATUS_OK` or `CORING_LAB_STATUS_MATH_FAILURE` with a
/// report in `*out`, or an error status with `*out` null.
///
/// # Safety
/// `ws` is a live workspace handle, `command` a valid NUL-terminated string,
/// `options` null or a valid pointer whose string fields are null or valid
/// NUL-terminated strings, and `out` a valid pointer to writable storage. The
/// report must be released with [`coring_lab_report_free`].
#[no_mangle]
pub unsafe extern "C" fn coring_lab_run(
    ws: *const CoringLabWorkspace,
    command: *const c_char,
    options: *const CoringLabOptions,
    out: *mut *mut CoringLabReport,
) -> CoringLabStatus {
    guarded(|| {
        if out.is_null() || ws.is_null() {
            return fail(CoringLabStatus::NullPointer, "workspace or out is null");
        }
        *out = ptr::null_mut();
        let ws = &*ws;
        let o = if options.is_null() { coring_lab_options_default() } else { *options };
        let parsed = (|| -> Result<(Command, RunOptions), CoringLabStatus> {
            let cmd: Command = required(command, "command")?
                .parse()
                .map_err(|e: cli::RunError| fail(CoringLabStatus::InputError, e.to_string()))?;
            Ok((
                cmd,
                RunOptions {
                    extension: optional(o.extension, "extension")?,
                    coring: optional(o.coring, "coring")?,
                    entwining: optional(o.entwining, "entwining")?,
                    deformation: optional(o.deformation, "deformation")?,
                    structure: optional(o.structure, "structure")?,
                    max_degree: count(o.max_degree),
                    samples: count(o.samples),
                    max_arity: count(o.max_arity),
                    seed: o.seed,
                    max_space: max_space()?,
                    timing: false,
                },
            ))
        })();
        let (cmd, opts) = match parsed {
            Ok(x) => x,
            Err(s) => return s,
        };
        match cli::run(cmd, &ws.name, &ws.inner, &opts) {
            Ok(report) => {
                let status = if report.passed() { CoringLabStatus::Ok } else { CoringLabStatus::MathFailure };
                let json = CString::new(report.to_json()).unwrap_or_default();
                let text = CString::new(report.render()).unwrap_or_default();
                *out = Box::into_raw(Box::new(CoringLabReport { report, json, text }));
                status
            }
            Err(e) => fail(CoringLabStatus::InputError, e.to_string()),
        }
    })
}

/// `CORING_LAB_STATUS_OK` if every required check passed, else `CORING_LAB_STATUS_MATH_FAILURE`.
///
/// # Safety
/// `report` is a live report handle.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_report_status(report: *const CoringLabReport) -> CoringLabStatus {
    if report.is_null() {
        return fail(CoringLabStatus::NullPointer, "report is null");
    }
    if (*report).report.passed() {
        CoringLabStatus::Ok
    } else {
        CoringLabStatus::MathFailure
    }
}

/// The report as JSON, borrowed from the handle.
///
/// # Safety
/// `report` is a live report handle; the string is valid until it is freed.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_report_json(report: *const CoringLabReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    (*report).json.as_ptr()
}

/// The human-readable table, borrowed from the handle.
///
/// # Safety
/// `report` is a live report handle; the string is valid until it is freed.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_report_text(report: *const CoringLabReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    (*report).text.as_ptr()
}

/// Releases a report. Null is ignored.
///
/// # Safety
/// `report` is null or a handle from this library that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_report_free(report: *mut CoringLabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Writes `min(len, max_degree + 1)` dimensions and stores `max_degree + 1` in `*written`.
///
/// # Safety
/// `dims` points to `len` writable `size_t` values (or is null when `len` is 0);
/// `written` is a valid pointer.
unsafe fn write_dims(dims: &[usize], out: *mut usize, len: usize, written: *mut usize) -> CoringLabStatus {
    *written = dims.len();
    if len < dims.len() {
        return fail(CoringLabStatus::BufferTooSmall, format!("need {} entries", dims.len()));
    }
    if !dims.is_empty() {
        if out.is_null() {
            return fail(CoringLabStatus::NullPointer, "dims is null");
        }
        ptr::copy_nonoverlapping(dims.as_ptr(), out, dims.len());
    }
    CoringLabStatus::Ok
}

/// Cartier cohomology dimensions of a coring with coefficients in itself, degrees `0..=max_degree`.
///
/// # Safety
/// `ws` is a live workspace handle, `coring` a valid NUL-terminated string,
/// `dims` points to `len` writable `size_t` values and `written` is a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_cartier_dims(
    ws: *const CoringLabWorkspace,
    coring: *const c_char,
    max_degree: usize,
    dims: *mut usize,
    len: usize,
    written: *mut usize,
) -> CoringLabStatus {
    guarded(|| {
        if ws.is_null() || written.is_null() {
            return fail(CoringLabStatus::NullPointer, "workspace or written is null");
        }
        let id = match required(coring, "coring") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(c) = (*ws).inner.corings.get(&id) else {
            return fail(CoringLabStatus::InputError, format!("no coring named {id:?}"));
        };
        let space = match max_space() {
            Ok(m) => m,
            Err(s) => return s,
        };
        let r = cartier_complex_regular(c.clone(), max_degree + 1, &ComplexOptions { max_space: space })
            .and_then(|cx| cohomology_report(&cx));
        match r {
            Ok(mut rep) => {
                rep.dims.truncate(max_degree + 1);
                write_dims(&rep.dims, dims, len, written)
            }
            Err(e) => fail(CoringLabStatus::InputError, e.to_string()),
        }
    })
}

/// Relative Hochschild cohomology dimensions `HH^n(A|B)` with coefficients in `A`, degrees `0..=max_degree`.
///
/// # Safety
/// Same contract as [`coring_lab_cartier_dims`], with `extension` naming an extension.
#[no_mangle]
pub unsafe extern "C" fn coring_lab_hochschild_dims(
    ws: *const CoringLabWorkspace,
    extension: *const c_char,
    max_degree: usize,
    dims: *mut usize,
    len: usize,
    written: *mut usize,
) -> CoringLabStatus {
    guarded(|| {
        if ws.is_null() || written.is_null() {
            return fail(CoringLabStatus::NullPointer, "workspace or written is null");
        }
        let id = match required(extension, "extension") {
            Ok(s) => s,
            Err(s) => return s,
        };
        let Some(ext) = (*ws).inner.extensions.get(&id) else {
            return fail(CoringLabStatus::InputError, format!("no extension named {id:?}"));
        };
        let space = match max_space() {
            Ok(m) => m,
            Err(s) => return s,
        };
        let coeff = Arc::new(regular_bimodule(ext.big().clone()));
        let r = relative_hochschild_complex_with(ext, coeff, max_degree + 1, &ComplexOptions { max_space: space })
            .and_then(|cx| cohomology_report(&cx));
        match r {
            Ok(mut rep) => {
                rep.dims.truncate(max_degree + 1);
                write_dims(&rep.dims, dims, len, written)
            }
            Err(e) => fail(CoringLabStatus::InputError, e.to_string()),
        }
    })
}
