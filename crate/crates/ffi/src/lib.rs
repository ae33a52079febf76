//! C ABI over `popfactor`.
//!
//! Instances, matchings and reports are opaque heap handles created by a
//! `pf_*_parse` or `pf_*` query function and released with the matching
//! `pf_*_free`. Every fallible function returns a `PfStatus`; on failure
//! `pf_last_error` describes the problem for the calling thread. Strings
//! returned to the caller are freed with `pf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use popfactor::io::{parse_instance, parse_matching};
use popfactor::{is_popular, unpopularity_factor, unpopularity_margin, Error, FactorReport, FastPath, Instance, Matching};

/// Status codes. The first four mirror the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfStatus {
    Ok = 0,
    /// Malformed input or unsupported request.
    Input = 1,
    /// Matching breaks a rule of the instance.
    Validation = 2,
    /// An internal cross-check failed.
    Internal = 3,
    /// Null pointer, non-UTF-8 text, or a handle pair that does not belong
    /// together.
    InvalidArgument = 4,
    /// The library panicked; no output was written.
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PfFastPath {
    Auto = 0,
    On = 1,
    Off = 2,
    Verify = 3,
}

// Modes arrive as plain integers so an out-of-range value from C is an
// error rather than undefined behaviour.
fn mode(m: i32) -> Result<FastPath, PfStatus> {
    match m {
        m if m == PfFastPath::Auto as i32 => Ok(FastPath::Auto),
        m if m == PfFastPath::On as i32 => Ok(FastPath::On),
        m if m == PfFastPath::Off as i32 => Ok(FastPath::Off),
        m if m == PfFastPath::Verify as i32 => Ok(FastPath::Verify),
        _ => Err(invalid("unknown fast path mode")),
    }
}

pub struct PfInstance(Instance);

pub struct PfMatching(Matching);

pub struct PfReport {
    report: FactorReport,
    json: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> PfStatus {
    match e.exit_code() {
        2 => PfStatus::Validation,
        3 => PfStatus::Internal,
        _ => PfStatus::Input,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), PfStatus>) -> PfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            PfStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            PfStatus::Panic
        }
    }
}

fn fail(e: Error) -> PfStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn invalid(msg: &str) -> PfStatus {
    set_error(msg);
    PfStatus::InvalidArgument
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, PfStatus> {
    if p.is_null() {
        return Err(invalid("null string"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid("string is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, PfStatus> {
    p.as_ref().ok_or_else(|| invalid(&format!("null {what}")))
}

unsafe fn output<'a, T>(p: *mut T) -> Result<&'a mut T, PfStatus> {
    p.as_mut().ok_or_else(|| invalid("null output pointer"))
}

fn pair<'a>(inst: &'a PfInstance, m: &'a PfMatching) -> Result<(&'a Instance, &'a Matching), PfStatus> {
    if m.0.n() != inst.0.n() {
        return Err(invalid("matching belongs to a different instance"));
    }
    Ok((&inst.0, &m.0))
}

/// Parses an instance document into `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_parse(text: *const c_char, out: *mut *mut PfInstance) -> PfStatus {
    guard(|| {
        let out = output(out)?;
        *out = ptr::null_mut();
        let inst = parse_instance(self::text(text)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(PfInstance(inst)));
        Ok(())
    })
}

/// # Safety
/// `inst` must come from `pf_instance_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_free(inst: *mut PfInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of people, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn pf_instance_size(inst: *const PfInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.0.n())
}

/// Parses a matching of `inst` into `*out`.
///
/// # Safety
/// `inst` must be a live instance handle, `text` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pf_matching_parse(
    inst: *const PfInstance,
    text: *const c_char,
    out: *mut *mut PfMatching,
) -> PfStatus {
    guard(|| {
        let out = output(out)?;
        *out = ptr::null_mut();
        let inst = handle(inst, "instance")?;
        let m = parse_matching(self::text(text)?, &inst.0).map_err(fail)?;
        *out = Box::into_raw(Box::new(PfMatching(m)));
        Ok(())
    })
}

/// # Safety
/// `m` must come from `pf_matching_parse` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pf_matching_free(m: *mut PfMatching) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Computes the unpopularity factor report into `*out`. `mode` is a
/// `PfFastPath` value.
///
/// # Safety
/// `inst` and `m` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_unpopularity_factor(
    inst: *const PfInstance,
    m: *const PfMatching,
    mode: i32,
    out: *mut *mut PfReport,
) -> PfStatus {
    guard(|| {
        let out = output(out)?;
        *out = ptr::null_mut();
        let (inst, m) = pair(handle(inst, "instance")?, handle(m, "matching")?)?;
        let report = unpopularity_factor(inst, m, self::mode(mode)?).map_err(fail)?;
        let json = CString::new(report.to_json(inst).to_string()).map_err(|_| invalid("report contains NUL"))?;
        *out = Box::into_raw(Box::new(PfReport { report, json }));
        Ok(())
    })
}

/// # Safety
/// `r` must come from `pf_unpopularity_factor` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn pf_report_free(r: *mut PfReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Writes the factor: `*infinite` is set, and when it is false the factor
/// is `*num / *den` in lowest terms.
///
/// # Safety
/// `r` must be a live report; the output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_report_factor(
    r: *const PfReport,
    num: *mut i64,
    den: *mut i64,
    infinite: *mut bool,
) -> PfStatus {
    guard(|| {
        let r = handle(r, "report")?;
        let (num, den, infinite) = (output(num)?, output(den)?, output(infinite)?);
        match r.report.factor.finite() {
            Some(f) => {
                (*num, *den, *infinite) = (*f.numer(), *f.denom(), false);
            }
            None => {
                (*num, *den, *infinite) = (1, 0, true);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pf_report_margin(r: *const PfReport) -> u64 {
    r.as_ref().map_or(0, |r| r.report.margin)
}

/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pf_report_popular(r: *const PfReport) -> bool {
    r.as_ref().is_some_and(|r| r.report.popular)
}

/// Predicate evaluations used by the factor search.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pf_report_queries(r: *const PfReport) -> u32 {
    r.as_ref().map_or(0, |r| r.report.queries)
}

/// The report as a JSON document; free it with `pf_string_free`. Null for a
/// null handle.
///
/// # Safety
/// `r` must be null or a live report.
#[no_mangle]
pub unsafe extern "C" fn pf_report_json(r: *const PfReport) -> *mut c_char {
    r.as_ref().map_or(ptr::null_mut(), |r| r.json.clone().into_raw())
}

/// # Safety
/// `inst` and `m` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_unpopularity_margin(inst: *const PfInstance, m: *const PfMatching, out: *mut u64) -> PfStatus {
    guard(|| {
        let out = output(out)?;
        let (inst, m) = pair(handle(inst, "instance")?, handle(m, "matching")?)?;
        *out = unpopularity_margin(inst, m).map_err(fail)?.margin;
        Ok(())
    })
}

/// # Safety
/// `inst` and `m` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pf_is_popular(
    inst: *const PfInstance,
    m: *const PfMatching,
    mode: i32,
    out: *mut bool,
) -> PfStatus {
    guard(|| {
        let out = output(out)?;
        let (inst, m) = pair(handle(inst, "instance")?, handle(m, "matching")?)?;
        *out = is_popular(inst, m, self::mode(mode)?).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn pf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn pf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
