//! C interface to the `provability` crate.
//!
//! Formulas and decision results cross the boundary as opaque handles that
//! the caller releases with the matching `*_free` function. Every fallible
//! call returns a [`ProvStatus`]; on failure, [`prov_last_error`] describes
//! what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use provability::engine::{DecisionResult, EngineError, Verdict};
use provability::formula::{parse, Formula};
use provability::registry::{decide, decide_pl, LogicId, ProvLogicId, RegistryError};
use provability::translate::{TranslateError, TranslationKind};

/// Opaque formula handle.
pub struct ProvFormula(Formula);

/// Opaque decision result handle.
pub struct ProvResult(DecisionResult);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    ResourceLimit = 5,
    NoCountermodel = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProvVerdict {
    Provable = 0,
    Refuted = 1,
    Inconclusive = 2,
}

impl From<Verdict> for ProvVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::Provable => ProvVerdict::Provable,
            Verdict::Refuted => ProvVerdict::Refuted,
            Verdict::Inconclusive => ProvVerdict::Inconclusive,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: ProvStatus,
    message: String,
}

impl Failure {
    fn new(status: ProvStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }
}

impl From<RegistryError> for Failure {
    fn from(e: RegistryError) -> Self {
        let status = match &e {
            RegistryError::UnknownLogic(_)
            | RegistryError::BadTriple(_)
            | RegistryError::UnsupportedTriple(_)
            | RegistryError::NoPath(_) => ProvStatus::Unsupported,
            RegistryError::Engine(EngineError::Resource { .. })
            | RegistryError::Translate(_)
            | RegistryError::LiteralLimit(_) => ProvStatus::ResourceLimit,
            _ => ProvStatus::Internal,
        };
        Failure::new(status, e.to_string())
    }
}

impl From<TranslateError> for Failure {
    fn from(e: TranslateError) -> Self {
        Failure::new(ProvStatus::ResourceLimit, e.to_string())
    }
}

fn set_error(message: &str) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

/// Runs `body`, records any failure or panic, and returns the status.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ProvStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ProvStatus::Ok,
        Ok(Err(failure)) => {
            set_error(&failure.message);
            failure.status
        }
        Err(_) => {
            set_error("internal panic");
            ProvStatus::Internal
        }
    }
}

unsafe fn text<'a>(ptr: *const c_char) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::new(ProvStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(ptr).to_str().map_err(|e| Failure::new(ProvStatus::InvalidUtf8, e.to_string()))
}

unsafe fn formula_ref<'a>(ptr: *const ProvFormula) -> Result<&'a Formula, Failure> {
    ptr.as_ref().map(|f| &f.0).ok_or_else(|| Failure::new(ProvStatus::NullPointer, "null formula handle"))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(ProvStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

fn owned_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s).map(CString::into_raw).map_err(|e| Failure::new(ProvStatus::Internal, e.to_string()))
}

/// The message of the last failed call on this thread, or null. The
/// pointer stays valid until the next call into this library on the same
/// thread.
#[no_mangle]
pub extern "C" fn prov_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Parses a NUL-terminated UTF-8 formula into `*out`.
///
/// # Safety
/// `source` must be null or a valid C string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn prov_formula_parse(source: *const c_char, out: *mut *mut ProvFormula) -> ProvStatus {
    guard(|| {
        let parsed = parse(text(source)?).map_err(|e| Failure::new(ProvStatus::Parse, e.to_string()))?;
        store(out, ProvFormula(parsed))
    })
}

/// # Safety
/// `formula` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prov_formula_free(formula: *mut ProvFormula) {
    if !formula.is_null() {
        drop(Box::from_raw(formula));
    }
}

/// Prints a formula in the ASCII syntax `prov_formula_parse` accepts.
/// Release the string with `prov_string_free`.
///
/// # Safety
/// `formula` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn prov_formula_to_string(formula: *const ProvFormula, out: *mut *mut c_char) -> ProvStatus {
    guard(|| {
        let printed = owned_string(formula_ref(formula)?.to_string())?;
        write_out(out, printed)
    })
}

unsafe fn write_out(out: *mut *mut c_char, value: *mut c_char) -> Result<(), Failure> {
    if out.is_null() {
        drop(CString::from_raw(value));
        return Err(Failure::new(ProvStatus::NullPointer, "null output pointer"));
    }
    *out = value;
    Ok(())
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prov_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Applies the translation named `kind` (for example `"box-full"`).
///
/// # Safety
/// Pointer arguments must be null or valid as for `prov_formula_parse`.
#[no_mangle]
pub unsafe extern "C" fn prov_translate(
    kind: *const c_char,
    formula: *const ProvFormula,
    out: *mut *mut ProvFormula,
) -> ProvStatus {
    guard(|| {
        let kind: TranslationKind = text(kind)?.parse().map_err(|e: provability::translate::UnknownTranslation| {
            Failure::new(ProvStatus::Unsupported, e.to_string())
        })?;
        let image = kind.apply(formula_ref(formula)?)?;
        store(out, ProvFormula(image))
    })
}

/// Decides a formula in the logic named `logic` (for example `"iGL"`).
///
/// # Safety
/// Pointer arguments must be null or valid as for `prov_formula_parse`.
#[no_mangle]
pub unsafe extern "C" fn prov_decide(
    logic: *const c_char,
    formula: *const ProvFormula,
    out: *mut *mut ProvResult,
) -> ProvStatus {
    guard(|| {
        let logic: LogicId = text(logic)?.parse()?;
        store(out, ProvResult(decide(logic, formula_ref(formula)?)?))
    })
}

/// Decides a formula in a relative provability logic such as
/// `"PL(PA,PA)"` or `"Sigma1(HA,N)"`.
///
/// # Safety
/// Pointer arguments must be null or valid as for `prov_formula_parse`.
#[no_mangle]
pub unsafe extern "C" fn prov_decide_pl(
    logic: *const c_char,
    formula: *const ProvFormula,
    out: *mut *mut ProvResult,
) -> ProvStatus {
    guard(|| {
        let logic: ProvLogicId = text(logic)?.parse()?;
        store(out, ProvResult(decide_pl(logic, formula_ref(formula)?)?))
    })
}

/// The verdict of a result; `Inconclusive` for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn prov_result_verdict(result: *const ProvResult) -> ProvVerdict {
    result.as_ref().map_or(ProvVerdict::Inconclusive, |r| r.0.verdict.into())
}

/// The countermodel of a refuted result as JSON. Release the string with
/// `prov_string_free`.
///
/// # Safety
/// `result` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn prov_result_countermodel_json(result: *const ProvResult, out: *mut *mut c_char) -> ProvStatus {
    guard(|| {
        let result = result.as_ref().ok_or_else(|| Failure::new(ProvStatus::NullPointer, "null result handle"))?;
        let cm = result.0.countermodel().ok_or_else(|| {
            Failure::new(ProvStatus::NoCountermodel, format!("{}: no countermodel", result.0.verdict))
        })?;
        write_out(out, owned_string(cm.to_json())?)
    })
}

/// # Safety
/// `result` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn prov_result_free(result: *mut ProvResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
