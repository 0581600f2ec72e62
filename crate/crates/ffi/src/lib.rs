//! C ABI for `decalg`.
//!
//! Objects cross the boundary as opaque handles created from JSON documents
//! and released with the matching `_free` function. Reports come back as
//! NUL-terminated JSON strings owned by the caller, released with
//! [`decalg_string_free`]. Every entry point returns a [`DecalgStatus`]; on
//! failure [`decalg_last_error`] describes what went wrong.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use decalg::cli::{execute_args, reproduce, CliError, Outcome};
use decalg::decomp::{DecompositionAlgebra, DecompositionAlgebraDoc};
use decalg::exactlin::{Rational, C64};
use decalg::fpgroup::abelianized_grading;
use decalg::fusion::{FusionLaw, FusionLawDoc};

/// Result codes shared by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecalgStatus {
    Ok = 0,
    /// The computation finished and the object failed its checks.
    Invalid = 1,
    /// Malformed input: bad JSON, bad arguments, unreadable files.
    BadInput = 2,
    /// A search limit was reached before an answer was found.
    Exhausted = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// The computation failed for a mathematical reason.
    Failed = 6,
    Panic = 7,
}

impl DecalgStatus {
    fn from_exit_code(code: i32) -> Self {
        match code {
            0 => DecalgStatus::Ok,
            1 => DecalgStatus::Invalid,
            2 => DecalgStatus::BadInput,
            3 => DecalgStatus::Exhausted,
            _ => DecalgStatus::Failed,
        }
    }
}

/// A fusion law.
pub struct DecalgFusionLaw {
    law: FusionLaw,
}

enum Scalars {
    Exact(DecompositionAlgebra<Rational>),
    Complex(DecompositionAlgebra<C64>),
}

/// A decomposition algebra over the rationals or the complex floats.
pub struct DecalgDecompositionAlgebra {
    inner: Scalars,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(DecalgStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure(DecalgStatus::from_exit_code(e.code()), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<DecalgStatus, Failure>) -> DecalgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DecalgStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(DecalgStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure(DecalgStatus::InvalidUtf8, e.to_string()))
}

unsafe fn write_out<T>(out: *mut *mut T, value: *mut T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(DecalgStatus::NullPointer, "null output pointer".into()));
    }
    *out = value;
    Ok(())
}

unsafe fn write_json(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(DecalgStatus::NullPointer, "null output pointer".into()));
    }
    let text = serde_json::to_string(value).expect("serializable");
    *out = CString::new(text).expect("JSON has no NUL bytes").into_raw();
    Ok(())
}

fn bad_input(e: impl ToString) -> Failure {
    Failure(DecalgStatus::BadInput, e.to_string())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure(DecalgStatus::NullPointer, "null handle".into()))
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn decalg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// The message for the last failure on this thread, or null. Valid until
/// the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn decalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn decalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a fusion law from its JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_fusion_law_from_json(json: *const c_char, out: *mut *mut DecalgFusionLaw) -> DecalgStatus {
    guard(|| {
        let doc: FusionLawDoc = serde_json::from_str(read_str(json)?).map_err(bad_input)?;
        let law = FusionLaw::try_from(doc).map_err(bad_input)?;
        write_out(out, Box::into_raw(Box::new(DecalgFusionLaw { law })))?;
        Ok(DecalgStatus::Ok)
    })
}

/// # Safety
/// `law` must come from [`decalg_fusion_law_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn decalg_fusion_law_free(law: *mut DecalgFusionLaw) {
    if !law.is_null() {
        drop(Box::from_raw(law));
    }
}

/// Number of elements of the law, or 0 for a null handle.
///
/// # Safety
/// `law` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn decalg_fusion_law_len(law: *const DecalgFusionLaw) -> usize {
    law.as_ref().map_or(0, |l| l.law.len())
}

/// Writes the finest abelian grading of `law` as JSON to `out`.
///
/// # Safety
/// `law` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_fusion_law_grade(law: *const DecalgFusionLaw, out: *mut *mut c_char) -> DecalgStatus {
    guard(|| {
        let law = deref(law)?;
        let grading = abelianized_grading(&law.law).map_err(|e| Failure(DecalgStatus::Failed, e.to_string()))?;
        write_json(out, &serde_json::to_value(grading.report()).expect("serializable"))?;
        Ok(DecalgStatus::Ok)
    })
}

/// Parses a decomposition algebra, exact when every scalar is rational.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_algebra_from_json(
    json: *const c_char,
    out: *mut *mut DecalgDecompositionAlgebra,
) -> DecalgStatus {
    guard(|| {
        let doc: DecompositionAlgebraDoc = serde_json::from_str(read_str(json)?).map_err(bad_input)?;
        let inner = match DecompositionAlgebra::<Rational>::from_doc(&doc) {
            Ok(d) => Scalars::Exact(d),
            Err(exact) => match DecompositionAlgebra::<C64>::from_doc(&doc) {
                Ok(d) => Scalars::Complex(d),
                Err(_) => return Err(bad_input(exact)),
            },
        };
        write_out(out, Box::into_raw(Box::new(DecalgDecompositionAlgebra { inner })))?;
        Ok(DecalgStatus::Ok)
    })
}

/// # Safety
/// `algebra` must come from [`decalg_algebra_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn decalg_algebra_free(algebra: *mut DecalgDecompositionAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Dimension of the algebra, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn decalg_algebra_dim(algebra: *const DecalgDecompositionAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| match &a.inner {
        Scalars::Exact(d) => d.dim(),
        Scalars::Complex(d) => d.dim(),
    })
}

/// 1 when the algebra has exact rational scalars, 0 otherwise.
///
/// # Safety
/// `algebra` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn decalg_algebra_is_exact(algebra: *const DecalgDecompositionAlgebra) -> c_int {
    algebra.as_ref().map_or(0, |a| matches!(a.inner, Scalars::Exact(_)) as c_int)
}

/// Verifies the algebra and writes the report to `out`. Returns `Ok` when it
/// is valid and `Invalid` otherwise; the report is written in both cases.
///
/// # Safety
/// `algebra` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_algebra_verify(
    algebra: *const DecalgDecompositionAlgebra,
    out: *mut *mut c_char,
) -> DecalgStatus {
    guard(|| {
        let report = match &deref(algebra)?.inner {
            Scalars::Exact(d) => d.verify(),
            Scalars::Complex(d) => d.verify(),
        };
        write_json(out, &serde_json::to_value(&report).expect("serializable"))?;
        Ok(if report.valid { DecalgStatus::Ok } else { DecalgStatus::Invalid })
    })
}

fn finish(outcome: Result<Outcome, CliError>, out: *mut *mut c_char) -> Result<DecalgStatus, Failure> {
    let outcome = outcome?;
    unsafe { write_json(out, &outcome.report)? };
    Ok(DecalgStatus::from_exit_code(outcome.status.code()))
}

/// Runs a named example and writes its report to `out`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_reproduce(id: *const c_char, out: *mut *mut c_char) -> DecalgStatus {
    guard(|| {
        let id = read_str(id)?;
        finish(reproduce(id), out)
    })
}

/// Runs a command-line invocation (without the program name) and writes its
/// JSON report to `out`. The status mirrors the command's exit code.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings and `out` must be a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn decalg_run(argc: c_int, argv: *const *const c_char, out: *mut *mut c_char) -> DecalgStatus {
    guard(|| {
        let argc = usize::try_from(argc).map_err(|_| bad_input("negative argument count"))?;
        if argc > 0 && argv.is_null() {
            return Err(Failure(DecalgStatus::NullPointer, "null argument vector".into()));
        }
        let mut args = vec!["decalg".to_string()];
        for k in 0..argc {
            args.push(read_str(*argv.add(k))?.to_string());
        }
        finish(execute_args(args), out)
    })
}
