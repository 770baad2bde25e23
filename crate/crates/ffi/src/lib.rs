//! C ABI over `nwe-core`.
//!
//! State sets cross the boundary as opaque `NweStateSet` handles. Every
//! function returns an `NweStatus`; on failure, `nwe_last_error_message`
//! describes the most recent error on the calling thread. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with `nwe_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nwe_core::constructions::{expected_size, gen_equal, gen_general, ConstructionKind};
use nwe_core::document::{build_report, EngineSelector, StateSetDocument};
use nwe_core::lemma::derive_certificate;
use nwe_core::tensor::{check_pairwise_orthogonality, DEFAULT_DIM_CAP};
use nwe_core::verifier::{verdict, verify_all};
use nwe_core::{Error, StateSet};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NweStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    NotOrthogonal = 3,
    ParseError = 4,
    InvalidUtf8 = 5,
    IndexOutOfRange = 6,
    Panic = 7,
}

/// Opaque handle to an immutable state set.
pub struct NweStateSet {
    inner: StateSet,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(NweStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::NotOrthogonal(_) => NweStatus::NotOrthogonal,
            Error::Document(_) => NweStatus::ParseError,
            Error::IndexOutOfRange(_) => NweStatus::IndexOutOfRange,
            Error::Dimension(_)
            | Error::InvalidShape(_)
            | Error::ConstructionDomain(_)
            | Error::RuleInapplicable(_) => NweStatus::InvalidParameter,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NweStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> NweStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => NweStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            NweStatus::Panic
        }
    }
}

unsafe fn set_ref<'a>(set: *const NweStateSet) -> Result<&'a StateSet, Failure> {
    set.as_ref().map(|s| &s.inner).ok_or_else(|| null("set"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn dims_slice<'a>(dims: *const usize, len: usize) -> Result<&'a [usize], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if dims.is_null() {
        return Err(null("dims"));
    }
    Ok(std::slice::from_raw_parts(dims, len))
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    let c = CString::new(text)
        .map_err(|_| Failure(NweStatus::InvalidUtf8, "interior NUL byte".into()))?;
    write(out, c.into_raw())
}

unsafe fn write_set(out: *mut *mut NweStateSet, set: StateSet) -> Result<(), Failure> {
    write(out, Box::into_raw(Box::new(NweStateSet { inner: set })))
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nwe_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds the equal-dimension family for `parties` parties of dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn nwe_generate_equal(
    parties: usize,
    dim: usize,
    out: *mut *mut NweStateSet,
) -> NweStatus {
    guard(|| write_set(out, gen_equal(parties, dim)?))
}

/// Builds the general family for a nondecreasing dimension vector.
///
/// # Safety
/// `dims` must point to `len` readable values; `out` as in `nwe_generate_equal`.
#[no_mangle]
pub unsafe extern "C" fn nwe_generate_general(
    dims: *const usize,
    len: usize,
    out: *mut *mut NweStateSet,
) -> NweStatus {
    guard(|| write_set(out, gen_general(dims_slice(dims, len)?)?))
}

/// Parses an `nwe/1` JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` as in `nwe_generate_equal`.
#[no_mangle]
pub unsafe extern "C" fn nwe_state_set_from_json(
    json: *const c_char,
    out: *mut *mut NweStateSet,
) -> NweStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(NweStatus::InvalidUtf8, e.to_string()))?;
        let set = StateSetDocument::parse(text)?.to_set(DEFAULT_DIM_CAP)?;
        write_set(out, set)
    })
}

/// Serializes a set as canonical `nwe/1` JSON.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_state_set_to_json(
    set: *const NweStateSet,
    out: *mut *mut c_char,
) -> NweStatus {
    guard(|| write_string(out, StateSetDocument::from_set(set_ref(set)?).to_json()))
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `set` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nwe_state_set_free(set: *mut NweStateSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must be NULL or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nwe_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Number of states in the set.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_state_set_len(set: *const NweStateSet, out: *mut usize) -> NweStatus {
    guard(|| write(out, set_ref(set)?.len()))
}

/// Number of parties of the set's system.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_state_set_parties(
    set: *const NweStateSet,
    out: *mut usize,
) -> NweStatus {
    guard(|| write(out, set_ref(set)?.shape().parties()))
}

/// Counts pairs of states that are not orthogonal.
///
/// # Safety
/// `set` must be a live handle; `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_check_orthogonality(
    set: *const NweStateSet,
    violations: *mut usize,
) -> NweStatus {
    guard(|| {
        write(
            violations,
            check_pairwise_orthogonality(set_ref(set)?).len(),
        )
    })
}

/// Decides whether party `party` admits only trivial orthogonality-preserving
/// measurements, and reports the solution-space dimension.
///
/// # Safety
/// `set` must be a live handle; `trivial` and `nullspace_dim` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_verify_party(
    set: *const NweStateSet,
    party: usize,
    trivial: *mut bool,
    nullspace_dim: *mut usize,
) -> NweStatus {
    guard(|| {
        if trivial.is_null() || nullspace_dim.is_null() {
            return Err(null("output pointer"));
        }
        let v = verdict(set_ref(set)?, party)?;
        write(trivial, v.is_trivial())?;
        write(nullspace_dim, v.nullspace_dim)
    })
}

/// Sets `certified` when every party is trivial.
///
/// # Safety
/// `set` must be a live handle; `certified` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_verify_all(
    set: *const NweStateSet,
    certified: *mut bool,
) -> NweStatus {
    guard(|| {
        let verdicts = verify_all(set_ref(set)?)?;
        write(certified, verdicts.iter().all(|v| v.is_trivial()))
    })
}

/// Full JSON report from both engines.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_report_json(
    set: *const NweStateSet,
    out: *mut *mut c_char,
) -> NweStatus {
    guard(|| {
        write_string(
            out,
            build_report(set_ref(set)?, EngineSelector::Both)?.to_json(),
        )
    })
}

/// Lemma-engine certificate as text, one fact per line.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_certificate_text(
    set: *const NweStateSet,
    out: *mut *mut c_char,
) -> NweStatus {
    guard(|| {
        let set = set_ref(set)?;
        write_string(out, derive_certificate(set)?.render(set))
    })
}

/// Size of the general family for `dims` without building it.
///
/// # Safety
/// `dims` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nwe_expected_size(
    dims: *const usize,
    len: usize,
    out: *mut usize,
) -> NweStatus {
    guard(|| {
        let kind = ConstructionKind::GeneralDims {
            dims: dims_slice(dims, len)?.to_vec(),
        };
        write(out, expected_size(&kind)?)
    })
}
