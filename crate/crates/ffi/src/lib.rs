//! C interface to modcheck.
//!
//! Algebras are opaque handles created by `mc_algebra_from_json` or
//! `mc_algebra_from_corpus` and released with `mc_algebra_free`. Every other
//! function returns an `McStatus`; on failure `mc_last_error` describes the
//! error for the calling thread. Strings returned through out-parameters are
//! owned by the caller and released with `mc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use modcheck::algebra::FiniteAlgebra;
use modcheck::corpus;
use modcheck::free::FreeError;
use modcheck::identity::{
    check_identity, lookup, parse_identity, CatalogParams, CheckError, CheckOptions, EvalError,
};
use modcheck::maltsev::{find_day, find_directed_gumm, Search, SearchError};
use modcheck::relation::{enumerate, RelError, RelKind};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    CapExceeded = 4,
    NotFound = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McRelKind {
    ReflAdm = 0,
    Tolerance = 1,
    Congruence = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McFamily {
    DirectedGumm = 0,
    Day = 1,
}

/// Result of `mc_check_identity`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct McVerdict {
    pub holds: bool,
    /// Assignments examined, including the failing one.
    pub checked: u64,
}

/// Opaque algebra handle.
pub struct McAlgebra {
    inner: FiniteAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(McStatus, String);

impl From<RelError> for Fail {
    fn from(e: RelError) -> Self {
        let status = match e {
            RelError::CapExceeded { .. } => McStatus::CapExceeded,
            _ => McStatus::Parse,
        };
        Fail(status, e.to_string())
    }
}

impl From<FreeError> for Fail {
    fn from(e: FreeError) -> Self {
        let status = match e {
            FreeError::CapExceeded { .. } => McStatus::CapExceeded,
            _ => McStatus::Internal,
        };
        Fail(status, e.to_string())
    }
}

impl From<CheckError> for Fail {
    fn from(e: CheckError) -> Self {
        match e {
            CheckError::Rel(r) | CheckError::Eval(EvalError::Rel(r)) => r.into(),
            CheckError::TooManyAssignments => Fail(McStatus::CapExceeded, e.to_string()),
            other => Fail(McStatus::Internal, other.to_string()),
        }
    }
}

impl From<SearchError> for Fail {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Free(f) => f.into(),
            other => Fail(McStatus::Parse, other.to_string()),
        }
    }
}

/// Runs `f`, recording its error and converting panics to `Internal`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> McStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            McStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(McStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(McStatus::InvalidUtf8, "string argument is not UTF-8".into()))
}

unsafe fn algebra<'a>(p: *const McAlgebra) -> Result<&'a FiniteAlgebra, Fail> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| Fail(McStatus::NullPointer, "null algebra handle".into()))
}

fn out_ptr<T>(p: *mut T) -> Result<(), Fail> {
    if p.is_null() {
        Err(Fail(McStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

fn into_handle(alg: FiniteAlgebra) -> *mut McAlgebra {
    Box::into_raw(Box::new(McAlgebra { inner: alg }))
}

/// Loads an algebra from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_algebra_from_json(
    json: *const c_char,
    out: *mut *mut McAlgebra,
) -> McStatus {
    guard(|| {
        out_ptr(out)?;
        let text = read_str(json)?;
        let alg = FiniteAlgebra::from_json(text).map_err(|e| Fail(McStatus::Parse, e.to_string()))?;
        *out = into_handle(alg);
        Ok(())
    })
}

/// Loads a built-in algebra (`sl2`, `z2`, `l2`, `z2xz2`, `m3`, `sl3`, `trivial`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_algebra_from_corpus(
    name: *const c_char,
    out: *mut *mut McAlgebra,
) -> McStatus {
    guard(|| {
        out_ptr(out)?;
        let name = read_str(name)?;
        let alg = corpus::load(name)
            .ok_or_else(|| Fail(McStatus::NotFound, format!("no built-in algebra `{name}`")))?;
        *out = into_handle(alg);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mc_algebra_free(alg: *mut McAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_algebra_size(alg: *const McAlgebra, out: *mut usize) -> McStatus {
    guard(|| {
        out_ptr(out)?;
        *out = algebra(alg)?.size();
        Ok(())
    })
}

/// Checks an identity exhaustively. `identity` is either a catalog label
/// (instantiated with default parameters) or a statement in the textual
/// syntax. `jobs` of 0 means 1.
///
/// # Safety
/// `alg` must be a live handle, `identity` a NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_check_identity(
    alg: *const McAlgebra,
    identity: *const c_char,
    jobs: u32,
    out: *mut McVerdict,
) -> McStatus {
    guard(|| {
        out_ptr(out)?;
        let alg = algebra(alg)?;
        let text = read_str(identity)?;
        let stmt = if text.contains("|-") {
            parse_identity(text).map_err(|e| Fail(McStatus::Parse, e.to_string()))?
        } else {
            lookup(text, &CatalogParams::default())
                .map_err(|e| Fail(McStatus::Parse, e.to_string()))?
        };
        let opts = CheckOptions::exhaustive().with_jobs(jobs as usize);
        let v = check_identity(alg, &stmt, &opts)?;
        *out = McVerdict {
            holds: v.holds,
            checked: v.checked,
        };
        Ok(())
    })
}

/// Number of relations of the given kind.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_enumerate_count(
    alg: *const McAlgebra,
    kind: McRelKind,
    cap: usize,
    out: *mut usize,
) -> McStatus {
    guard(|| {
        out_ptr(out)?;
        let kind = match kind {
            McRelKind::ReflAdm => RelKind::ReflAdm,
            McRelKind::Tolerance => RelKind::Tolerance,
            McRelKind::Congruence => RelKind::Congruence,
        };
        *out = enumerate(algebra(alg)?, kind, cap)?.len();
        Ok(())
    })
}

/// Searches for a term system with at most `max_k` terms. On success `*k`
/// is the number found and `*terms` receives one `name = term` line per
/// term. Returns `NotFound` when no system exists within `max_k`.
///
/// # Safety
/// `alg` must be a live handle; `k` and `terms` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mc_find_terms(
    alg: *const McAlgebra,
    family: McFamily,
    max_k: usize,
    cap: usize,
    k: *mut usize,
    terms: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        out_ptr(k)?;
        out_ptr(terms)?;
        let alg = algebra(alg)?;
        let found = match family {
            McFamily::DirectedGumm => match find_directed_gumm(alg, max_k, cap)? {
                Search::Found(sys) => {
                    let mut lines = vec![format!("p = {}", sys.p)];
                    lines.extend(sys.j.iter().enumerate().map(|(i, t)| format!("j{} = {t}", i + 1)));
                    Some((sys.k, lines))
                }
                Search::NotFound { .. } => None,
            },
            McFamily::Day => match find_day(alg, max_k, cap)? {
                Search::Found(sys) => {
                    let lines = sys.d.iter().enumerate().map(|(i, t)| format!("d{i} = {t}")).collect();
                    Some((sys.k, lines))
                }
                Search::NotFound { .. } => None,
            },
        };
        let (found_k, lines) = found
            .ok_or_else(|| Fail(McStatus::NotFound, format!("no terms with k <= {max_k}")))?;
        let text = CString::new(lines.join("\n"))
            .map_err(|_| Fail(McStatus::Internal, "term text contains NUL".into()))?;
        *k = found_k;
        *terms = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
