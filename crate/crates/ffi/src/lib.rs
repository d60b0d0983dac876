//! C ABI over `leaky-hurwitz`.
//!
//! Queries and values are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`LhStatus`]; on failure the
//! message is available from [`lh_last_error`] on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! released with [`lh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use leaky_hurwitz::cli::{compute, run_verify, Failure, Method, VerifyRequest};
use leaky_hurwitz::exactmath::{format_rational, BigRational, Partition};
use leaky_hurwitz::formulas::{one_part_closed, two_part_closed, OrbifoldParams};
use leaky_hurwitz::{HurwitzQuery, Insertion, InsertionList};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LhStatus {
    Ok = 0,
    VerificationFailed = 1,
    InvalidInput = 2,
    Mismatch = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LhMethod {
    Fock = 0,
    Tropical = 1,
    Auto = 2,
}

/// A Hurwitz query under construction.
pub struct LhQuery {
    inner: HurwitzQuery,
}

/// An exact rational value.
pub struct LhValue {
    inner: BigRational,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("no interior nul"));
}

fn guard(f: impl FnOnce() -> Result<LhStatus, (LhStatus, String)>) -> LhStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LhStatus::Panic
        }
    }
}

fn invalid(e: impl ToString) -> (LhStatus, String) {
    (LhStatus::InvalidInput, e.to_string())
}

fn from_failure(f: Failure) -> (LhStatus, String) {
    match f {
        Failure::Usage(m) => (LhStatus::InvalidInput, m),
        Failure::Mismatch(m) => (LhStatus::Mismatch, m),
    }
}

fn null() -> (LhStatus, String) {
    (LhStatus::NullPointer, "null pointer argument".into())
}

unsafe fn parts<'a>(p: *const u32, len: usize) -> Result<&'a [u32], (LhStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null());
    }
    Ok(slice::from_raw_parts(p, len))
}

unsafe fn put_value(out: *mut *mut LhValue, v: BigRational) {
    *out = Box::into_raw(Box::new(LhValue { inner: v }));
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn lh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn lh_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a query with profiles `mu`, `nu` and no insertions.
///
/// # Safety
/// `mu` and `nu` point to `mu_len` and `nu_len` readable values (or are
/// null with length 0); `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lh_query_new(
    mu: *const u32,
    mu_len: usize,
    nu: *const u32,
    nu_len: usize,
    connected: bool,
    out: *mut *mut LhQuery,
) -> LhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let mu = Partition::new(parts(mu, mu_len)?.to_vec()).map_err(invalid)?;
        let nu = Partition::new(parts(nu, nu_len)?.to_vec()).map_err(invalid)?;
        let q = HurwitzQuery::new(mu, nu, InsertionList::default(), connected);
        *out = Box::into_raw(Box::new(LhQuery { inner: q }));
        Ok(LhStatus::Ok)
    })
}

/// Appends insertion `(k, r)` on the right.
///
/// # Safety
/// `query` is a live handle from [`lh_query_new`].
#[no_mangle]
pub unsafe extern "C" fn lh_query_push_insertion(query: *mut LhQuery, k: i64, r: u32) -> LhStatus {
    guard(|| {
        let q = query.as_mut().ok_or_else(null)?;
        if r == 0 {
            return Err(invalid("insertion order r must be positive"));
        }
        q.inner.insertions.0.push(Insertion { k, r });
        Ok(LhStatus::Ok)
    })
}

/// # Safety
/// `query` is null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn lh_query_free(query: *mut LhQuery) {
    if !query.is_null() {
        drop(Box::from_raw(query));
    }
}

/// Evaluates `query`. `LH_METHOD_AUTO` runs both engines and returns
/// `Mismatch` if they differ.
///
/// # Safety
/// `query` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lh_compute(query: *const LhQuery, method: LhMethod, out: *mut *mut LhValue) -> LhStatus {
    guard(|| {
        let q = query.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let m = match method {
            LhMethod::Fock => Method::Fock,
            LhMethod::Tropical => Method::Tropical,
            LhMethod::Auto => Method::Auto,
        };
        let v = compute(&q.inner, m).map_err(from_failure)?;
        put_value(out, v);
        Ok(LhStatus::Ok)
    })
}

/// Closed-form one-part value `lh` for `(k, r, q)` and `μ = (m)`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lh_one_part(k: u32, r: u32, q: u32, m: u64, out: *mut *mut LhValue) -> LhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = OrbifoldParams::new(k, r, q).map_err(invalid)?;
        put_value(out, one_part_closed(&p, m));
        Ok(LhStatus::Ok)
    })
}

/// Closed-form two-part value `lh` for `(k, r, q)` and `μ = (l, m)`.
///
/// # Safety
/// `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lh_two_part(k: u32, r: u32, q: u32, l: u64, m: u64, out: *mut *mut LhValue) -> LhStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = OrbifoldParams::new(k, r, q).map_err(invalid)?;
        put_value(out, two_part_closed(&p, l, m));
        Ok(LhStatus::Ok)
    })
}

/// `"p/q"` text of `value`.
///
/// # Safety
/// `value` is a live handle; `out` is writable. Free the string with
/// [`lh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lh_value_to_string(value: *const LhValue, out: *mut *mut c_char) -> LhStatus {
    guard(|| {
        let v = value.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        *out = CString::new(format_rational(&v.inner)).expect("ascii").into_raw();
        Ok(LhStatus::Ok)
    })
}

/// # Safety
/// `value` is null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn lh_value_free(value: *mut LhValue) {
    if !value.is_null() {
        drop(Box::from_raw(value));
    }
}

/// Runs a verification request given as JSON, e.g.
/// `{"suite":"bergman","k":1,"r":2,"q":1,"order":12}`, and writes the
/// report JSON to `out`. Returns `VerificationFailed` when the report
/// fails; the report is written either way.
///
/// # Safety
/// `request` is a nul-terminated UTF-8 string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn lh_verify_json(request: *const c_char, out: *mut *mut c_char) -> LhStatus {
    guard(|| {
        if request.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(request).to_str().map_err(invalid)?;
        let req: VerifyRequest = serde_json::from_str(text).map_err(invalid)?;
        let report = run_verify(&req, 1).map_err(invalid)?;
        let json = serde_json::to_string(&report).map_err(invalid)?;
        *out = CString::new(json).expect("no interior nul").into_raw();
        Ok(if report.passed() {
            LhStatus::Ok
        } else {
            LhStatus::VerificationFailed
        })
    })
}

/// # Safety
/// `s` is null or a string returned by this library; it is invalid
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn lh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
