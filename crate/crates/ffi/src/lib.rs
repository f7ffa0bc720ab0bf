//! C ABI for the `affsemi` library.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_parse`
//! and released with the matching `*_free`. Every fallible function returns an
//! [`AffsemiStatus`]; on failure a message is available from
//! [`affsemi_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and must be
//! released with [`affsemi_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use affsemi::doc::{context_json, parse_context, parse_semigroup, semigroup_json};
use affsemi::fibsum::FiberedSumContext;
use affsemi::gluing::{can_glue_with, GluingQuery, GluingVerdict};
use affsemi::semigroup::{AffineSemigroup, MembershipDecision};
use affsemi::Error;

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffsemiStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Precondition = 4,
    BoundExhausted = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffsemiMembership {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AffsemiGluing {
    Yes = 0,
    No = 1,
    ImpossibleAllScales = 2,
    NotFoundUpTo = 3,
}

/// Opaque handle to an affine semigroup.
pub struct AffsemiSemigroup(AffineSemigroup);

/// Opaque handle to a fibered-sum context.
pub struct AffsemiContext(FiberedSumContext);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> AffsemiStatus {
    match e {
        Error::Parse(_) => AffsemiStatus::Parse,
        Error::Undecided(_) | Error::NotStabilized(_) => AffsemiStatus::BoundExhausted,
        _ => AffsemiStatus::Precondition,
    }
}

enum Failure {
    Status(AffsemiStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> AffsemiStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AffsemiStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            AffsemiStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(AffsemiStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Status(AffsemiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failure on this thread, or an empty string.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn affsemi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn affsemi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn affsemi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds `<g_1, ..., g_count>` in `Z^dim` from `count * dim` row-major entries.
///
/// # Safety
/// `gens` must point to `count * dim` integers (or be null when that product is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_new(
    dim: usize,
    gens: *const i64,
    count: usize,
    out: *mut *mut AffsemiSemigroup,
) -> AffsemiStatus {
    guard(|| {
        let len = dim.checked_mul(count).ok_or(Failure::Lib(Error::Overflow("generator count")))?;
        let data = slice_arg(gens, len, "gens")?;
        let rows = if dim == 0 { Vec::new() } else { data.chunks(dim).map(<[i64]>::to_vec).collect() };
        let s = AffineSemigroup::new(dim, rows)?;
        write_out(out, Box::into_raw(Box::new(AffsemiSemigroup(s))), "out")
    })
}

/// Parses a semigroup document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_parse(
    json: *const c_char,
    out: *mut *mut AffsemiSemigroup,
) -> AffsemiStatus {
    guard(|| {
        let s = parse_semigroup(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(AffsemiSemigroup(s))), "out")
    })
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_free(s: *mut AffsemiSemigroup) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_dim(s: *const AffsemiSemigroup, out: *mut usize) -> AffsemiStatus {
    guard(|| write_out(out, handle(s, "semigroup")?.0.ambient_dim(), "out"))
}

/// Rank of the group of differences.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_rank(s: *const AffsemiSemigroup, out: *mut usize) -> AffsemiStatus {
    guard(|| write_out(out, handle(s, "semigroup")?.0.rank(), "out"))
}

/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_is_positive(s: *const AffsemiSemigroup, out: *mut bool) -> AffsemiStatus {
    guard(|| write_out(out, handle(s, "semigroup")?.0.positive(), "out"))
}

/// Decides `x ∈ S`. On `Yes`, when `coeffs` is non-null, one coefficient per
/// generator is written to it; `coeffs_len` must then be at least the number of
/// generators, which is always stored in `n_coeffs` when that is non-null.
///
/// # Safety
/// `x` must point to `len` integers; `coeffs` to `coeffs_len` writable slots when non-null.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_member(
    s: *const AffsemiSemigroup,
    x: *const i64,
    len: usize,
    bound: u64,
    verdict: *mut AffsemiMembership,
    coeffs: *mut u64,
    coeffs_len: usize,
    n_coeffs: *mut usize,
) -> AffsemiStatus {
    guard(|| {
        let s = &handle(s, "semigroup")?.0;
        let x = slice_arg(x, len, "x")?;
        let n = s.generators().len();
        if !n_coeffs.is_null() {
            n_coeffs.write(n);
        }
        let v = match s.member(x, Some(bound))? {
            MembershipDecision::Yes(c) => {
                if !coeffs.is_null() {
                    if coeffs_len < n {
                        return Err(Failure::Status(
                            AffsemiStatus::BufferTooSmall,
                            format!("need {n} coefficient slots, got {coeffs_len}"),
                        ));
                    }
                    ptr::copy_nonoverlapping(c.as_ptr(), coeffs, n);
                }
                AffsemiMembership::Yes
            }
            MembershipDecision::No => AffsemiMembership::No,
            MembershipDecision::Unknown(_) => AffsemiMembership::Unknown,
        };
        write_out(verdict, v, "verdict")
    })
}

/// The semigroup as a JSON document.
///
/// # Safety
/// `s` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_semigroup_to_json(s: *const AffsemiSemigroup, out: *mut *mut c_char) -> AffsemiStatus {
    guard(|| write_out(out, owned_string(semigroup_json(&handle(s, "semigroup")?.0).to_string()), "out"))
}

/// Context of `s1`, `s2` over `s` with inclusion maps in a common `Z^d`.
///
/// # Safety
/// All handles must be live and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_new(
    s1: *const AffsemiSemigroup,
    s2: *const AffsemiSemigroup,
    s: *const AffsemiSemigroup,
    out: *mut *mut AffsemiContext,
) -> AffsemiStatus {
    guard(|| {
        let ctx = FiberedSumContext::embedded(&handle(s1, "s1")?.0, &handle(s2, "s2")?.0, &handle(s, "s")?.0)?;
        write_out(out, Box::into_raw(Box::new(AffsemiContext(ctx))), "out")
    })
}

/// Parses a context document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_parse(json: *const c_char, out: *mut *mut AffsemiContext) -> AffsemiStatus {
    guard(|| {
        let ctx = parse_context(str_arg(json, "json")?)?;
        write_out(out, Box::into_raw(Box::new(AffsemiContext(ctx))), "out")
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_free(c: *mut AffsemiContext) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_is_torsion_free(c: *const AffsemiContext, out: *mut bool) -> AffsemiStatus {
    guard(|| write_out(out, handle(c, "context")?.0.is_torsion_free(), "out"))
}

/// Order of the torsion subgroup of the relation quotient, saturated at `u64::MAX`.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_torsion_order(c: *const AffsemiContext, out: *mut u64) -> AffsemiStatus {
    guard(|| {
        let order = handle(c, "context")?.0.quotient().torsion_order();
        write_out(out, u64::try_from(order).unwrap_or(u64::MAX), "out")
    })
}

/// The torsion-free fibered sum as a new semigroup handle.
///
/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_tilde(
    c: *const AffsemiContext,
    out: *mut *mut AffsemiSemigroup,
) -> AffsemiStatus {
    guard(|| {
        let t = handle(c, "context")?.0.tilde_presentation()?;
        write_out(out, Box::into_raw(Box::new(AffsemiSemigroup(t.semigroup))), "out")
    })
}

/// # Safety
/// `c` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn affsemi_context_to_json(c: *const AffsemiContext, out: *mut *mut c_char) -> AffsemiStatus {
    guard(|| write_out(out, owned_string(context_json(&handle(c, "context")?.0).to_string()), "out"))
}

/// Decides whether `a s1` and `b s2` glue. On `Yes`, when `w` is non-null, the
/// identified element is written to it; `w_len` must be at least the ambient dimension.
///
/// # Safety
/// Handles must be live; `verdict` writable; `w` must have `w_len` writable slots when non-null.
#[no_mangle]
pub unsafe extern "C" fn affsemi_glue(
    s1: *const AffsemiSemigroup,
    s2: *const AffsemiSemigroup,
    a: i64,
    b: i64,
    verdict: *mut AffsemiGluing,
    w: *mut i64,
    w_len: usize,
) -> AffsemiStatus {
    guard(|| {
        let q = GluingQuery { s1: handle(s1, "s1")?.0.clone(), s2: handle(s2, "s2")?.0.clone(), a, b };
        if a < 1 || b < 1 {
            return Err(Failure::Lib(Error::InvalidArgument("a and b must be positive".into())));
        }
        let report = can_glue_with(&q)?;
        let v = match &report.verdict {
            GluingVerdict::Yes { w: found, .. } => {
                if !w.is_null() {
                    if w_len < found.len() {
                        return Err(Failure::Status(
                            AffsemiStatus::BufferTooSmall,
                            format!("need {} slots for w, got {w_len}", found.len()),
                        ));
                    }
                    ptr::copy_nonoverlapping(found.as_ptr(), w, found.len());
                }
                AffsemiGluing::Yes
            }
            GluingVerdict::No { .. } => AffsemiGluing::No,
            GluingVerdict::ImpossibleAllScales { .. } => AffsemiGluing::ImpossibleAllScales,
            GluingVerdict::NotFoundUpTo { .. } => AffsemiGluing::NotFoundUpTo,
        };
        write_out(verdict, v, "verdict")
    })
}
