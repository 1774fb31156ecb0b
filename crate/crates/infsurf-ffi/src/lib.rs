//! C interface to `infsurf`.
//!
//! Blueprints are opaque handles created by [`infsurf_blueprint_parse`] and released with
//! [`infsurf_blueprint_free`]. Strings returned through out-pointers are owned by the caller
//! and must be released with [`infsurf_string_free`]. Every entry point returns an
//! [`InfsurfStatus`]; the message for the most recent failure on the calling thread is
//! available from [`infsurf_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use infsurf::blueprint;
use infsurf::dsl;
use infsurf::lagrangians::GeneratorObject;
use infsurf::{report, EndAutomaton};

/// Status codes returned by every function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfsurfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

/// Opaque blueprint handle.
pub struct InfsurfBlueprint {
    automaton: EndAutomaton,
}

/// Counts and invariants of a truncation.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct InfsurfTruncationStats {
    pub depth: usize,
    pub blocks: usize,
    pub pants: usize,
    pub cylinders: usize,
    pub genus_cylinders: usize,
    pub saddles: usize,
    pub euler_characteristic: i64,
    pub boundary_circles: usize,
    pub genus: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

struct Fail(InfsurfStatus, String);

fn fail<E: std::fmt::Display>(status: InfsurfStatus) -> impl FnOnce(E) -> Fail {
    move |e| Fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> InfsurfStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            InfsurfStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            InfsurfStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(InfsurfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(fail(InfsurfStatus::InvalidUtf8))
}

unsafe fn handle<'a>(bp: *const InfsurfBlueprint) -> Result<&'a InfsurfBlueprint, Fail> {
    bp.as_ref().ok_or_else(|| Fail(InfsurfStatus::NullPointer, "null blueprint handle".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(InfsurfStatus::NullPointer, "null output pointer".into()))
}

fn owned(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(fail(InfsurfStatus::Domain))
}

fn json<T: serde::Serialize>(v: &T) -> Result<*mut c_char, Fail> {
    owned(serde_json::to_string(v).map_err(fail(InfsurfStatus::Domain))?)
}

fn object(s: &str) -> Result<GeneratorObject, Fail> {
    s.parse().map_err(fail(InfsurfStatus::Parse))
}

/// Parses blueprint source text. On success `*out` receives a new handle.
///
/// # Safety
/// `source` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_blueprint_parse(source: *const c_char, out: *mut *mut InfsurfBlueprint) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        *slot = ptr::null_mut();
        let src = text(source)?;
        let (_, automaton) = dsl::load(src).map_err(fail(InfsurfStatus::Parse))?;
        *slot = Box::into_raw(Box::new(InfsurfBlueprint { automaton }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `bp` must be null or a handle from [`infsurf_blueprint_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn infsurf_blueprint_free(bp: *mut InfsurfBlueprint) {
    if !bp.is_null() {
        drop(Box::from_raw(bp));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned through an out-pointer of this library.
#[no_mangle]
pub unsafe extern "C" fn infsurf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn infsurf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Number of states of the blueprint automaton.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_state_count(bp: *const InfsurfBlueprint, out: *mut usize) -> InfsurfStatus {
    guard(|| {
        *self::out(out)? = handle(bp)?.automaton.len();
        Ok(())
    })
}

/// Writes whether the surface is of finite type.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_is_finite_type(bp: *const InfsurfBlueprint, out: *mut bool) -> InfsurfStatus {
    guard(|| {
        let a = blueprint::normalize(&handle(bp)?.automaton);
        *self::out(out)? = blueprint::is_finite_type(&a);
        Ok(())
    })
}

/// Classification report as JSON.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_classify_json(bp: *const InfsurfBlueprint, depth: usize, out: *mut *mut c_char) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        let r = report::classify(&handle(bp)?.automaton, depth).map_err(fail(InfsurfStatus::Domain))?;
        *slot = json(&r)?;
        Ok(())
    })
}

/// Truncation statistics at depth `n`.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_truncate(bp: *const InfsurfBlueprint, n: usize, out: *mut InfsurfTruncationStats) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        let (s, _) = report::truncate(&handle(bp)?.automaton, n).map_err(fail(InfsurfStatus::Domain))?;
        *slot = InfsurfTruncationStats {
            depth: s.depth,
            blocks: s.blocks,
            pants: s.pants,
            cylinders: s.cylinders,
            genus_cylinders: s.genus_cylinders,
            saddles: s.saddles,
            euler_characteristic: s.euler_characteristic,
            boundary_circles: s.boundary_circles,
            genus: s.genus,
        };
        Ok(())
    })
}

/// DOT graph of the truncation at depth `n`.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_truncate_dot(bp: *const InfsurfBlueprint, n: usize, out: *mut *mut c_char) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        let (_, dot) = report::truncate(&handle(bp)?.automaton, n).map_err(fail(InfsurfStatus::Domain))?;
        *slot = owned(dot)?;
        Ok(())
    })
}

/// Generator list through depth `n` as JSON. Fails with `Domain` when the limit set is uncountable.
///
/// # Safety
/// `bp` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_generators_json(bp: *const InfsurfBlueprint, n: usize, out: *mut *mut c_char) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        let r = report::generators(&handle(bp)?.automaton, n).map_err(fail(InfsurfStatus::Domain))?;
        *slot = json(&r)?;
        Ok(())
    })
}

/// Cohomology ranks of the morphism complex between two objects at depth `n`.
///
/// # Safety
/// `bp` must be a live handle, `a` and `b` NUL-terminated strings, `h0` and `h1` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn infsurf_mor_ranks(
    bp: *const InfsurfBlueprint,
    a: *const c_char,
    b: *const c_char,
    n: usize,
    h0: *mut usize,
    h1: *mut usize,
) -> InfsurfStatus {
    guard(|| {
        let (h0, h1) = (self::out(h0)?, self::out(h1)?);
        let (x, y) = (object(text(a)?)?, object(text(b)?)?);
        let r = report::mor(&handle(bp)?.automaton, &x, &y, n, 4).map_err(fail(InfsurfStatus::Domain))?;
        *h0 = r.complex.ranks.h0;
        *h1 = r.complex.ranks.h1;
        Ok(())
    })
}

/// Full morphism report as JSON, including the stabilization search over `window`.
///
/// # Safety
/// `bp` must be a live handle, `a` and `b` NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn infsurf_mor_json(
    bp: *const InfsurfBlueprint,
    a: *const c_char,
    b: *const c_char,
    n: usize,
    window: usize,
    out: *mut *mut c_char,
) -> InfsurfStatus {
    guard(|| {
        let slot = self::out(out)?;
        let (x, y) = (object(text(a)?)?, object(text(b)?)?);
        let r = report::mor(&handle(bp)?.automaton, &x, &y, n, window).map_err(fail(InfsurfStatus::Domain))?;
        *slot = json(&r)?;
        Ok(())
    })
}
