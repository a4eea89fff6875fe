//! C ABI for `grouplet`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free`. Fallible calls return a status code
//! (`GROUPLET_OK` on success) and leave a message for
//! [`grouplet_last_error`] on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use grouplet::circulant::{embed, matrix_to_json};
use grouplet::group::parse_group;
use grouplet::maschke::{verdict, RadicalDimension};
use grouplet::{Error, FieldSpec, FiniteGroup, GroupRingElement, MaschkeVerdict};

pub const GROUPLET_OK: i32 = 0;
/// A required pointer argument was null.
pub const GROUPLET_ERR_NULL: i32 = 1;
/// A string argument was not valid UTF-8.
pub const GROUPLET_ERR_UTF8: i32 = 2;
/// A group spec, field spec or element literal did not parse or validate.
pub const GROUPLET_ERR_PARSE: i32 = 3;
/// Any other domain error: size limits, mismatched fields, preconditions.
pub const GROUPLET_ERR_DOMAIN: i32 = 4;
/// Certificate violation or method disagreement inside the library.
pub const GROUPLET_ERR_INTERNAL: i32 = 5;
pub const GROUPLET_ERR_PANIC: i32 = 6;

/// A validated finite group.
pub struct GroupletGroup {
    inner: Arc<FiniteGroup>,
}

/// A semisimplicity verdict with its certificate.
pub struct GroupletVerdict {
    inner: MaschkeVerdict,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nuls removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::NotPrime(_) | Error::InvalidGroup(_) => GROUPLET_ERR_PARSE,
        e if e.is_internal() => GROUPLET_ERR_INTERNAL,
        _ => GROUPLET_ERR_DOMAIN,
    }
}

struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GROUPLET_OK,
        Ok(Err(Failure(code, message))) => {
            set_error(message);
            code
        }
        Err(_) => {
            set_error("panic inside grouplet".into());
            GROUPLET_ERR_PANIC
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(GROUPLET_ERR_NULL, format!("{name} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GROUPLET_ERR_UTF8, format!("{name} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(GROUPLET_ERR_NULL, format!("{name} is null")))
}

fn out_arg<T>(p: *mut T, name: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(GROUPLET_ERR_NULL, format!("{name} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn grouplet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a group spec such as `C6`, `D4`, `Q8`, `C2xC4` or `@table.json`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn grouplet_group_parse(
    spec: *const c_char,
    out: *mut *mut GroupletGroup,
) -> i32 {
    guard(|| {
        out_arg(out, "out")?;
        let g = parse_group(str_arg(spec, "spec")?)?;
        *out = Box::into_raw(Box::new(GroupletGroup { inner: Arc::new(g) }));
        Ok(())
    })
}

/// # Safety
/// `group` must come from [`grouplet_group_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn grouplet_group_free(group: *mut GroupletGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of the group; 0 for null.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn grouplet_group_order(group: *const GroupletGroup) -> usize {
    group.as_ref().map_or(0, |g| g.inner.order())
}

/// Whether the characteristic of `field` (`Q` or `F<p>`) divides the order.
///
/// # Safety
/// Pointers must be valid; `field` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn grouplet_char_divides(
    field: *const c_char,
    group: *const GroupletGroup,
    out: *mut bool,
) -> i32 {
    guard(|| {
        out_arg(out, "out")?;
        let spec: FieldSpec = str_arg(field, "field")?.parse()?;
        *out = spec.char_divides(ref_arg(group, "group")?.inner.order());
        Ok(())
    })
}

/// Computes the verdict for `field[group]`.
///
/// # Safety
/// Pointers must be valid; `field` nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn grouplet_verdict_compute(
    group: *const GroupletGroup,
    field: *const c_char,
    seed: u64,
    out: *mut *mut GroupletVerdict,
) -> i32 {
    guard(|| {
        out_arg(out, "out")?;
        let g = ref_arg(group, "group")?;
        let spec: FieldSpec = str_arg(field, "field")?.parse()?;
        let v = verdict(&g.inner, spec, seed)?;
        *out = Box::into_raw(Box::new(GroupletVerdict { inner: v }));
        Ok(())
    })
}

/// # Safety
/// `verdict` must come from [`grouplet_verdict_compute`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn grouplet_verdict_free(verdict: *mut GroupletVerdict) {
    if !verdict.is_null() {
        drop(Box::from_raw(verdict));
    }
}

/// # Safety
/// `verdict` must be null or a live handle. Null reads as not semisimple.
#[no_mangle]
pub unsafe extern "C" fn grouplet_verdict_is_semisimple(verdict: *const GroupletVerdict) -> bool {
    verdict.as_ref().is_some_and(|v| v.inner.is_semisimple())
}

/// Radical dimension; `exact` is false when only a lower bound is known.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grouplet_verdict_radical_dimension(
    verdict: *const GroupletVerdict,
    dimension: *mut usize,
    exact: *mut bool,
) -> i32 {
    guard(|| {
        out_arg(dimension, "dimension")?;
        out_arg(exact, "exact")?;
        let (d, e) = match ref_arg(verdict, "verdict")?.inner.radical_dimension {
            RadicalDimension::Exact(d) => (d, true),
            RadicalDimension::AtLeast { at_least } => (at_least, false),
        };
        *dimension = d;
        *exact = e;
        Ok(())
    })
}

/// The verdict report as JSON. Free the string with [`grouplet_string_free`].
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn grouplet_verdict_to_json(
    verdict: *const GroupletVerdict,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        out_arg(out, "out")?;
        let v = ref_arg(verdict, "verdict")?;
        let text = serde_json::to_string(&v.inner)
            .map_err(|e| Failure(GROUPLET_ERR_INTERNAL, e.to_string()))?;
        *out = into_c_string(text);
        Ok(())
    })
}

/// G-circulant matrix of an element literal (`2,5,7`, `1/2,0,3`) as JSON.
/// Free the string with [`grouplet_string_free`].
///
/// # Safety
/// All pointers must be valid; strings nul-terminated.
#[no_mangle]
pub unsafe extern "C" fn grouplet_embed_json(
    group: *const GroupletGroup,
    field: *const c_char,
    element: *const c_char,
    out: *mut *mut c_char,
) -> i32 {
    guard(|| {
        out_arg(out, "out")?;
        let g = ref_arg(group, "group")?;
        let spec: FieldSpec = str_arg(field, "field")?.parse()?;
        let x = GroupRingElement::parse_literal(&g.inner, spec, str_arg(element, "element")?)?;
        *out = into_c_string(matrix_to_json(&embed(&x)).to_string());
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn grouplet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
