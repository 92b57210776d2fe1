//! C ABI for `stripfol`.
//!
//! Surfaces live behind an opaque `SfSurface` handle. Every fallible call
//! returns an `SfStatus`; on failure a message is kept per thread and can be
//! fetched with [`sf_last_error`]. Strings handed out by the library are
//! owned by the caller and must be released with [`sf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, UnwindSafe};
use std::ptr;

use stripfol::dsl::{parse_surface, parse_unvalidated, serialize_surface, LoadError};
use stripfol::homeo::{check_identity_component, FHomeoShadow};
use stripfol::leaves::{classify_leaves, is_reduced, leaves_json};
use stripfol::numeric::{chain_homeo, merge_homeo_banded, merge_homeo_raw, sigma, NumericError, Point2};
use stripfol::reduction::{orientable, reduce};
use stripfol::{validate_surface, Error, StrippedSurface};

/// Result of a call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SfStatus {
    Ok = 0,
    /// The answer to a yes/no question is no.
    False = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    InvalidSurface = 5,
    NotConnected = 6,
    NotReduced = 7,
    InvalidShadow = 8,
    OutOfDomain = 9,
    Internal = 10,
    Panic = 11,
}

impl SfStatus {
    fn from_error(e: &Error) -> Self {
        match e {
            Error::InvalidSurface(_) => SfStatus::InvalidSurface,
            Error::NotConnected(_) => SfStatus::NotConnected,
            Error::NotReduced(_) => SfStatus::NotReduced,
            Error::InvalidShadow(_) => SfStatus::InvalidShadow,
            _ => SfStatus::Internal,
        }
    }
}

/// Opaque handle to a validated surface.
pub struct SfSurface {
    inner: StrippedSurface,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(SfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(SfStatus::from_error(&e), format!("{}: {e}", e.code()))
    }
}

impl From<NumericError> for Fail {
    fn from(e: NumericError) -> Self {
        Fail(SfStatus::OutOfDomain, format!("{}: {e}", e.code()))
    }
}

fn guard(f: impl FnOnce() -> Result<SfStatus, Fail> + UnwindSafe) -> SfStatus {
    clear_last_error();
    match catch_unwind(f) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_last_error(msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            SfStatus::Panic
        }
    }
}

unsafe fn input_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(SfStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(SfStatus::InvalidUtf8, e.to_string()))
}

unsafe fn surface<'a>(h: *const SfSurface) -> Result<&'a StrippedSurface, Fail> {
    h.as_ref().map(|s| &s.inner).ok_or_else(|| Fail(SfStatus::NullPointer, "null surface handle".into()))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(SfStatus::NullPointer, "null output pointer".into()));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<SfStatus, Fail> {
    let c = CString::new(s).map_err(|e| Fail(SfStatus::Internal, e.to_string()))?;
    put(out, c.into_raw())?;
    Ok(SfStatus::Ok)
}

fn load_error(e: LoadError) -> Fail {
    match e {
        LoadError::Parse(errs) => Fail(SfStatus::ParseError, LoadError::Parse(errs).to_string()),
        LoadError::Invalid(d) => Error::InvalidSurface(d).into(),
    }
}

/// Static name of a status, e.g. `"NOT_REDUCED"`.
#[no_mangle]
pub extern "C" fn sf_status_name(status: SfStatus) -> *const c_char {
    let s: &'static CStr = match status {
        SfStatus::Ok => c"OK",
        SfStatus::False => c"FALSE",
        SfStatus::NullPointer => c"NULL_POINTER",
        SfStatus::InvalidUtf8 => c"INVALID_UTF8",
        SfStatus::ParseError => c"PARSE_ERROR",
        SfStatus::InvalidSurface => c"INVALID_SURFACE",
        SfStatus::NotConnected => c"NOT_CONNECTED",
        SfStatus::NotReduced => c"NOT_REDUCED",
        SfStatus::InvalidShadow => c"INVALID_SHADOW",
        SfStatus::OutOfDomain => c"OUT_OF_DOMAIN",
        SfStatus::Internal => c"INTERNAL",
        SfStatus::Panic => c"PANIC",
    };
    s.as_ptr()
}

/// Copy of the last error message on this thread, or null if the last call
/// succeeded. Free with [`sf_string_free`].
#[no_mangle]
pub extern "C" fn sf_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |m| m.clone().into_raw()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates a surface document.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_parse(text: *const c_char, out: *mut *mut SfSurface) -> SfStatus {
    guard(|| {
        let text = input_str(text)?;
        let inner = parse_surface(text).map_err(load_error)?;
        put(out, Box::into_raw(Box::new(SfSurface { inner })))?;
        Ok(SfStatus::Ok)
    })
}

/// # Safety
/// `surface` must be null or a handle from [`sf_surface_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_free(surface: *mut SfSurface) {
    if !surface.is_null() {
        drop(Box::from_raw(surface));
    }
}

/// Diagnostics JSON for a document that parses but may not validate.
/// Returns `SF_STATUS_FALSE` when there are issues.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_validate(text: *const c_char, out_json: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let s = parse_unvalidated(input_str(text)?).map_err(|e| load_error(LoadError::Parse(e)))?;
        let d = validate_surface(&s);
        let json = serde_json::to_string(&d).map_err(|e| Fail(SfStatus::Internal, e.to_string()))?;
        put_string(out_json, json)?;
        Ok(if d.ok() { SfStatus::Ok } else { SfStatus::False })
    })
}

/// Canonical text form.
///
/// # Safety
/// `surface` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_serialize(surface: *const SfSurface, out: *mut *mut c_char) -> SfStatus {
    guard(|| put_string(out, serialize_surface(self::surface(surface)?)))
}

/// Leaf records as a JSON array.
///
/// # Safety
/// `surface` must be a live handle and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_leaves_json(surface: *const SfSurface, out_json: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let recs = classify_leaves(self::surface(surface)?)?;
        put_string(out_json, leaves_json(&recs).to_string())
    })
}

/// Reduction outcome as JSON.
///
/// # Safety
/// `surface` must be a live handle and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_reduce_json(surface: *const SfSurface, out_json: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let outcome = reduce(self::surface(surface)?)?;
        put_string(out_json, outcome.to_json().to_string())
    })
}

/// # Safety
/// `surface` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_is_reduced(surface: *const SfSurface, out: *mut bool) -> SfStatus {
    guard(|| {
        let r = is_reduced(self::surface(surface)?)?;
        put(out, r)?;
        Ok(SfStatus::Ok)
    })
}

/// Orientability of a connected surface.
///
/// # Safety
/// `surface` must be a live handle and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_surface_orientable(surface: *const SfSurface, out: *mut bool) -> SfStatus {
    guard(|| {
        let r = orientable(self::surface(surface)?)?;
        put(out, r)?;
        Ok(SfStatus::Ok)
    })
}

/// Identity-component verdict for a shadow given as JSON. Returns
/// `SF_STATUS_OK` when the shadow is in the identity component and
/// `SF_STATUS_FALSE` otherwise; the verdict JSON is written in both cases.
///
/// # Safety
/// `surface` must be a live handle, `shadow_json` a NUL-terminated string
/// and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sf_check_h0(surface: *const SfSurface, shadow_json: *const c_char, out_json: *mut *mut c_char) -> SfStatus {
    guard(|| {
        let s = self::surface(surface)?;
        let shadow = FHomeoShadow::from_json(input_str(shadow_json)?)
            .map_err(|e| Fail(SfStatus::InvalidShadow, format!("INVALID_SHADOW: {e}")))?;
        let v = check_identity_component(s, &shadow)?;
        put_string(out_json, v.to_json().to_string())?;
        Ok(if v.in_h0() { SfStatus::Ok } else { SfStatus::False })
    })
}

unsafe fn eval_point(f: fn(Point2) -> Result<Point2, NumericError>, x: f64, y: f64, ox: *mut f64, oy: *mut f64) -> SfStatus {
    guard(|| {
        let p = f(Point2::new(x, y))?;
        put(ox, p.x)?;
        put(oy, p.y)?;
        Ok(SfStatus::Ok)
    })
}

/// # Safety
/// `ox` and `oy` must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_merge_homeo_raw(x: f64, y: f64, ox: *mut f64, oy: *mut f64) -> SfStatus {
    eval_point(merge_homeo_raw, x, y, ox, oy)
}

/// # Safety
/// `ox` and `oy` must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_merge_homeo_banded(x: f64, y: f64, ox: *mut f64, oy: *mut f64) -> SfStatus {
    eval_point(merge_homeo_banded, x, y, ox, oy)
}

/// # Safety
/// `ox` and `oy` must be writable pointers.
#[no_mangle]
pub unsafe extern "C" fn sf_chain_homeo(x: f64, y: f64, ox: *mut f64, oy: *mut f64) -> SfStatus {
    eval_point(chain_homeo, x, y, ox, oy)
}

/// `t / sqrt(1 + t^2)`.
#[no_mangle]
pub extern "C" fn sf_sigma(t: f64) -> f64 {
    sigma(t)
}
