//! C ABI for `twotorus`.
//!
//! Instances live behind an opaque `TtInstance` handle created from JSON text
//! and released with `tt_instance_free`. Every function returns a `TtStatus`;
//! on failure `tt_last_error_message` describes the error. Strings returned
//! through `char **` out-parameters are owned by the caller and must be
//! released with `tt_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twotorus::codes::{facet_code, is_self_dual, min_distance};
use twotorus::error::Error;
use twotorus::instance::{self, Instance};
use twotorus::model::{fixed_points, Criterion};
use twotorus::poset::fh_vectors;
use twotorus::report;

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or an instance that fails validation.
    InvalidInput = 3,
    /// A computation's precondition does not hold.
    Precondition = 4,
    /// The output buffer is too small; the required length was written.
    BufferTooSmall = 5,
    /// A bug: the library panicked.
    Internal = 6,
}

/// Opaque instance handle.
pub struct TtInstance {
    inner: Instance,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TtFormality {
    pub hsiang: bool,
    pub criterion: bool,
    /// The criterion was not computed but assumed (no triangulation given).
    pub criterion_surrogate: bool,
    pub h_identity: bool,
    pub agree: bool,
    /// 'A' for the cone model, 'B' for a supplied triangulation.
    pub mode: c_char,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct TtCodeParams {
    pub length: usize,
    pub dim: usize,
    pub min_distance: usize,
    pub self_dual: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> TtStatus {
    match e {
        Error::Precondition(_) | Error::BoundarySquare(_) => TtStatus::Precondition,
        _ => TtStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), TtStatus>) -> TtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TtStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal error: the library panicked");
            TtStatus::Internal
        }
    }
}

fn fail(e: Error) -> TtStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn handle<'a>(h: *const TtInstance) -> Result<&'a Instance, TtStatus> {
    if h.is_null() {
        set_error("null instance handle");
        return Err(TtStatus::NullPointer);
    }
    Ok(&(*h).inner)
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, TtStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(TtStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        TtStatus::InvalidUtf8
    })
}

unsafe fn out_ptr<'a, T>(p: *mut T) -> Result<&'a mut T, TtStatus> {
    if p.is_null() {
        set_error("null output pointer");
        return Err(TtStatus::NullPointer);
    }
    Ok(&mut *p)
}

unsafe fn write_slice<T: Copy>(values: &[T], out: *mut T, cap: usize, len: *mut usize) -> Result<(), TtStatus> {
    *out_ptr(len)? = values.len();
    if values.len() > cap {
        set_error(format!("buffer holds {cap} values, {} needed", values.len()));
        return Err(TtStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if out.is_null() {
            set_error("null output buffer");
            return Err(TtStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

unsafe fn write_string(s: String, out: *mut *mut c_char) -> Result<(), TtStatus> {
    let out = out_ptr(out)?;
    *out = CString::new(s).map_err(|_| TtStatus::Internal)?.into_raw();
    Ok(())
}

fn new_handle(inner: Instance) -> *mut TtInstance {
    Box::into_raw(Box::new(TtInstance { inner }))
}

/// The message of the last failed call on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses and validates an instance from JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_from_json(json: *const c_char, out: *mut *mut TtInstance) -> TtStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let inst = instance::parse(text(json)?).map_err(fail)?;
        *out = new_handle(inst);
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_free(h: *mut TtInstance) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_dim(h: *const TtInstance, out: *mut usize) -> TtStatus {
    guard(|| {
        *out_ptr(out)? = handle(h)?.poset.dim();
        Ok(())
    })
}

/// Number of vertices of the orbit space, i.e. of fixed points.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_fixed_points(h: *const TtInstance, out: *mut usize) -> TtStatus {
    guard(|| {
        *out_ptr(out)? = fixed_points(&handle(h)?.poset).len();
        Ok(())
    })
}

/// Mod-2 Betti numbers of the model. Writes the count to `len`; fails with
/// `BufferTooSmall` when it exceeds `cap`.
///
/// # Safety
/// `h` must be a live handle, `out` must hold `cap` values and `len` must be
/// a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_betti(h: *const TtInstance, out: *mut usize, cap: usize, len: *mut usize) -> TtStatus {
    guard(|| {
        let v = report::verdict(handle(h)?).map_err(fail)?;
        write_slice(&v.betti.0, out, cap, len)
    })
}

/// The h-vector `(h_0, …, h_n)`.
///
/// # Safety
/// As for [`tt_betti`].
#[no_mangle]
pub unsafe extern "C" fn tt_h_vector(h: *const TtInstance, out: *mut i64, cap: usize, len: *mut usize) -> TtStatus {
    guard(|| write_slice(&fh_vectors(&handle(h)?.poset).h, out, cap, len))
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_formality(h: *const TtInstance, out: *mut TtFormality) -> TtStatus {
    guard(|| {
        let v = report::verdict(handle(h)?).map_err(fail)?;
        *out_ptr(out)? = TtFormality {
            hsiang: v.hsiang,
            criterion: v.criterion.holds(),
            criterion_surrogate: v.criterion == Criterion::Surrogate,
            h_identity: v.h_identity,
            agree: v.agree,
            mode: v.mode as c_char,
        };
        Ok(())
    })
}

/// Parameters of the facet code. Fails with `Precondition` when there is no
/// m-involution.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_code_params(h: *const TtInstance, out: *mut TtCodeParams) -> TtStatus {
    guard(|| {
        let inst = handle(h)?;
        let m = report::m_involution(inst).map_err(fail)?;
        let (code, _) = facet_code(&inst.poset, &m).map_err(fail)?;
        *out_ptr(out)? = TtCodeParams {
            length: code.length,
            dim: code.dim,
            min_distance: min_distance(&code).map_err(fail)?,
            self_dual: is_self_dual(&code),
        };
        Ok(())
    })
}

/// Cuts the face with id `face` off the orbit space; the result is a new
/// handle.
///
/// # Safety
/// `h` must be a live handle, `face` a NUL-terminated string and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_blowup(h: *const TtInstance, face: *const c_char, out: *mut *mut TtInstance) -> TtStatus {
    guard(|| {
        let out = out_ptr(out)?;
        *out = ptr::null_mut();
        let (cut, _, _) = report::blowup(handle(h)?, text(face)?).map_err(fail)?;
        *out = new_handle(cut);
        Ok(())
    })
}

/// Serializes the instance in the file format.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_instance_to_json(h: *const TtInstance, out: *mut *mut c_char) -> TtStatus {
    guard(|| write_string(handle(h)?.to_json(), out))
}

/// The full report as JSON.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tt_report_json(h: *const TtInstance, out: *mut *mut c_char) -> TtStatus {
    guard(|| {
        let json = report::report_json(handle(h)?).map_err(fail)?;
        write_string(json, out)
    })
}
