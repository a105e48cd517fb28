//! C interface to `qpsurf`.

#![allow(clippy::missing_safety_doc)]
//!
//! Every function returns a [`QpsStatus`]. Objects cross the boundary as opaque
//! handles that must be released with the matching `*_free`. Strings returned
//! to the caller are released with [`qps_string_free`]. After a non-`QPS_OK`
//! status, [`qps_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qpsurf::io::{self, QpJson};
use qpsurf::jacobian::{self, Route};
use qpsurf::mutation::{self, Qp};
use qpsurf::surface::{Triangulation, TriangulationQuiver};
use qpsurf::{scalar, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QpsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Math = 4,
    Panic = 5,
}

/// A triangulation of a punctured surface.
pub struct QpsTriangulation(Triangulation);

/// A quiver with potential.
pub struct QpsQp(Qp);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> QpsStatus {
    match e {
        Error::Parse(_) | Error::Json(_) => QpsStatus::Parse,
        Error::InvalidArgument(_)
        | Error::UnknownArrow(_)
        | Error::UnknownVertex(_)
        | Error::InvalidTriangulation(_)
        | Error::InvalidQuiver(_)
        | Error::FlipImpossible { .. }
        | Error::Io(_) => QpsStatus::InvalidArgument,
        _ => QpsStatus::Math,
    }
}

enum Fail {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

impl From<serde_json::Error> for Fail {
    fn from(e: serde_json::Error) -> Fail {
        Fail::Lib(Error::Json(e))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QpsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QpsStatus::Ok,
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            QpsStatus::NullPointer
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            QpsStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or(Fail::Null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or(Fail::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Lib(Error::Parse(format!("{what} is not UTF-8"))))
}

fn scalars(s: &str) -> Result<Vec<scalar::Scalar>, Fail> {
    Ok(s.split(',').map(scalar::parse).collect::<qpsurf::Result<_>>()?)
}

fn string_out(dst: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let dst = unsafe { out(dst, "out")? };
    *dst = CString::new(s).map_err(|_| Error::Invariant("nul byte in output".into()))?.into_raw();
    Ok(())
}

fn boxed<T>(dst: *mut *mut T, v: T) -> Result<(), Fail> {
    let dst = unsafe { out(dst, "out")? };
    *dst = Box::into_raw(Box::new(v));
    Ok(())
}

/// Message for the most recent failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn qps_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Safety: `s` is null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qps_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Safety: `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_torus(out: *mut *mut QpsTriangulation) -> QpsStatus {
    guard(|| boxed(out, QpsTriangulation(Triangulation::once_punctured_torus())))
}

/// Twice-punctured genus-`g` surface, one puncture inside a 4g-gon.
///
/// Safety: `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_genus2p(g: usize, out: *mut *mut QpsTriangulation) -> QpsStatus {
    guard(|| boxed(out, QpsTriangulation(Triangulation::twice_punctured_genus(g)?)))
}

/// Safety: `json` is a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_from_json(json: *const c_char, out: *mut *mut QpsTriangulation) -> QpsStatus {
    guard(|| {
        let t: Triangulation = serde_json::from_str(text(json, "json")?)?;
        boxed(out, QpsTriangulation(t))
    })
}

/// Safety: `t` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_to_json(t: *const QpsTriangulation, out: *mut *mut c_char) -> QpsStatus {
    guard(|| string_out(out, serde_json::to_string(&borrow(t, "triangulation")?.0)?))
}

/// Safety: `t` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_num_arcs(t: *const QpsTriangulation, out: *mut usize) -> QpsStatus {
    guard(|| {
        *self::out(out, "out")? = borrow(t, "triangulation")?.0.arcs().len();
        Ok(())
    })
}

/// Safety: `t` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_flip(t: *const QpsTriangulation, arc: u32, out: *mut *mut QpsTriangulation) -> QpsStatus {
    guard(|| boxed(out, QpsTriangulation(borrow(t, "triangulation")?.0.flip(arc)?)))
}

/// Safety: `t` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qps_triangulation_free(t: *mut QpsTriangulation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The potential `T + Σ x_p·(cycle around p)` truncated at `degree`, or at the
/// default degree when `degree` is 0. `x` is a comma-separated list of rationals.
///
/// Safety: `t` is a live handle, `x` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_standard(t: *const QpsTriangulation, x: *const c_char, degree: usize, out: *mut *mut QpsQp) -> QpsStatus {
    guard(|| {
        let tq = TriangulationQuiver::new(&borrow(t, "triangulation")?.0)?;
        let d = if degree == 0 { tq.default_degree_s() } else { degree };
        let p = tq.potential_s(&scalars(text(x, "x")?)?, d)?;
        boxed(out, QpsQp(Qp::new(p)))
    })
}

/// The potential `T + x·(puncture cycle)^n` on a once-punctured triangulation.
///
/// Safety: `t` is a live handle, `x` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_power(t: *const QpsTriangulation, x: *const c_char, n: usize, degree: usize, out: *mut *mut QpsQp) -> QpsStatus {
    guard(|| {
        let tq = TriangulationQuiver::new(&borrow(t, "triangulation")?.0)?;
        let d = if degree == 0 { tq.default_degree_sxn(n) } else { degree };
        let p = tq.potential_sxn(&scalar::parse(text(x, "x")?)?, n, d)?;
        boxed(out, QpsQp(Qp::new(p)))
    })
}

/// Safety: `json` is a nul-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_from_json(json: *const c_char, out: *mut *mut QpsQp) -> QpsStatus {
    guard(|| {
        let j: QpJson = serde_json::from_str(text(json, "json")?)?;
        boxed(out, QpsQp(io::qp_from_json(&j)?))
    })
}

/// Safety: `qp` is a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_to_json(qp: *const QpsQp, out: *mut *mut c_char) -> QpsStatus {
    guard(|| string_out(out, serde_json::to_string(&io::qp_to_json(&borrow(qp, "qp")?.0))?))
}

/// Mutation at the vertex with the given name, followed by reduction.
///
/// Safety: `qp` is a live handle, `vertex` a nul-terminated string, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_mutate(qp: *const QpsQp, vertex: *const c_char, out: *mut *mut QpsQp) -> QpsStatus {
    guard(|| {
        let qp = &borrow(qp, "qp")?.0;
        let k = qp.quiver().vertex(text(vertex, "vertex")?)?;
        let m = mutation::mutate(qp, k)?;
        boxed(out, QpsQp(m.qp().clone()))
    })
}

/// Safety: `qp` is null or a live handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qps_qp_free(qp: *mut QpsQp) {
    if !qp.is_null() {
        drop(Box::from_raw(qp));
    }
}

/// Checks that mutating `T + x·(puncture cycle)^n` at `arc` is right-equivalent
/// to the same potential on the flipped triangulation, up to `degree`
/// (0 selects `12n + 6`). Writes whether the check passed.
///
/// Safety: `t` is a live handle, `x` a nul-terminated string, `pass` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_verify_flip(t: *const QpsTriangulation, arc: u32, x: *const c_char, n: usize, degree: usize, pass: *mut bool) -> QpsStatus {
    guard(|| {
        let d = if degree == 0 { 12 * n + 6 } else { degree };
        let x = scalar::parse(text(x, "x")?)?;
        let v = mutation::verify_flip(&borrow(t, "triangulation")?.0, arc, &x, n, d, None)?;
        *out(pass, "pass")? = v.report.pass;
        Ok(())
    })
}

/// Dimension of the Jacobian algebra truncated at `degree`. `certified` is set
/// when every path of some length at most `degree` vanishes, in which case the
/// dimension is that of the untruncated algebra.
///
/// Safety: `qp` is a live handle; `dimension` and `certified` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qps_jacobian_dim(qp: *const QpsQp, degree: usize, dimension: *mut usize, certified: *mut bool) -> QpsStatus {
    guard(|| {
        let q = jacobian::quotient(&borrow(qp, "qp")?.0, degree, Route::Auto)?;
        *out(dimension, "dimension")? = q.dimension;
        *out(certified, "certified")? = q.is_certified();
        Ok(())
    })
}
