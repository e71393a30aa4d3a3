//! C interface to the pencil-orbits library.
//!
//! Every function returns a `PoStatus`; results go through out-pointers. On
//! failure the message is kept per thread and can be read with
//! `po_last_error_message`. Solids are opaque handles owned by the caller
//! and released with `po_solid_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pencil_orbits::classifier::{orbit_size_formula, stabilizer_order, Classifier};
use pencil_orbits::group::representative;
use pencil_orbits::pencil::Geometry;
use pencil_orbits::{Conic, Field, OrbitLabel, PencilSolid};

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PoStatus {
    PO_OK = 0,
    /// A required pointer argument was null.
    PO_NULL_POINTER = 1,
    /// Unsupported q or orbit index.
    PO_INVALID_ARGUMENT = 2,
    /// Malformed text, or conics that do not span a pencil.
    PO_PARSE_ERROR = 3,
    /// The solid's distributions match no orbit.
    PO_INCONSISTENT = 4,
    /// The output buffer is too small; the required size was written.
    PO_BUFFER_TOO_SMALL = 5,
    PO_INTERNAL_ERROR = 6,
}

/// Opaque handle to a solid of PG(5,q).
pub struct PoSolid(PencilSolid);

/// Classification result. `label` is the orbit index 1..=15.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct PoClassification {
    pub label: u32,
    /// r1, r2n, r2s, r3
    pub point_od: [u64; 4],
    /// a1, a2r, a2i, a3
    pub hyperplane_od: [u64; 4],
    pub base_points: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn fail(status: PoStatus, message: impl Into<String>) -> PoStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = message.into());
    status
}

fn guard(f: impl FnOnce() -> PoStatus) -> PoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(PoStatus::PO_INTERNAL_ERROR, "internal error"),
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, PoStatus> {
    if p.is_null() {
        return Err(fail(PoStatus::PO_NULL_POINTER, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(PoStatus::PO_PARSE_ERROR, "string is not UTF-8"))
}

fn field(q: u32) -> Result<Field, PoStatus> {
    Field::new(q as usize).map_err(|e| fail(PoStatus::PO_INVALID_ARGUMENT, e.to_string()))
}

fn label(index: u32) -> Result<OrbitLabel, PoStatus> {
    u8::try_from(index)
        .ok()
        .and_then(OrbitLabel::new)
        .ok_or_else(|| {
            fail(
                PoStatus::PO_INVALID_ARGUMENT,
                format!("no orbit with index {index}"),
            )
        })
}

unsafe fn emit(out: *mut *mut PoSolid, s: PencilSolid) -> PoStatus {
    *out = Box::into_raw(Box::new(PoSolid(s)));
    PoStatus::PO_OK
}

fn status(r: Result<PoStatus, PoStatus>) -> PoStatus {
    r.unwrap_or_else(|e| e)
}

/// Parses `q=<q>:<24 hex digits>`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_solid_from_text(
    text: *const c_char,
    out: *mut *mut PoSolid,
) -> PoStatus {
    guard(|| {
        if out.is_null() {
            return fail(PoStatus::PO_NULL_POINTER, "null out pointer");
        }
        status((|| {
            let t = c_str(text)?;
            let solid =
                PencilSolid::parse(t).map_err(|e| fail(PoStatus::PO_PARSE_ERROR, e.to_string()))?;
            Ok(emit(out, solid))
        })())
    })
}

/// The solid of the pencil spanned by two conics, each 6 hex digits in the
/// order a00 a01 a02 a11 a12 a22.
///
/// # Safety
/// `c1` and `c2` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_solid_from_conics(
    q: u32,
    c1: *const c_char,
    c2: *const c_char,
    out: *mut *mut PoSolid,
) -> PoStatus {
    guard(|| {
        if out.is_null() {
            return fail(PoStatus::PO_NULL_POINTER, "null out pointer");
        }
        status((|| {
            let f = field(q)?;
            let parse = |p| -> Result<Conic, PoStatus> {
                Conic::parse_hex(&f, c_str(p)?)
                    .map_err(|e| fail(PoStatus::PO_PARSE_ERROR, e.to_string()))
            };
            let (a, b) = (parse(c1)?, parse(c2)?);
            let solid = PencilSolid::from_conics(&f, &a, &b)
                .map_err(|e| fail(PoStatus::PO_PARSE_ERROR, e.to_string()))?;
            Ok(emit(out, solid))
        })())
    })
}

/// The representative of orbit `index` (1..=15) over GF(q).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_representative(q: u32, index: u32, out: *mut *mut PoSolid) -> PoStatus {
    guard(|| {
        if out.is_null() {
            return fail(PoStatus::PO_NULL_POINTER, "null out pointer");
        }
        status((|| {
            Ok(emit(out, representative(&field(q)?, label(index)?)))
        })())
    })
}

/// Releases a solid. Null is ignored.
///
/// # Safety
/// `solid` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn po_solid_free(solid: *mut PoSolid) {
    if !solid.is_null() {
        drop(Box::from_raw(solid));
    }
}

/// Field order of a solid.
///
/// # Safety
/// `solid` and `q` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn po_solid_q(solid: *const PoSolid, q: *mut u32) -> PoStatus {
    if solid.is_null() || q.is_null() {
        return fail(PoStatus::PO_NULL_POINTER, "null pointer");
    }
    *q = (*solid).0.q() as u32;
    PoStatus::PO_OK
}

/// Writes `q=<q>:<24 digits>` and a NUL into `buf`. `needed` receives the
/// buffer size required, NUL included, whatever the outcome.
///
/// # Safety
/// `solid` must be valid; `buf` must hold `len` bytes (it may be null when
/// `len` is 0); `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn po_solid_to_text(
    solid: *const PoSolid,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PoStatus {
    if solid.is_null() {
        return fail(PoStatus::PO_NULL_POINTER, "null solid");
    }
    write_c_string(&(*solid).0.to_text(), buf, len, needed)
}

unsafe fn write_c_string(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> PoStatus {
    let n = s.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if buf.is_null() || len < n {
        return fail(PoStatus::PO_BUFFER_TOO_SMALL, format!("{n} bytes needed"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    *buf.add(s.len()) = 0;
    PoStatus::PO_OK
}

/// Orbit label and distributions of a solid.
///
/// # Safety
/// `solid` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn po_classify(
    solid: *const PoSolid,
    out: *mut PoClassification,
) -> PoStatus {
    guard(|| {
        if solid.is_null() || out.is_null() {
            return fail(PoStatus::PO_NULL_POINTER, "null pointer");
        }
        let s = &(*solid).0;
        let geom = Geometry::new(s.q()).expect("solids carry a supported q");
        match Classifier::new(geom).classify(s) {
            Ok(c) => {
                *out = PoClassification {
                    label: c.label.index() as u32,
                    point_od: c.distributions.point_od,
                    hyperplane_od: c.distributions.hyperplane_od,
                    base_points: c.distributions.base_count,
                };
                PoStatus::PO_OK
            }
            Err(e) => fail(PoStatus::PO_INCONSISTENT, e.to_string()),
        }
    })
}

/// Size of orbit `index` over GF(q).
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_orbit_size(q: u32, index: u32, out: *mut u64) -> PoStatus {
    if out.is_null() {
        return fail(PoStatus::PO_NULL_POINTER, "null out pointer");
    }
    status((|| {
        field(q)?;
        *out = orbit_size_formula(label(index)?, q as u64);
        Ok(PoStatus::PO_OK)
    })())
}

/// Order of the stabiliser in PGL(3,q) of a solid in orbit `index`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn po_stabilizer_order(q: u32, index: u32, out: *mut u64) -> PoStatus {
    if out.is_null() {
        return fail(PoStatus::PO_NULL_POINTER, "null out pointer");
    }
    status((|| {
        field(q)?;
        *out = stabilizer_order(label(index)?, q as u64);
        Ok(PoStatus::PO_OK)
    })())
}

/// Copies the calling thread's last error message, NUL-terminated, into
/// `buf`. Same buffer protocol as `po_solid_to_text`.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn po_last_error_message(
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> PoStatus {
    let message = LAST_ERROR.with(|e| e.borrow().clone());
    let n = message.len() + 1;
    if !needed.is_null() {
        *needed = n;
    }
    if buf.is_null() || len < n {
        return PoStatus::PO_BUFFER_TOO_SMALL;
    }
    ptr::copy_nonoverlapping(message.as_ptr(), buf.cast::<u8>(), message.len());
    *buf.add(message.len()) = 0;
    PoStatus::PO_OK
}
