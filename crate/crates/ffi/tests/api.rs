use std::ffi::{CStr, CString};
use std::ptr;

use pencil_orbits_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as std::ffi::c_char; 256];
    let mut needed = 0;
    let status = unsafe { po_last_error_message(buf.as_mut_ptr(), buf.len(), &mut needed) };
    assert_eq!(status, PoStatus::PO_OK);
    unsafe { CStr::from_ptr(buf.as_ptr()) }
        .to_str()
        .unwrap()
        .to_string()
}

fn from_text(s: &str) -> Result<*mut PoSolid, PoStatus> {
    let c = CString::new(s).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { po_solid_from_text(c.as_ptr(), &mut out) } {
        PoStatus::PO_OK => Ok(out),
        e => Err(e),
    }
}

fn classify(s: *const PoSolid) -> PoClassification {
    let mut c = PoClassification::default();
    assert_eq!(unsafe { po_classify(s, &mut c) }, PoStatus::PO_OK);
    c
}

#[test]
fn classify_text_solid() {
    let s = from_text("q=2:100000010000001000000100").unwrap();
    let c = classify(s);
    assert_eq!(c.label, 2);
    assert_eq!(c.point_od, [3, 3, 5, 4]);
    assert_eq!(c.hyperplane_od, [1, 2, 0, 0]);
    assert_eq!(c.base_points, 3);
    unsafe { po_solid_free(s) };
}

#[test]
fn representatives_round_trip() {
    for q in [2u32, 4, 8] {
        for index in 1..=15 {
            let mut s = ptr::null_mut();
            assert_eq!(
                unsafe { po_representative(q, index, &mut s) },
                PoStatus::PO_OK
            );
            assert_eq!(classify(s).label, index);
            let mut needed = 0;
            assert_eq!(
                unsafe { po_solid_to_text(s, ptr::null_mut(), 0, &mut needed) },
                PoStatus::PO_BUFFER_TOO_SMALL
            );
            let mut buf = vec![0 as std::ffi::c_char; needed];
            assert_eq!(
                unsafe { po_solid_to_text(s, buf.as_mut_ptr(), buf.len(), ptr::null_mut()) },
                PoStatus::PO_OK
            );
            let text = unsafe { CStr::from_ptr(buf.as_ptr()) }
                .to_str()
                .unwrap()
                .to_string();
            let t = from_text(&text).unwrap();
            assert_eq!(classify(t).label, index);
            let mut fq = 0;
            assert_eq!(unsafe { po_solid_q(t, &mut fq) }, PoStatus::PO_OK);
            assert_eq!(fq, q);
            unsafe {
                po_solid_free(s);
                po_solid_free(t);
            }
        }
    }
}

#[test]
fn conic_pair() {
    let (a, b) = (
        CString::new("000100").unwrap(),
        CString::new("000001").unwrap(),
    );
    let mut s = ptr::null_mut();
    assert_eq!(
        unsafe { po_solid_from_conics(2, a.as_ptr(), b.as_ptr(), &mut s) },
        PoStatus::PO_OK
    );
    assert_eq!(classify(s).label, 3);
    unsafe { po_solid_free(s) };
    assert_eq!(
        unsafe { po_solid_from_conics(2, a.as_ptr(), a.as_ptr(), &mut s) },
        PoStatus::PO_PARSE_ERROR
    );
    assert!(last_error().contains("proportional"));
}

#[test]
fn orbit_sizes_sum_to_solid_count() {
    for (q, total) in [(2u32, 651u64), (4, 93_093), (8, 19_477_641)] {
        let mut sum = 0;
        for index in 1..=15 {
            let (mut size, mut stab) = (0, 0);
            assert_eq!(
                unsafe { po_orbit_size(q, index, &mut size) },
                PoStatus::PO_OK
            );
            assert_eq!(
                unsafe { po_stabilizer_order(q, index, &mut stab) },
                PoStatus::PO_OK
            );
            let q = q as u64;
            assert_eq!(size * stab, q.pow(3) * (q.pow(3) - 1) * (q * q - 1));
            sum += size;
        }
        assert_eq!(sum, total);
    }
}

#[test]
fn errors() {
    let mut out = 0;
    assert_eq!(
        unsafe { po_orbit_size(3, 1, &mut out) },
        PoStatus::PO_INVALID_ARGUMENT
    );
    assert_eq!(
        unsafe { po_orbit_size(4, 16, &mut out) },
        PoStatus::PO_INVALID_ARGUMENT
    );
    assert!(last_error().contains("16"));
    assert_eq!(
        unsafe { po_orbit_size(4, 1, ptr::null_mut()) },
        PoStatus::PO_NULL_POINTER
    );
    assert_eq!(from_text("q=2:12").unwrap_err(), PoStatus::PO_PARSE_ERROR);
    assert_eq!(
        from_text("q=2:100000100000000000000000").unwrap_err(),
        PoStatus::PO_PARSE_ERROR
    );
    assert_eq!(
        unsafe { po_solid_from_text(ptr::null(), &mut ptr::null_mut()) },
        PoStatus::PO_NULL_POINTER
    );
    assert_eq!(
        unsafe { po_classify(ptr::null(), &mut PoClassification::default()) },
        PoStatus::PO_NULL_POINTER
    );
    unsafe { po_solid_free(ptr::null_mut()) };
}
