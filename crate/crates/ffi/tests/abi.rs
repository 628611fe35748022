use std::ffi::{CStr, CString};
use std::ptr;

use twotorus_ffi::*;

fn corpus(name: &str) -> CString {
    let path = format!("{}/../core/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    CString::new(std::fs::read_to_string(path).unwrap()).unwrap()
}

fn load(name: &str) -> *mut TtInstance {
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { tt_instance_from_json(corpus(name).as_ptr(), &mut h) },
        TtStatus::Ok
    );
    h
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(tt_last_error_message()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn cube_through_the_abi() {
    let h = load("cube");
    unsafe {
        let mut n = 0;
        assert_eq!(tt_fixed_points(h, &mut n), TtStatus::Ok);
        assert_eq!(n, 8);

        let mut betti = [0usize; 8];
        let mut len = 0;
        assert_eq!(tt_betti(h, betti.as_mut_ptr(), betti.len(), &mut len), TtStatus::Ok);
        assert_eq!(&betti[..len], &[1, 3, 3, 1]);

        let mut code = TtCodeParams::default();
        assert_eq!(tt_code_params(h, &mut code), TtStatus::Ok);
        assert_eq!(
            (code.length, code.dim, code.min_distance, code.self_dual),
            (8, 4, 4, true)
        );

        let mut f = TtFormality::default();
        assert_eq!(tt_formality(h, &mut f), TtStatus::Ok);
        assert!(f.hsiang && f.criterion && f.criterion_surrogate && f.agree);
        assert_eq!(f.mode as u8, b'A');

        let mut json = ptr::null_mut();
        assert_eq!(tt_report_json(h, &mut json), TtStatus::Ok);
        assert!(CStr::from_ptr(json).to_str().unwrap().contains("\"fixed_points\": 8"));
        tt_string_free(json);
        tt_instance_free(h);
    }
}

#[test]
fn buffer_too_small_reports_the_length() {
    let h = load("triangle");
    unsafe {
        let mut hv = [0i64; 1];
        let mut len = 0;
        assert_eq!(tt_h_vector(h, hv.as_mut_ptr(), 1, &mut len), TtStatus::BufferTooSmall);
        assert_eq!(len, 3);
        let mut len = 0;
        assert_eq!(tt_betti(h, ptr::null_mut(), 0, &mut len), TtStatus::BufferTooSmall);
        assert_eq!(len, 3);
        tt_instance_free(h);
    }
}

#[test]
fn blowup_gives_a_new_handle() {
    let h = load("triangle");
    unsafe {
        let face = CString::new("p12").unwrap();
        let mut cut = ptr::null_mut();
        assert_eq!(tt_blowup(h, face.as_ptr(), &mut cut), TtStatus::Ok);
        let mut n = 0;
        assert_eq!(tt_fixed_points(cut, &mut n), TtStatus::Ok);
        assert_eq!(n, 4);

        let mut json = ptr::null_mut();
        assert_eq!(tt_instance_to_json(cut, &mut json), TtStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(tt_instance_from_json(json, &mut again), TtStatus::Ok);
        tt_string_free(json);

        let facet = CString::new("F1").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(tt_blowup(h, facet.as_ptr(), &mut none), TtStatus::Precondition);
        assert!(none.is_null());
        assert!(last_error().contains("codimension"));

        for x in [h, cut, again] {
            tt_instance_free(x);
        }
    }
}

#[test]
fn errors() {
    unsafe {
        let mut h = ptr::null_mut();
        let bad = CString::new("{\"name\": 1}").unwrap();
        assert_eq!(tt_instance_from_json(bad.as_ptr(), &mut h), TtStatus::InvalidInput);
        assert!(h.is_null());
        assert!(!last_error().is_empty());

        assert_eq!(tt_instance_from_json(ptr::null(), &mut h), TtStatus::NullPointer);
        let mut n = 0;
        assert_eq!(tt_fixed_points(ptr::null(), &mut n), TtStatus::NullPointer);

        let t = load("triangle");
        let mut code = TtCodeParams::default();
        assert_eq!(tt_code_params(t, &mut code), TtStatus::Precondition);
        tt_instance_free(t);
        tt_instance_free(ptr::null_mut());
        tt_string_free(ptr::null_mut());
    }
}
