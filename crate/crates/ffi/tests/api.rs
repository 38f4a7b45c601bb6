use std::ffi::{CStr, CString};
use std::ptr;

use camcoh_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(camcoh_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn points(d: *const CamcohDiagram) -> Vec<(usize, f64, f64)> {
    (0..camcoh_diagram_len(d))
        .map(|i| {
            let mut p = CamcohPoint { dim: 0, birth: 0.0, death: 0.0 };
            assert_eq!(camcoh_diagram_get(d, i, &mut p), CamcohStatus::Ok);
            (p.dim, p.birth, p.death)
        })
        .collect()
}

unsafe fn triangle() -> *mut CamcohComplex {
    let b = camcoh_builder_new();
    for v in 0..3u32 {
        assert_eq!(camcoh_builder_insert(b, &v, 1, 0.0), CamcohStatus::Ok);
    }
    for e in [[0u32, 1], [0, 2], [1, 2]] {
        assert_eq!(camcoh_builder_insert(b, e.as_ptr(), 2, 1.0), CamcohStatus::Ok);
    }
    let t = [0u32, 1, 2];
    assert_eq!(camcoh_builder_insert(b, t.as_ptr(), 3, 2.0), CamcohStatus::Ok);
    let mut c = ptr::null_mut();
    assert_eq!(camcoh_builder_finalize(b, &mut c), CamcohStatus::Ok);
    camcoh_builder_free(b);
    c
}

#[test]
fn triangle_through_the_c_abi() {
    unsafe {
        let c = triangle();
        assert_eq!(camcoh_complex_len(c), 7);
        let mut d = ptr::null_mut();
        let mut stats = CamcohStats::default();
        assert_eq!(camcoh_compute(c, 2, ptr::null(), &mut d, &mut stats), CamcohStatus::Ok);
        let inf = f64::INFINITY;
        assert_eq!(points(d), vec![(0, 0.0, 1.0), (0, 0.0, 1.0), (0, 0.0, inf), (1, 1.0, 2.0)]);
        assert!(stats.g_max_total >= 1 && stats.s_max_total >= 1);

        let mut o = ptr::null_mut();
        assert_eq!(camcoh_oracle(c, 2, false, &mut o), CamcohStatus::Ok);
        let mut eq = false;
        assert_eq!(camcoh_diagram_equal(d, o, &mut eq), CamcohStatus::Ok);
        assert!(eq);

        let mut p = CamcohPoint { dim: 0, birth: 0.0, death: 0.0 };
        assert_eq!(camcoh_diagram_get(d, 4, &mut p), CamcohStatus::OutOfRange);
        assert!(last_error().contains("index 4"));

        camcoh_diagram_free(o);
        camcoh_diagram_free(d);
        camcoh_complex_free(c);
    }
}

#[test]
fn standard_options_and_other_fields() {
    unsafe {
        let c = triangle();
        let opts = CamcohOptions { lazy: false, reorder: false, emit_zero_length: false };
        for p in [3, 11, 7919] {
            let mut a = ptr::null_mut();
            let mut b = ptr::null_mut();
            assert_eq!(camcoh_compute(c, p, &opts, &mut a, ptr::null_mut()), CamcohStatus::Ok);
            assert_eq!(camcoh_compute(c, p, ptr::null(), &mut b, ptr::null_mut()), CamcohStatus::Ok);
            let mut eq = false;
            camcoh_diagram_equal(a, b, &mut eq);
            assert!(eq);
            camcoh_diagram_free(a);
            camcoh_diagram_free(b);
        }
        camcoh_complex_free(c);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let c = triangle();
        let mut d = ptr::null_mut();
        assert_eq!(camcoh_compute(c, 4, ptr::null(), &mut d, ptr::null_mut()), CamcohStatus::InvalidField);
        assert!(last_error().contains("CompositeModulus"));
        assert!(d.is_null());
        assert_eq!(camcoh_compute(ptr::null(), 2, ptr::null(), &mut d, ptr::null_mut()), CamcohStatus::NullPointer);
        camcoh_complex_free(c);

        let b = camcoh_builder_new();
        let e = [0u32, 1];
        assert_eq!(camcoh_builder_insert(b, e.as_ptr(), 2, 1.0), CamcohStatus::Ok);
        let mut c = ptr::null_mut();
        assert_eq!(camcoh_builder_finalize(b, &mut c), CamcohStatus::InvalidComplex);
        assert!(last_error().contains("ClosureViolation"));
        assert_eq!(camcoh_builder_close(b), CamcohStatus::Ok);
        assert_eq!(camcoh_builder_finalize(b, &mut c), CamcohStatus::Ok);
        assert_eq!(camcoh_complex_len(c), 3);
        let dup = [1u32, 1];
        assert_eq!(camcoh_builder_insert(b, dup.as_ptr(), 2, 1.0), CamcohStatus::InvalidComplex);
        assert_eq!(camcoh_builder_insert(b, e.as_ptr(), 2, f64::NAN), CamcohStatus::InvalidComplex);
        camcoh_complex_free(c);
        camcoh_builder_free(b);

        camcoh_builder_free(ptr::null_mut());
        camcoh_complex_free(ptr::null_mut());
        camcoh_diagram_free(ptr::null_mut());
        assert_eq!(camcoh_diagram_len(ptr::null()), 0);
    }
}

#[test]
fn points_and_files() {
    unsafe {
        let square = [0.0, 0.0, 1.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let mut c = ptr::null_mut();
        assert_eq!(camcoh_complex_from_points(square.as_ptr(), 4, 2, 1.0, 2, &mut c), CamcohStatus::Ok);
        assert_eq!(camcoh_complex_len(c), 8);
        let mut d = ptr::null_mut();
        assert_eq!(camcoh_compute(c, 2, ptr::null(), &mut d, ptr::null_mut()), CamcohStatus::Ok);
        assert_eq!(points(d).iter().filter(|p| p.0 == 1).count(), 1);
        camcoh_diagram_free(d);
        camcoh_complex_free(c);
        assert_eq!(
            camcoh_complex_from_points(square.as_ptr(), 4, 2, -1.0, 2, &mut c),
            CamcohStatus::InvalidArgument
        );

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("tri.flt");
        std::fs::write(&path, "0 0\n0 1\n0 2\n1 0 1\n1 0 2\n1 1 2\n2 0 1 2\n").unwrap();
        let cpath = CString::new(path.to_str().unwrap()).unwrap();
        assert_eq!(camcoh_complex_from_filtration_file(cpath.as_ptr(), &mut c), CamcohStatus::Ok);
        assert_eq!(camcoh_complex_len(c), 7);
        camcoh_complex_free(c);

        let missing = CString::new(dir.path().join("nope").to_str().unwrap()).unwrap();
        assert_eq!(camcoh_complex_from_filtration_file(missing.as_ptr(), &mut c), CamcohStatus::IoError);
        std::fs::write(&path, "zero 0\n").unwrap();
        assert_eq!(camcoh_complex_from_filtration_file(cpath.as_ptr(), &mut c), CamcohStatus::ParseError);
    }
}
