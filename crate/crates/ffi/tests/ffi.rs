use std::f64::consts::SQRT_2;
use std::ffi::{CStr, CString};
use std::ptr;

use mph_ffi::*;

fn last_error() -> String {
    let p = mph_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn shape(name: &str, resolution: usize) -> *mut MphSizePair {
    let name = CString::new(name).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { mph_size_pair_from_shape(name.as_ptr(), resolution, ptr::null(), &mut out) };
    assert_eq!(status, MphStatus::Ok);
    out
}

fn central_diagram(pair: *const MphSizePair, degree: usize) -> *mut MphDiagram {
    let (l, b) = ([1.0, 1.0], [0.0, 0.0]);
    let mut out = ptr::null_mut();
    let status = unsafe { mph_slice_diagram(pair, l.as_ptr(), b.as_ptr(), 2, degree, 2, &mut out) };
    assert_eq!(status, MphStatus::Ok);
    out
}

fn points(d: *const MphDiagram) -> Vec<(f64, f64, usize)> {
    let mut len = 0;
    assert_eq!(unsafe { mph_diagram_len(d, &mut len) }, MphStatus::Ok);
    (0..len)
        .map(|i| {
            let (mut b, mut e, mut m) = (0.0, 0.0, 0);
            assert_eq!(unsafe { mph_diagram_point(d, i, &mut b, &mut e, &mut m) }, MphStatus::Ok);
            (b, e, m)
        })
        .collect()
}

#[test]
fn cube_sphere_through_the_c_api() {
    let cube = shape("cube_boundary", 0);
    let sphere = shape("sphere", 0);
    let expected = [SQRT_2 - 1.0, (SQRT_2 - 1.0) / 2.0, 0.0];
    for (degree, want) in expected.into_iter().enumerate() {
        let (dc, ds) = (central_diagram(cube, degree), central_diagram(sphere, degree));
        let mut d = f64::NAN;
        assert_eq!(unsafe { mph_bottleneck(dc, ds, &mut d) }, MphStatus::Ok);
        assert!((d - want).abs() < 0.02, "degree {degree}: {d}");
        let mut deg = 99;
        assert_eq!(unsafe { mph_diagram_degree(ds, &mut deg) }, MphStatus::Ok);
        assert_eq!(deg, degree);
        unsafe {
            mph_diagram_free(dc);
            mph_diagram_free(ds);
        }
    }
    let h1 = central_diagram(sphere, 1);
    let pts = points(h1);
    assert_eq!(pts.len(), 1);
    assert_eq!(pts[0].2, 3);
    assert!((pts[0].0 - 1.0).abs() < 0.02 && (pts[0].1 - SQRT_2).abs() < 0.02);

    let mut lower = 0.0;
    let status = unsafe { mph_multidist(cube, sphere, 0, 9, 5, -1.0, 2, &mut lower) };
    assert_eq!(status, MphStatus::Ok);
    assert!(lower > 0.27, "{lower}");
    unsafe {
        mph_diagram_free(h1);
        mph_size_pair_free(cube);
        mph_size_pair_free(sphere);
    }
}

#[test]
fn arrays_text_and_ranks() {
    // Hollow triangle with f = (x, y) coordinates of three points.
    let values = [0.0, 0.0, 1.0, 0.0, 0.0, 1.0];
    let vertices = [0usize, 1, 1, 2, 0, 2];
    let offsets = [0usize, 2, 4, 6];
    let mut pair = ptr::null_mut();
    let status = unsafe {
        mph_size_pair_from_arrays(3, 2, values.as_ptr(), vertices.as_ptr(), offsets.as_ptr(), 3, &mut pair)
    };
    assert_eq!(status, MphStatus::Ok);
    let (mut n, mut count) = (0, 0);
    unsafe {
        assert_eq!(mph_size_pair_dimension(pair, &mut n), MphStatus::Ok);
        assert_eq!(mph_size_pair_vertex_count(pair, &mut count), MphStatus::Ok);
    }
    assert_eq!((n, count), (2, 3));

    let rank = |u: [f64; 2], v: [f64; 2], degree: usize| {
        let mut r = 99;
        let status = unsafe { mph_multidim_rank(pair, u.as_ptr(), v.as_ptr(), 2, degree, 2, &mut r) };
        assert_eq!(status, MphStatus::Ok);
        r
    };
    assert_eq!(rank([0.0, 0.0], [0.5, 0.5], 0), 1);
    assert_eq!(rank([1.0, 1.0], [2.0, 2.0], 0), 1);
    assert_eq!(rank([1.0, 1.0], [2.0, 2.0], 1), 1);
    assert_eq!(rank([1.0, 0.0], [2.0, 0.5], 1), 0);
    unsafe { mph_size_pair_free(pair) };

    let text = CString::new("mph-complex 1\nvertices 2 dim 1\n0\n1\nsimplices 1\n0 1\n").unwrap();
    let mut from_text = ptr::null_mut();
    assert_eq!(unsafe { mph_size_pair_from_text(text.as_ptr(), &mut from_text) }, MphStatus::Ok);
    let (l, b) = ([1.0], [0.0]);
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { mph_slice_diagram(from_text, l.as_ptr(), b.as_ptr(), 1, 0, 2, &mut d) }, MphStatus::Ok);
    assert_eq!(points(d), vec![(0.0, f64::INFINITY, 1)]);
    unsafe {
        mph_diagram_free(d);
        mph_size_pair_free(from_text);
    }
}

#[test]
fn pair_through_and_diagrams_from_pairs() {
    let (u, v) = ([0.0, 1.0], [1.0, 2.0]);
    let (mut l, mut b, mut s, mut t) = ([0.0; 2], [0.0; 2], 0.0, 0.0);
    let status = unsafe { mph_pair_through(u.as_ptr(), v.as_ptr(), 2, l.as_mut_ptr(), b.as_mut_ptr(), &mut s, &mut t) };
    assert_eq!(status, MphStatus::Ok);
    let h = 1.0 / SQRT_2;
    assert!((l[0] - h).abs() < 1e-15 && (l[1] - h).abs() < 1e-15);
    assert!((b[0] + 0.5).abs() < 1e-12 && (b[1] - 0.5).abs() < 1e-12);
    assert!((s - h).abs() < 1e-12 && (t - 3.0 * h).abs() < 1e-12);

    let mk = |births: &[f64], deaths: &[f64]| {
        let mut out = ptr::null_mut();
        let status = unsafe { mph_diagram_from_pairs(0, births.as_ptr(), deaths.as_ptr(), births.len(), &mut out) };
        assert_eq!(status, MphStatus::Ok);
        out
    };
    let a = mk(&[0.0, 0.0], &[SQRT_2, f64::INFINITY]);
    let c = mk(&[0.0, 0.0], &[1.0, f64::INFINITY]);
    let mut d = 0.0;
    assert_eq!(unsafe { mph_bottleneck(a, c, &mut d) }, MphStatus::Ok);
    assert!((d - (SQRT_2 - 1.0)).abs() < 1e-12);
    unsafe {
        mph_diagram_free(a);
        mph_diagram_free(c);
    }
}

#[test]
fn errors_are_reported_with_codes_and_messages() {
    let mut pair = ptr::null_mut();
    assert_eq!(unsafe { mph_size_pair_from_text(ptr::null(), &mut pair) }, MphStatus::NullPointer);
    assert!(pair.is_null());

    let bad = CString::new("mph-complex 1\nvertices 1 dim 1\nseven\nsimplices 0\n").unwrap();
    assert_eq!(unsafe { mph_size_pair_from_text(bad.as_ptr(), &mut pair) }, MphStatus::Parse);
    assert!(last_error().contains("line 3"), "{}", last_error());

    let missing = CString::new("/nonexistent/file.mph").unwrap();
    assert_eq!(unsafe { mph_size_pair_load(missing.as_ptr(), &mut pair) }, MphStatus::Io);

    let cone = CString::new("cone").unwrap();
    assert_eq!(
        unsafe { mph_size_pair_from_shape(cone.as_ptr(), 0, ptr::null(), &mut pair) },
        MphStatus::InvalidArgument
    );

    let ellipse = shape("ellipse", 16);
    let (l, b) = ([1.0, -1.0], [0.0, 0.0]);
    let mut d = ptr::null_mut();
    let status = unsafe { mph_slice_diagram(ellipse, l.as_ptr(), b.as_ptr(), 2, 0, 2, &mut d) };
    assert_eq!(status, MphStatus::InvalidArgument);
    assert!(last_error().contains("non-positive"));
    let (l, b) = ([1.0, 1.0], [0.0, 0.0]);
    let status = unsafe { mph_slice_diagram(ellipse, l.as_ptr(), b.as_ptr(), 2, 0, 4, &mut d) };
    assert_eq!(status, MphStatus::InvalidArgument);
    assert!(d.is_null());

    let d = central_diagram(ellipse, 0);
    let (mut x, mut y, mut m) = (0.0, 0.0, 0);
    assert_eq!(unsafe { mph_diagram_point(d, 100, &mut x, &mut y, &mut m) }, MphStatus::InvalidArgument);
    assert_eq!(unsafe { mph_diagram_len(ptr::null(), &mut m) }, MphStatus::NullPointer);
    unsafe {
        mph_diagram_free(d);
        mph_size_pair_free(ellipse);
        mph_size_pair_free(ptr::null_mut());
        mph_diagram_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let root = env!("CARGO_MANIFEST_DIR");
    let header = std::fs::read_to_string(format!("{root}/include/mph.h")).unwrap();
    let source = std::fs::read_to_string(format!("{root}/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct MphSizePair MphSizePair;"));
    assert!(header.contains("MPH_STATUS_OK = 0"));
}
