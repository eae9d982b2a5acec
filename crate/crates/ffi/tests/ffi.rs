use std::ffi::{CStr, CString};
use std::ptr;

use mixedwalk_ffi::*;

fn rational(p: i64, q: i64) -> MwAngle {
    MwAngle {
        kind: MwAngleKind::Rational,
        p,
        q,
        radians: 0.0,
    }
}

fn last_error() -> String {
    let p = mw_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn cycle(n: usize, j: usize) -> *mut MwGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mw_graph_cycle(n, j, &mut g) }, MwStatus::Ok);
    g
}

#[test]
fn determinant_table() {
    for (j, want) in [0.0, 2.0, 4.0, 2.0, 0.0].into_iter().enumerate() {
        let g = cycle(4, j);
        let (mut re, mut im) = (f64::NAN, f64::NAN);
        assert_eq!(unsafe { mw_determinant(g, rational(1, 2), &mut re, &mut im) }, MwStatus::Ok);
        assert!((re - want).abs() < 1e-9 && im.abs() < 1e-9);
        unsafe { mw_graph_free(g) };
    }
}

#[test]
fn period_report() {
    let g = cycle(4, 1);
    let mut rep = std::mem::MaybeUninit::<MwPeriodReport>::uninit();
    assert_eq!(unsafe { mw_period(g, rational(1, 2), 0, 0.0, rep.as_mut_ptr()) }, MwStatus::Ok);
    let rep = unsafe { rep.assume_init() };
    assert!(rep.periodic);
    assert_eq!(rep.period, 16);
    assert_eq!(rep.method, MwMethod::ClosedFormCycle);
    assert_eq!(rep.cross_check, MwCrossCheck::Agree);
    unsafe { mw_graph_free(g) };
}

#[test]
fn path_and_json_round_trip() {
    let orient = CString::new("fbd").unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mw_graph_path(4, orient.as_ptr(), &mut g) }, MwStatus::Ok);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { mw_graph_to_json(g, &mut text) }, MwStatus::Ok);
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { mw_graph_from_json(text, &mut h) }, MwStatus::Ok);
    let mut n = 0;
    assert_eq!(unsafe { mw_graph_vertex_count(h, &mut n) }, MwStatus::Ok);
    assert_eq!(n, 4);
    let mut girth = 99;
    assert_eq!(unsafe { mw_graph_girth(h, &mut girth) }, MwStatus::Ok);
    assert_eq!(girth, 0);
    let (mut a, mut b) = ([0.0; 10], [0.0; 10]);
    let eta = rational(1, 3);
    assert_eq!(unsafe { mw_charpoly(g, eta, a.as_mut_ptr(), a.len()) }, MwStatus::Ok);
    assert_eq!(unsafe { mw_charpoly(h, eta, b.as_mut_ptr(), b.len()) }, MwStatus::Ok);
    assert_eq!(a, b);
    unsafe {
        mw_string_free(text);
        mw_graph_free(g);
        mw_graph_free(h);
    }
}

#[test]
fn h_eta_buffer_and_entries() {
    let g = cycle(3, 1);
    let mut small = [0.0; 17];
    assert_eq!(
        unsafe { mw_h_eta(g, rational(1, 2), small.as_mut_ptr(), small.len()) },
        MwStatus::BufferTooSmall
    );
    assert!(last_error().contains("need 18"));
    let mut buf = [0.0; 18];
    assert_eq!(unsafe { mw_h_eta(g, rational(1, 2), buf.as_mut_ptr(), buf.len()) }, MwStatus::Ok);
    // (0,1) is the forward arc: e^{iπ/2} = i
    assert!(buf[2].abs() < 1e-15 && (buf[3] - 1.0).abs() < 1e-15);
    assert!(buf[6].abs() < 1e-15 && (buf[7] + 1.0).abs() < 1e-15);
    let mut j = 0;
    assert_eq!(unsafe { mw_classify_cycle(g, &mut j) }, MwStatus::Ok);
    assert_eq!(j, 1);
    unsafe { mw_graph_free(g) };
}

#[test]
fn error_codes() {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mw_graph_cycle(2, 0, &mut g) }, MwStatus::Domain);
    assert!(g.is_null());
    assert!(last_error().contains("at least 3"));
    assert_eq!(unsafe { mw_graph_cycle(3, 0, ptr::null_mut()) }, MwStatus::NullPointer);
    let mut n = 0;
    assert_eq!(unsafe { mw_graph_vertex_count(ptr::null(), &mut n) }, MwStatus::NullPointer);
    let bad = CString::new("{\"n\": 2, \"arcs\": [[0, 5]]}").unwrap();
    assert_eq!(unsafe { mw_graph_from_json(bad.as_ptr(), &mut g) }, MwStatus::Domain);
    let garbage = CString::new("not json").unwrap();
    assert_eq!(unsafe { mw_graph_from_json(garbage.as_ptr(), &mut g) }, MwStatus::Parse);
    let mut a = rational(0, 1);
    let text = CString::new("pi*1/0").unwrap();
    assert_eq!(unsafe { mw_angle_parse(text.as_ptr(), &mut a) }, MwStatus::Parse);
    let text = CString::new("pi*5/2").unwrap();
    assert_eq!(unsafe { mw_angle_parse(text.as_ptr(), &mut a) }, MwStatus::Ok);
    assert_eq!((a.kind, a.p, a.q), (MwAngleKind::Rational, 1, 2));
    let h = cycle(4, 0);
    assert_eq!(unsafe { mw_determinant(h, rational(1, 0), &mut 0.0, &mut 0.0) }, MwStatus::Domain);
    unsafe {
        mw_graph_free(h);
        mw_graph_free(ptr::null_mut());
        mw_string_free(ptr::null_mut());
    }
}
