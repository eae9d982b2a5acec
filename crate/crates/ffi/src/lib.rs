//! C ABI over `mixedwalk`.
//!
//! Graphs are opaque handles created by `mw_graph_*` constructors and released
//! with [`mw_graph_free`]. Every fallible call returns an [`MwStatus`]; on
//! failure [`mw_last_error`] describes the problem for the calling thread.
//! Strings returned by the library are freed with [`mw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mixedwalk::graph::{build_cycle, build_path, undirected_path, MixedGraph, Orientation};
use mixedwalk::linalg::{charpoly, determinant};
use mixedwalk::periodicity::{period_of, CrossCheck, Method, PeriodOptions, PERIOD_TOL};
use mixedwalk::spectra::{h_eta, Angle};
use mixedwalk::switching::classify_cycle;
use mixedwalk::Error;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MwStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Contract = 3,
    Internal = 4,
    Parse = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MwAngleKind {
    Rational = 0,
    Real = 1,
}

/// `pπ/q` when `kind` is `Rational`, otherwise `radians`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MwAngle {
    pub kind: MwAngleKind,
    pub p: i64,
    pub q: i64,
    pub radians: f64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MwMethod {
    ClosedFormPath = 0,
    ClosedFormCycle = 1,
    BruteForce = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MwCrossCheck {
    Agree = 0,
    Disagree = 1,
    NotRun = 2,
}

/// `period` is 0 when `periodic` is false.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MwPeriodReport {
    pub periodic: bool,
    pub period: u64,
    pub method: MwMethod,
    pub cap_used: u64,
    pub cross_check: MwCrossCheck,
    pub residual: f64,
}

/// Opaque mixed graph.
pub struct MwGraph {
    inner: MixedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MwStatus {
    match e {
        Error::Internal(_) => MwStatus::Internal,
        Error::ContractViolation(_) => MwStatus::Contract,
        Error::Usage(_) | Error::Json(_) => MwStatus::Parse,
        _ => MwStatus::Domain,
    }
}

struct Fail(MwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> MwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MwStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside mixedwalk".into());
            MwStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(MwStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const MwGraph) -> Result<&'a MixedGraph, Fail> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn out_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(MwStatus::Parse, format!("{what} is not UTF-8")))
}

fn angle(a: MwAngle) -> Result<Angle, Fail> {
    Ok(match a.kind {
        MwAngleKind::Rational => Angle::rational(a.p, a.q)?,
        MwAngleKind::Real => Angle::real(a.radians)?,
    })
}

fn store_graph(out: *mut *mut MwGraph, g: MixedGraph) -> Result<(), Fail> {
    let slot = unsafe { out_mut(out, "out")? };
    *slot = Box::into_raw(Box::new(MwGraph { inner: g }));
    Ok(())
}

fn fill(out: *mut f64, len: usize, values: &[f64]) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    if len < values.len() {
        return Err(Fail(
            MwStatus::BufferTooSmall,
            format!("buffer holds {len} doubles, need {}", values.len()),
        ));
    }
    unsafe { ptr::copy_nonoverlapping(values.as_ptr(), out, values.len()) };
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses `pi*p/q`, `pi/q`, `pi` or decimal radians.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_angle_parse(text: *const c_char, out: *mut MwAngle) -> MwStatus {
    guard(|| {
        let a = Angle::parse(read_str(text, "text")?)?;
        *out_mut(out, "out")? = match a {
            Angle::Rational(r) => MwAngle {
                kind: MwAngleKind::Rational,
                p: r.p() as i64,
                q: r.q() as i64,
                radians: r.to_radians(),
            },
            Angle::Real { radians } => MwAngle {
                kind: MwAngleKind::Real,
                p: 0,
                q: 0,
                radians,
            },
        };
        Ok(())
    })
}

/// `C_n^j`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_cycle(n: usize, j: usize, out: *mut *mut MwGraph) -> MwStatus {
    guard(|| store_graph(out, build_cycle(n, j)?))
}

/// Mixed path on `n` vertices. `orient` holds `n - 1` symbols from `f`, `b`,
/// `d` (also `>`, `<`, `-`); null means all digons.
///
/// # Safety
/// `orient` must be null or nul-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_path(n: usize, orient: *const c_char, out: *mut *mut MwGraph) -> MwStatus {
    guard(|| {
        let g = if orient.is_null() {
            undirected_path(n)?
        } else {
            let steps = read_str(orient, "orient")?
                .chars()
                .map(|c| {
                    Orientation::from_symbol(c)
                        .ok_or_else(|| Fail(MwStatus::Parse, format!("bad orientation symbol {c:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            build_path(n, &steps)?
        };
        store_graph(out, g)
    })
}

/// Graph from its JSON form `{"n": .., "arcs": [[x, y], ..], "edges": [[x, y], ..]}`.
///
/// # Safety
/// `json` must be nul-terminated; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_from_json(json: *const c_char, out: *mut *mut MwGraph) -> MwStatus {
    guard(|| store_graph(out, MixedGraph::from_json_str(read_str(json, "json")?)?))
}

/// JSON form of a graph; release with [`mw_string_free`].
///
/// # Safety
/// `graph` must come from this library; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_to_json(graph: *const MwGraph, out: *mut *mut c_char) -> MwStatus {
    guard(|| {
        let text = serde_json::to_string(&graph_ref(graph)?.to_json()).map_err(Error::from)?;
        *out_mut(out, "out")? = CString::new(text).expect("json has no nul").into_raw();
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or come from this library, and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_free(graph: *mut MwGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_vertex_count(graph: *const MwGraph, out: *mut usize) -> MwStatus {
    guard(|| {
        *out_mut(out, "out")? = graph_ref(graph)?.n_vertices();
        Ok(())
    })
}

/// Girth of the underlying graph; 0 for forests.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_graph_girth(graph: *const MwGraph, out: *mut usize) -> MwStatus {
    guard(|| {
        *out_mut(out, "out")? = graph_ref(graph)?.girth().unwrap_or(0);
        Ok(())
    })
}

/// Writes `H_η` row-major as interleaved `(re, im)`: `2n²` doubles.
///
/// # Safety
/// `out` must point to at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mw_h_eta(graph: *const MwGraph, eta: MwAngle, out: *mut f64, len: usize) -> MwStatus {
    guard(|| {
        let h = h_eta(graph_ref(graph)?, angle(eta)?);
        let flat: Vec<f64> = h.as_slice().iter().flat_map(|z| [z.re, z.im]).collect();
        fill(out, len, &flat)
    })
}

/// `det H_η` as `(re, im)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_determinant(
    graph: *const MwGraph,
    eta: MwAngle,
    out_re: *mut f64,
    out_im: *mut f64,
) -> MwStatus {
    guard(|| {
        let d = determinant(&h_eta(graph_ref(graph)?, angle(eta)?))?;
        *out_mut(out_re, "out_re")? = d.re;
        *out_mut(out_im, "out_im")? = d.im;
        Ok(())
    })
}

/// Characteristic polynomial coefficients, constant term first, as
/// interleaved `(re, im)`: `2(n + 1)` doubles.
///
/// # Safety
/// `out` must point to at least `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn mw_charpoly(graph: *const MwGraph, eta: MwAngle, out: *mut f64, len: usize) -> MwStatus {
    guard(|| {
        let p = charpoly(&h_eta(graph_ref(graph)?, angle(eta)?))?;
        let flat: Vec<f64> = p.coeffs().iter().flat_map(|z| [z.re, z.im]).collect();
        fill(out, len, &flat)
    })
}

/// Type `j` with the graph switching equivalent to `C_n^j`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_classify_cycle(graph: *const MwGraph, out_j: *mut usize) -> MwStatus {
    guard(|| {
        *out_mut(out_j, "out_j")? = classify_cycle(graph_ref(graph)?)?;
        Ok(())
    })
}

/// Walk period. `cap = 0` and `tol <= 0` select the defaults.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn mw_period(
    graph: *const MwGraph,
    eta: MwAngle,
    cap: u64,
    tol: f64,
    out: *mut MwPeriodReport,
) -> MwStatus {
    guard(|| {
        let options = PeriodOptions {
            cap: (cap > 0).then_some(cap),
            tol: if tol > 0.0 { tol } else { PERIOD_TOL },
        };
        let rep = period_of(graph_ref(graph)?, angle(eta)?, options)?;
        *out_mut(out, "out")? = MwPeriodReport {
            periodic: rep.periodic,
            period: rep.period.unwrap_or(0),
            method: match rep.method {
                Method::ClosedFormPath => MwMethod::ClosedFormPath,
                Method::ClosedFormCycle => MwMethod::ClosedFormCycle,
                Method::BruteForce => MwMethod::BruteForce,
            },
            cap_used: rep.cap_used,
            cross_check: match rep.cross_check {
                CrossCheck::Agree => MwCrossCheck::Agree,
                CrossCheck::Disagree => MwCrossCheck::Disagree,
                CrossCheck::NotRun => MwCrossCheck::NotRun,
            },
            residual: rep.residual,
        };
        Ok(())
    })
}
