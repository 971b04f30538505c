//! C ABI over `dualgain`.
//!
//! Graphs are opaque `DgGraph` handles released with `dg_graph_free`. Every
//! fallible call returns a `DgStatus`; on failure a message is available
//! from `dg_last_error_message` on the same thread. Panics never cross the
//! boundary: they surface as `DG_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dualgain::graph::{AnyGainGraph, BALANCE_TOL};
use dualgain::io::{generate, parse, serialize, Family};
use dualgain::linalg::{moore_determinant, EigenOptions};
use dualgain::spectra::{adjacency_matrix, cycle_spectrum_closed_form, radius_report, spectrum, MatrixKind};
use dualgain::{with_gain_graph, DualNumber, DualScalar, Error, Ring};

/// Opaque gain graph.
pub struct DgGraph(AnyGainGraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    NotUnit = 4,
    BadParameter = 5,
    SizeCap = 6,
    BufferTooSmall = 7,
    Computation = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgRing {
    Real = 0,
    Complex = 1,
    Quaternion = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DgMatrix {
    Adjacency = 0,
    Laplacian = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DgDualNumber {
    pub std: f64,
    pub dual: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DgRadiusReport {
    pub rho_graph: f64,
    pub rho_gain: DgDualNumber,
    pub delta_bound: f64,
    pub bound_holds: bool,
    pub equality: bool,
    pub connected: bool,
    pub balanced: bool,
    pub antibalanced: bool,
    /// 1 or 0 for a connected graph, -1 when disconnected.
    pub predicted_equality: i32,
    pub consistent: bool,
}

impl From<DualNumber> for DgDualNumber {
    fn from(d: DualNumber) -> Self {
        DgDualNumber {
            std: d.std,
            dual: d.dual,
        }
    }
}

impl From<DgMatrix> for MatrixKind {
    fn from(m: DgMatrix) -> Self {
        match m {
            DgMatrix::Adjacency => MatrixKind::Adjacency,
            DgMatrix::Laplacian => MatrixKind::Laplacian,
        }
    }
}

impl From<DgRing> for Ring {
    fn from(r: DgRing) -> Self {
        match r {
            DgRing::Real => Ring::Real,
            DgRing::Complex => Ring::Complex,
            DgRing::Quaternion => Ring::Quaternion,
        }
    }
}

impl From<Ring> for DgRing {
    fn from(r: Ring) -> Self {
        match r {
            Ring::Real => DgRing::Real,
            Ring::Complex => DgRing::Complex,
            Ring::Quaternion => DgRing::Quaternion,
        }
    }
}

fn status_of(e: &Error) -> DgStatus {
    match e {
        Error::Syntax { .. } | Error::BadRing(_) => DgStatus::Syntax,
        Error::NotUnit | Error::NotUnitGain { .. } => DgStatus::NotUnit,
        Error::SizeCapExceeded { .. } => DgStatus::SizeCap,
        Error::BadParameter(_)
        | Error::DuplicateEdge { .. }
        | Error::SelfLoop(_)
        | Error::VertexOutOfRange { .. }
        | Error::RingMismatch { .. } => DgStatus::BadParameter,
        _ => DgStatus::Computation,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<(), (DgStatus, String)>) -> DgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            DgStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (DgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (DgStatus, String) {
    (DgStatus::NullPointer, format!("`{name}` is null"))
}

unsafe fn graph_ref<'a>(g: *const DgGraph) -> Result<&'a AnyGainGraph, (DgStatus, String)> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn str_arg<'a>(s: *const c_char, name: &str) -> Result<&'a str, (DgStatus, String)> {
    if s.is_null() {
        return Err(null(name));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (DgStatus::InvalidUtf8, format!("`{name}` is not UTF-8")))
}

/// Copies `values` into `out[..cap]` and stores the count in `len`.
unsafe fn write_values(
    values: &[DualNumber],
    out: *mut DgDualNumber,
    cap: usize,
    len: *mut usize,
) -> Result<(), (DgStatus, String)> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = values.len();
    if cap < values.len() {
        return Err((
            DgStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", values.len()),
        ));
    }
    if values.is_empty() {
        return Ok(());
    }
    if out.is_null() {
        return Err(null("out"));
    }
    for (k, &v) in values.iter().enumerate() {
        *out.add(k) = v.into();
    }
    Ok(())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a graph document; unit checks use `tol`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_parse(text: *const c_char, tol: f64, out: *mut *mut DgGraph) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = parse(str_arg(text, "text")?, tol).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DgGraph(g)));
        Ok(())
    })
}

/// Seeded `G(n, p)` with random unit gains.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_random(
    n: usize,
    p: f64,
    seed: u64,
    ring: DgRing,
    out: *mut *mut DgGraph,
) -> DgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let family = Family::Random {
            n,
            p,
            seed,
            ring: ring.into(),
        };
        let g = generate(&family, dualgain::DEFAULT_TOL).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(DgGraph(g)));
        Ok(())
    })
}

/// Releases a graph; NULL is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_free(g: *mut DgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_vertex_count(g: *const DgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count; 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_edge_count(g: *const DgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.graph().m())
}

/// Base ring of the gains.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_ring(g: *const DgGraph, out: *mut DgRing) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = g.ring().into();
        Ok(())
    })
}

/// Serializes a graph; free the string with `dg_string_free`.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_graph_to_json(g: *const DgGraph, out: *mut *mut c_char) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CString::new(serialize(g)).expect("JSON has no NUL");
        *out = s.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library; NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn dg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dual eigenvalues, descending. `*len` receives the vertex count even when
/// `cap` is too small.
///
/// # Safety
/// `g` must be live, `out` must hold `cap` values, `len` must be valid.
#[no_mangle]
pub unsafe extern "C" fn dg_spectrum(
    g: *const DgGraph,
    matrix: DgMatrix,
    out: *mut DgDualNumber,
    cap: usize,
    len: *mut usize,
) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let s = with_gain_graph!(g, |g| spectrum(g, matrix.into(), &EigenOptions::default())).map_err(lib_err)?;
        write_values(&s.values, out, cap, len)
    })
}

/// Whether the graph is balanced at `tol` (0 selects the default).
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_is_balanced(g: *const DgGraph, tol: f64, out: *mut bool) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let tol = if tol > 0.0 { tol } else { BALANCE_TOL };
        *out = with_gain_graph!(g, |g| g.is_balanced(tol));
        Ok(())
    })
}

/// Spectral radius against the underlying-graph bound.
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_radius(g: *const DgGraph, matrix: DgMatrix, out: *mut DgRadiusReport) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = with_gain_graph!(g, |g| radius_report(g, matrix.into(), &EigenOptions::default())).map_err(lib_err)?;
        *out = DgRadiusReport {
            rho_graph: r.rho_graph,
            rho_gain: r.rho_gain.into(),
            delta_bound: r.delta_bound,
            bound_holds: r.bound_holds,
            equality: r.equality,
            connected: r.connected,
            balanced: r.balanced,
            antibalanced: r.antibalanced,
            predicted_equality: r.predicted_equality.map_or(-1, i32::from),
            consistent: r.consistent,
        };
        Ok(())
    })
}

/// Moore determinant of the adjacency matrix (real for Hermitian input).
///
/// # Safety
/// `g` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn dg_mdet(g: *const DgGraph, out: *mut DgDualNumber) -> DgStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = with_gain_graph!(g, |g| moore_determinant(&adjacency_matrix(g), dualgain::DEFAULT_TOL)
            .map(|d| d.real_part()))
        .map_err(lib_err)?;
        *out = d.into();
        Ok(())
    })
}

/// Closed-form spectrum of `C_n` whose cycle gain is written as text,
/// e.g. `(0.6+0.8i) + (-0.8+0.6i)eps`.
///
/// # Safety
/// `gain` must be NUL-terminated, `out` must hold `cap` values, `len` must
/// be valid.
#[no_mangle]
pub unsafe extern "C" fn dg_cycle_spectrum(
    n: usize,
    gain: *const c_char,
    matrix: DgMatrix,
    out: *mut DgDualNumber,
    cap: usize,
    len: *mut usize,
) -> DgStatus {
    guard(|| {
        let q: DualScalar = str_arg(gain, "gain")?.parse().map_err(lib_err)?;
        let tol = 1e-9;
        let kind = matrix.into();
        let s = match q {
            DualScalar::Real(q) => cycle_spectrum_closed_form(n, q, kind, tol),
            DualScalar::Complex(q) => cycle_spectrum_closed_form(n, q, kind, tol),
            DualScalar::Quaternion(q) => cycle_spectrum_closed_form(n, q, kind, tol),
        }
        .map_err(lib_err)?;
        write_values(&s.values, out, cap, len)
    })
}
