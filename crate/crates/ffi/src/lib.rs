//! C interface to the `tifs` toolkit.
//!
//! Graphs and designated graphs cross the boundary as opaque handles that the
//! caller releases with the matching `*_free` function. Every fallible call
//! returns a [`TifsStatus`]; on failure [`tifs_last_error`] describes the cause
//! for the calling thread.
//!
//! Strings are returned by copying into a caller buffer. The required size,
//! including the terminating NUL, is always written to `needed`, so a call
//! with `len == 0` can be used to size the buffer.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tifs::construct::{self, DesignatedGraph, StateMultiset};
use tifs::graph::canonical_form;
use tifs::graph::format::{from_graph6, to_graph6};
use tifs::nclogic::{self, PartialAssignment};
use tifs::realize;
use tifs::ExclusivityGraph;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TifsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Construction = 4,
    BufferTooSmall = 5,
    Overflow = 6,
    Panic = 7,
}

/// Opaque graph on at most 64 vertices.
pub struct TifsGraph(ExclusivityGraph);

/// Opaque graph with a designated pair (A, B) or (A, C).
pub struct TifsDesignated(DesignatedGraph);

/// Kind of a designated pair.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TifsKind {
    None = 0,
    Tifs = 1,
    Tits = 2,
    TrueIffTrue = 3,
}

impl From<nclogic::Kind> for TifsKind {
    fn from(k: nclogic::Kind) -> Self {
        match k {
            nclogic::Kind::Tifs => TifsKind::Tifs,
            nclogic::Kind::Tits => TifsKind::Tits,
            nclogic::Kind::TrueIffTrue => TifsKind::TrueIffTrue,
            nclogic::Kind::None => TifsKind::None,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).unwrap_or_default());
}

fn fail(status: TifsStatus, msg: impl ToString) -> TifsStatus {
    set_error(msg.to_string());
    status
}

fn guard(f: impl FnOnce() -> TifsStatus) -> TifsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(TifsStatus::Ok) => {
            set_error("");
            TifsStatus::Ok
        }
        Ok(s) => s,
        Err(_) => fail(TifsStatus::Panic, "internal panic"),
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, TifsStatus> {
    p.as_ref().ok_or_else(|| fail(TifsStatus::NullPointer, "null pointer argument"))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, TifsStatus> {
    p.as_mut().ok_or_else(|| fail(TifsStatus::NullPointer, "null output pointer"))
}

unsafe fn copy_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> TifsStatus {
    let n = s.len() + 1;
    if let Some(w) = needed.as_mut() {
        *w = n;
    }
    if buf.is_null() || len < n {
        return fail(TifsStatus::BufferTooSmall, format!("buffer of {len} bytes, {n} needed"));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    TifsStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn tifs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tifs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Parses a graph6 string.
///
/// # Safety
/// `text` must be NUL-terminated; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_from_graph6(text: *const c_char, out_graph: *mut *mut TifsGraph) -> TifsStatus {
    guard(|| {
        let slot = tri!(out(out_graph));
        *slot = ptr::null_mut();
        if text.is_null() {
            return fail(TifsStatus::NullPointer, "null graph6 string");
        }
        let bytes = CStr::from_ptr(text).to_bytes();
        match from_graph6(bytes) {
            Ok(g) => {
                *slot = Box::into_raw(Box::new(TifsGraph(g)));
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::Parse, e),
        }
    })
}

/// Builds a graph from `edge_count` pairs stored flat in `edges`.
///
/// # Safety
/// `edges` must hold `2 * edge_count` entries; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out_graph: *mut *mut TifsGraph,
) -> TifsStatus {
    guard(|| {
        let slot = tri!(out(out_graph));
        *slot = ptr::null_mut();
        if edges.is_null() && edge_count > 0 {
            return fail(TifsStatus::NullPointer, "null edge array");
        }
        let flat = if edge_count == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = flat.chunks(2).map(|p| (p[0] as usize, p[1] as usize)).collect();
        match ExclusivityGraph::from_edges(n, &pairs) {
            Ok(g) => {
                *slot = Box::into_raw(Box::new(TifsGraph(g)));
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::InvalidArgument, e),
        }
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_free(g: *mut TifsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_order(g: *const TifsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_edge_count(g: *const TifsGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Adjacency row of `v` as a bit mask.
///
/// # Safety
/// `g` must be a live handle; `row` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_row(g: *const TifsGraph, v: usize, row: *mut u64) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        let row = tri!(out(row));
        if v >= g.0.n() {
            return fail(TifsStatus::InvalidArgument, format!("vertex {v} out of range"));
        }
        *row = g.0.neighbors(v);
        TifsStatus::Ok
    })
}

/// graph6 encoding of `g`.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_to_graph6(
    g: *const TifsGraph,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        copy_str(&to_graph6(&g.0), buf, len, needed)
    })
}

/// Canonical form of `g`: graph6 of the canonically relabelled graph.
/// Two graphs are isomorphic exactly when their forms are equal.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tifs_graph_canonical_form(
    g: *const TifsGraph,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        copy_str(canonical_form(&g.0).as_str(), buf, len, needed)
    })
}

/// Kind of the pair (a, b) in dimension `d`.
///
/// # Safety
/// `g` must be a live handle; `kind` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_classify_pair(
    g: *const TifsGraph,
    d: usize,
    a: usize,
    b: usize,
    kind: *mut TifsKind,
) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        let kind = tri!(out(kind));
        match nclogic::classify_pair(&g.0, d, a, b) {
            Ok(c) => {
                *kind = c.kind.into();
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::InvalidArgument, e),
        }
    })
}

/// Whether `g` passes the dimension-`d` pattern filters.
///
/// # Safety
/// `g` must be a live handle; `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_passes_filters(g: *const TifsGraph, d: usize, result: *mut bool) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        let result = tri!(out(result));
        if d == 0 {
            return fail(TifsStatus::InvalidArgument, "dimension must be positive");
        }
        *result = nclogic::passes_dimension_filters(&g.0, d);
        TifsStatus::Ok
    })
}

/// Number of valid truth assignments of `g` in dimension `d`.
///
/// # Safety
/// `g` must be a live handle; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_count_assignments(g: *const TifsGraph, d: usize, count: *mut u64) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        let count = tri!(out(count));
        match nclogic::count_assignments(&g.0, d, &PartialAssignment::new()) {
            Ok(c) => match u64::try_from(c) {
                Ok(c) => {
                    *count = c;
                    TifsStatus::Ok
                }
                Err(_) => fail(TifsStatus::Overflow, format!("{c} assignments")),
            },
            Err(e) => fail(TifsStatus::InvalidArgument, e),
        }
    })
}

/// Size of the constructive minimal TIFS family in dimension `d`.
///
/// # Safety
/// `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_count_minimal_tifs(d: usize, count: *mut u64) -> TifsStatus {
    guard(|| {
        let count = tri!(out(count));
        match construct::count_minimal_tifs(d) {
            Ok(c) => {
                *count = c;
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::InvalidArgument, e),
        }
    })
}

fn states(adj_a: usize, adj_b: usize, adj_both: usize) -> StateMultiset {
    StateMultiset::new(adj_a, adj_b, adj_both)
}

/// Minimal TIFS in dimension `d` whose d - 3 added vertices are adjacent to
/// A only (`adj_a`), B only (`adj_b`) or both (`adj_both`).
///
/// # Safety
/// `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_construct_minimal_tifs(
    d: usize,
    adj_a: usize,
    adj_b: usize,
    adj_both: usize,
    out_graph: *mut *mut TifsDesignated,
) -> TifsStatus {
    guard(|| {
        let slot = tri!(out(out_graph));
        *slot = ptr::null_mut();
        match construct::minimal_tifs(d, &states(adj_a, adj_b, adj_both)) {
            Ok(t) => {
                *slot = Box::into_raw(Box::new(TifsDesignated(t)));
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::Construction, e),
        }
    })
}

/// TITS obtained from a minimal TIFS.
///
/// # Safety
/// `src` must be a live handle; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_construct_tits(
    src: *const TifsDesignated,
    out_graph: *mut *mut TifsDesignated,
) -> TifsStatus {
    guard(|| {
        let src = tri!(deref(src));
        let slot = tri!(out(out_graph));
        *slot = ptr::null_mut();
        match construct::tits_from_tifs(&src.0) {
            Ok(t) => {
                *slot = Box::into_raw(Box::new(TifsDesignated(t)));
                TifsStatus::Ok
            }
            Err(e) => fail(TifsStatus::Construction, e),
        }
    })
}

/// Releases a designated graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn tifs_designated_free(g: *mut TifsDesignated) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Dimension, designated vertices and kind.
///
/// # Safety
/// `g` must be a live handle; each output may be null to skip it.
#[no_mangle]
pub unsafe extern "C" fn tifs_designated_info(
    g: *const TifsDesignated,
    d: *mut usize,
    a: *mut usize,
    b_or_c: *mut usize,
    kind: *mut TifsKind,
) -> TifsStatus {
    guard(|| {
        let g = &tri!(deref(g)).0;
        if let Some(d) = d.as_mut() {
            *d = g.d;
        }
        if let Some(a) = a.as_mut() {
            *a = g.a;
        }
        if let Some(b) = b_or_c.as_mut() {
            *b = g.b_or_c;
        }
        if let Some(k) = kind.as_mut() {
            *k = g.kind.into();
        }
        TifsStatus::Ok
    })
}

/// Copy of the underlying graph as a new handle.
///
/// # Safety
/// `g` must be a live handle; `out_graph` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_designated_graph(
    g: *const TifsDesignated,
    out_graph: *mut *mut TifsGraph,
) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        let slot = tri!(out(out_graph));
        *slot = Box::into_raw(Box::new(TifsGraph(g.0.graph.clone())));
        TifsStatus::Ok
    })
}

/// JSON certificate of the designated pair.
///
/// # Safety
/// `g` must be a live handle; `buf` must hold `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn tifs_designated_certificate(
    g: *const TifsDesignated,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> TifsStatus {
    guard(|| {
        let g = tri!(deref(g));
        match g.0.certificate() {
            Ok(c) => copy_str(&c.to_json(), buf, len, needed),
            Err(e) => fail(TifsStatus::InvalidArgument, e),
        }
    })
}

/// Unit vectors realizing the minimal TIFS for the given states, written
/// row-major into `vectors` (`count * d` doubles). `count` receives the
/// number of vectors, which is d + 5.
///
/// # Safety
/// `vectors` must hold `capacity` doubles; `count` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tifs_realize_minimal_tifs(
    d: usize,
    adj_a: usize,
    adj_b: usize,
    adj_both: usize,
    epsilon: f64,
    vectors: *mut f64,
    capacity: usize,
    count: *mut usize,
) -> TifsStatus {
    guard(|| {
        let count = tri!(out(count));
        let r = match realize::build_minimal_tifs_realization(d, &states(adj_a, adj_b, adj_both), epsilon) {
            Ok(r) => r,
            Err(e) => return fail(TifsStatus::Construction, e),
        };
        *count = r.vectors.len();
        let total = r.vectors.len() * d;
        if vectors.is_null() || capacity < total {
            return fail(TifsStatus::BufferTooSmall, format!("{total} doubles needed"));
        }
        for (i, x) in r.vectors.iter().flatten().enumerate() {
            *vectors.add(i) = *x;
        }
        TifsStatus::Ok
    })
}
