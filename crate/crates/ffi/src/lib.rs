//! C ABI over `chimera-clique`.
//!
//! Graphs and embeddings are opaque heap handles released with their
//! `_free` function. Every call returns a [`CcStatus`]; on failure the
//! message is available from [`cc_last_error_message`] on the same thread.
//! Strings returned through out-parameters are owned by the caller and must
//! be released with [`cc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chimera_clique::dp::{best_native_clique, native_clique_embed};
use chimera_clique::embedding::{triangle_embedding, validate_embedding, NativeCliqueEmbedding};
use chimera_clique::topology::{ChimeraCoord, ChimeraShape, HardwareGraph};
use chimera_clique::Error;

/// Opaque defective Chimera graph.
pub struct CcGraph(HardwareGraph);

/// Opaque native clique embedding.
pub struct CcEmbedding(NativeCliqueEmbedding);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    Parse = 4,
    CapExceeded = 5,
    NonInduced = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// A qubit `(x, y, u, k)`, 1-indexed except for the orientation bit `u`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CcCoord {
    pub x: u32,
    pub y: u32,
    pub u: u32,
    pub k: u32,
}

impl From<ChimeraCoord> for CcCoord {
    fn from(q: ChimeraCoord) -> Self {
        CcCoord { x: q.x, y: q.y, u: q.u as u32, k: q.k }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> CcStatus {
    match e {
        Error::Json(_) | Error::MalformedEmbedding(_) | Error::MalformedBlock(_) | Error::MalformedWord(_) => {
            CcStatus::Parse
        }
        Error::CoordOutOfRange(_)
        | Error::ChainSizeOutOfRange { .. }
        | Error::LineOutOfBounds(_)
        | Error::BlockOutOfBounds(_)
        | Error::OffsetOverflow { .. } => CcStatus::OutOfRange,
        Error::CapExceeded { .. } => CcStatus::CapExceeded,
        Error::NonInduced(_) => CcStatus::NonInduced,
        _ => CcStatus::InvalidArgument,
    }
}

struct Fail(CcStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(CcStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CcStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            CcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<T>(p: *mut T, v: T, what: &str) -> Result<(), Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(v);
    Ok(())
}

unsafe fn input_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null("input string"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Fail(CcStatus::Parse, format!("input is not UTF-8: {e}")))
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("json has no nul bytes").into_raw()
}

fn coord(x: u32, y: u32, u: u32, k: u32) -> Result<ChimeraCoord, Fail> {
    match u {
        0 | 1 => Ok(ChimeraCoord::new(x, y, u as u8, k)),
        _ => Err(Fail(CcStatus::InvalidArgument, format!("orientation bit must be 0 or 1, got {u}"))),
    }
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Defect-free `C(m, n, l)`.
///
/// # Safety
/// `out_graph` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_new(m: u32, n: u32, l: u32, out_graph: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let g = HardwareGraph::build(ChimeraShape::new(m, n, l)?)?;
        out(out_graph, Box::into_raw(Box::new(CcGraph(g))), "out_graph")
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out_graph` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_from_json(json: *const c_char, out_graph: *mut *mut CcGraph) -> CcStatus {
    guard(|| {
        let g = HardwareGraph::from_json(input_str(json)?)?;
        out(out_graph, Box::into_raw(Box::new(CcGraph(g))), "out_graph")
    })
}

/// # Safety
/// `graph` must be a live handle; `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_to_json(graph: *const CcGraph, out_json: *mut *mut c_char) -> CcStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        out(out_json, owned_string(g.0.to_json()), "out_json")
    })
}

/// Marks qubit `(x, y, u, k)` dead.
///
/// # Safety
/// `graph` must be a live handle not shared with another thread during the call.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_kill_qubit(graph: *mut CcGraph, x: u32, y: u32, u: u32, k: u32) -> CcStatus {
    guard(|| {
        let g = graph.as_mut().ok_or_else(|| null("graph"))?;
        g.0 = g.0.without_qubits(&[coord(x, y, u, k)?])?;
        Ok(())
    })
}

/// Marks the coupler between `a` and `b` dead.
///
/// # Safety
/// `graph` must be a live handle not shared with another thread during the call.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_kill_coupler(graph: *mut CcGraph, a: CcCoord, b: CcCoord) -> CcStatus {
    guard(|| {
        let g = graph.as_mut().ok_or_else(|| null("graph"))?;
        let pair = (coord(a.x, a.y, a.u, a.k)?, coord(b.x, b.y, b.u, b.k)?);
        g.0 = g.0.apply_defects(&[], &[pair])?;
        Ok(())
    })
}

/// # Safety
/// `graph` must be a live handle; `out_count` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_live_qubit_count(graph: *const CcGraph, out_count: *mut usize) -> CcStatus {
    guard(|| out(out_count, deref(graph, "graph")?.0.live_qubit_count(), "out_count"))
}

/// # Safety
/// `graph` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_graph_free(graph: *mut CcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Largest native clique embedding with chains of `n + 1` qubits, or over
/// every chain length when `n` is 0.
///
/// # Safety
/// `graph` must be a live handle; `out_embedding` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embed(graph: *const CcGraph, n: u32, out_embedding: *mut *mut CcEmbedding) -> CcStatus {
    guard(|| {
        let g = &deref(graph, "graph")?.0;
        let e = if n == 0 { best_native_clique(g)? } else { native_clique_embed(g, n)? };
        out(out_embedding, Box::into_raw(Box::new(CcEmbedding(e))), "out_embedding")
    })
}

/// Triangle embedding of defect-free `C(m, m, l)`.
///
/// # Safety
/// `out_embedding` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_triangle(m: u32, l: u32, out_embedding: *mut *mut CcEmbedding) -> CcStatus {
    guard(|| {
        let e = triangle_embedding(ChimeraShape::new(m, m, l)?)?;
        out(out_embedding, Box::into_raw(Box::new(CcEmbedding(e))), "out_embedding")
    })
}

/// # Safety
/// `json` must be a nul-terminated string; `out_embedding` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_from_json(json: *const c_char, out_embedding: *mut *mut CcEmbedding) -> CcStatus {
    guard(|| {
        let e = NativeCliqueEmbedding::from_json(input_str(json)?)?;
        out(out_embedding, Box::into_raw(Box::new(CcEmbedding(e))), "out_embedding")
    })
}

/// # Safety
/// `embedding` must be a live handle; `out_json` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_to_json(embedding: *const CcEmbedding, out_json: *mut *mut c_char) -> CcStatus {
    guard(|| out(out_json, owned_string(deref(embedding, "embedding")?.0.to_json()), "out_json"))
}

/// Number of chains, i.e. the size of the embedded clique.
///
/// # Safety
/// `embedding` must be a live handle; `out_size` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_clique_size(embedding: *const CcEmbedding, out_size: *mut usize) -> CcStatus {
    guard(|| out(out_size, deref(embedding, "embedding")?.0.clique_size(), "out_size"))
}

/// Chain length parameter; every chain has `n + 1` qubits.
///
/// # Safety
/// `embedding` must be a live handle; `out_n` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_n(embedding: *const CcEmbedding, out_n: *mut u32) -> CcStatus {
    guard(|| out(out_n, deref(embedding, "embedding")?.0.n, "out_n"))
}

/// Copies chain `index` into `buf`. `out_len` always receives the chain
/// length; if `cap` is smaller the call fails with `BufferTooSmall` and
/// writes nothing to `buf`.
///
/// # Safety
/// `embedding` must be a live handle, `buf` valid for `cap` writes (or null
/// when `cap` is 0), and `out_len` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_chain(
    embedding: *const CcEmbedding,
    index: usize,
    buf: *mut CcCoord,
    cap: usize,
    out_len: *mut usize,
) -> CcStatus {
    guard(|| {
        let e = &deref(embedding, "embedding")?.0;
        let chain = e
            .ells()
            .nth(index)
            .ok_or_else(|| Fail(CcStatus::OutOfRange, format!("chain {index} out of range 0..{}", e.clique_size())))?;
        let qubits = chain.qubits();
        out(out_len, qubits.len(), "out_len")?;
        if cap < qubits.len() {
            return Err(Fail(
                CcStatus::BufferTooSmall,
                format!("chain has {} qubits, buffer holds {cap}", qubits.len()),
            ));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        for (i, q) in qubits.into_iter().enumerate() {
            buf.add(i).write(q.into());
        }
        Ok(())
    })
}

/// # Safety
/// `embedding` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cc_embedding_free(embedding: *mut CcEmbedding) {
    if !embedding.is_null() {
        drop(Box::from_raw(embedding));
    }
}

/// Checks `embedding` against `graph`. `out_violations` receives the number
/// of violations found, so 0 means valid. `out_report` may be null;
/// otherwise it receives the full report as JSON.
///
/// # Safety
/// Both handles must be live; `out_violations` must be valid for writes and
/// `out_report` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cc_validate(
    graph: *const CcGraph,
    embedding: *const CcEmbedding,
    out_violations: *mut usize,
    out_report: *mut *mut c_char,
) -> CcStatus {
    guard(|| {
        let report = validate_embedding(&deref(graph, "graph")?.0, &deref(embedding, "embedding")?.0);
        out(out_violations, report.violations.len(), "out_violations")?;
        if !out_report.is_null() {
            let json = serde_json::to_string(&report).expect("report serializes");
            out_report.write(owned_string(json));
        }
        Ok(())
    })
}
