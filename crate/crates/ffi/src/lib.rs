//! C ABI for the `tokensign` signed-graph library.
//!
//! The interface follows the usual conventions for C bindings to Rust
//! libraries:
//!
//! * Graphs are held behind the opaque handle [`TsGraph`]; callers only ever
//!   see `TsGraph*`. Every handle returned through an out-parameter must be
//!   released with [`ts_graph_free`].
//! * Fallible calls return a [`TsStatus`] code and write their result through
//!   an out-parameter, which is left untouched on failure. A human-readable
//!   message for the most recent failure on the current thread is available
//!   via [`ts_last_error_message`].
//! * Strings returned through `char**` out-parameters are NUL-terminated,
//!   UTF-8, owned by the caller, and must be released with
//!   [`ts_string_free`].
//! * Vertices are numbered `1..=n`, matching the text edge-list format.
//!
//! All entry points catch panics at the boundary and convert them into
//! [`TsStatus::Internal`], so no unwinding ever crosses the ABI.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tokensign::equivalence::{self, EquivalenceError};
use tokensign::graph::{GraphError, SignedGraph, SwitchingVector};
use tokensign::measures::{self, MeasureError};
use tokensign::token::{self, TokenError};

/// Opaque handle to a signed graph.
pub struct TsGraph(SignedGraph);

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    /// Success.
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input text could not be parsed as a signed graph.
    Parse = 3,
    /// An argument was out of range or otherwise invalid.
    InvalidArgument = 4,
    /// The operation is only defined for balanced graphs.
    NotBalanced = 5,
    /// The instance exceeds a size guard of the underlying algorithm.
    TooLarge = 6,
    /// An internal invariant failed; this is a bug in the library.
    Internal = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let stored = CString::new(message)
        .unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn fail(status: TsStatus, message: String) -> TsStatus {
    set_last_error(message);
    status
}

fn graph_status(err: &GraphError) -> TsStatus {
    match err {
        GraphError::NotBalanced => TsStatus::NotBalanced,
        GraphError::DuplicateEdge { .. }
        | GraphError::LoopEdge { .. }
        | GraphError::VertexOutOfRange { .. }
        | GraphError::SizeMismatch { .. }
        | GraphError::NTooSmall { .. }
        | GraphError::UnsupportedOrder { .. }
        | GraphError::UnknownFamily(_) => TsStatus::InvalidArgument,
        GraphError::BadSignToken { .. } | GraphError::HeaderMismatch(_) => TsStatus::Parse,
    }
}

fn token_status(err: &TokenError) -> TsStatus {
    match err {
        TokenError::KOutOfRange { .. } => TsStatus::InvalidArgument,
        TokenError::SizeCapExceeded { .. } => TsStatus::TooLarge,
        TokenError::NotBalanced => TsStatus::NotBalanced,
    }
}

fn measure_status(err: &MeasureError) -> TsStatus {
    match err {
        MeasureError::TooLarge { .. } => TsStatus::TooLarge,
        MeasureError::Token(inner) => token_status(inner),
    }
}

fn equivalence_status(err: &EquivalenceError) -> TsStatus {
    match err {
        EquivalenceError::TooLarge { .. } => TsStatus::TooLarge,
        EquivalenceError::UnderlyingMismatch => TsStatus::InvalidArgument,
        EquivalenceError::Measure(inner) => measure_status(inner),
    }
}

/// Runs `f` with panics converted to `TsStatus::Internal`.
fn guarded(f: impl FnOnce() -> TsStatus) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(TsStatus::Internal, "internal panic".to_string()),
    }
}

/// # Safety
/// `ptr` must be NULL or a pointer obtained from this library that is still
/// live; the returned reference is used only within the current call.
unsafe fn graph_ref<'a>(ptr: *const TsGraph) -> Option<&'a SignedGraph> {
    unsafe { ptr.as_ref().map(|handle| &handle.0) }
}

/// # Safety
/// `out` must be NULL or valid for a single pointer write.
unsafe fn write_graph(graph: SignedGraph, out: *mut *mut TsGraph) -> TsStatus {
    if out.is_null() {
        return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
    }
    unsafe { out.write(Box::into_raw(Box::new(TsGraph(graph)))) };
    TsStatus::Ok
}

/// # Safety
/// `out` must be NULL or valid for a single pointer write.
unsafe fn write_string(text: String, out: *mut *mut c_char) -> TsStatus {
    if out.is_null() {
        return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
    }
    match CString::new(text) {
        Ok(owned) => {
            unsafe { out.write(owned.into_raw()) };
            TsStatus::Ok
        }
        Err(_) => fail(TsStatus::Internal, "string contained NUL".to_string()),
    }
}

/// # Safety
/// `text` must be NULL or a NUL-terminated string valid for reads.
unsafe fn utf8_arg<'a>(text: *const c_char, what: &str) -> Result<&'a str, TsStatus> {
    if text.is_null() {
        return Err(fail(TsStatus::NullArgument, format!("{what} is NULL")));
    }
    unsafe { CStr::from_ptr(text) }
        .to_str()
        .map_err(|_| fail(TsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

/// Returns the library version as a static NUL-terminated string.
///
/// The pointer is valid for the lifetime of the program and must not be
/// freed.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Returns the message of the most recent failure on the calling thread, or
/// NULL if no failure has occurred.
///
/// The pointer is owned by the library and remains valid until the next
/// failing call on the same thread; it must not be freed.
#[no_mangle]
pub extern "C" fn ts_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |msg| msg.as_ptr())
    })
}

/// Frees a string returned through a `char**` out-parameter.
///
/// # Safety
/// `text` must be NULL or a pointer previously returned by this library
/// through a `char**` out-parameter, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Frees a graph handle.
///
/// # Safety
/// `graph` must be NULL or a pointer previously returned by this library
/// through a `TsGraph**` out-parameter, and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_free(graph: *mut TsGraph) {
    if !graph.is_null() {
        drop(unsafe { Box::from_raw(graph) });
    }
}

/// Parses a signed graph from edge-list text.
///
/// The format is the same one the CLI reads: an optional `n m` header,
/// `# comment` lines, and one `u v sign` line per edge with sign `+`, `-`,
/// `+1`, or `-1`.
///
/// # Safety
/// `text` must be a NUL-terminated string valid for reads, and `out` must be
/// valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_parse(text: *const c_char, out: *mut *mut TsGraph) -> TsStatus {
    guarded(|| {
        let text = match unsafe { utf8_arg(text, "text") } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match SignedGraph::parse(text) {
            Ok(graph) => unsafe { write_graph(graph, out) },
            Err(err) => fail(graph_status(&err), err.to_string()),
        }
    })
}

/// Builds a named signed-graph family member on `n` vertices.
///
/// Recognized names: `Cn_minus`, `all_neg_Cn`, `Kn_minus`, `all_neg_Kn`,
/// `neg_Kn_plus`, and `petersen` (which requires `n == 10`).
///
/// # Safety
/// `name` must be a NUL-terminated string valid for reads, and `out` must be
/// valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_family(
    name: *const c_char,
    n: usize,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let name = match unsafe { utf8_arg(name, "name") } {
            Ok(name) => name,
            Err(status) => return status,
        };
        let family = match tokensign::graph::Family::parse(name) {
            Ok(family) => family,
            Err(err) => return fail(TsStatus::InvalidArgument, err.to_string()),
        };
        match SignedGraph::family(family, n) {
            Ok(graph) => unsafe { write_graph(graph, out) },
            Err(err) => fail(graph_status(&err), err.to_string()),
        }
    })
}

/// Replaces the signature of `graph`: bit `j` of `mask` set makes edge `j`
/// (in the graph's stored edge order) negative, all other edges positive.
///
/// Fails with `TS_STATUS_INVALID_ARGUMENT` if `mask` has bits at or above the
/// edge count.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_with_sign_mask(
    graph: *const TsGraph,
    mask: u64,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if g.m() < 64 && mask >> g.m() != 0 {
            return fail(
                TsStatus::InvalidArgument,
                format!("mask {mask:#b} has bits beyond the {} edges", g.m()),
            );
        }
        unsafe { write_graph(g.with_sign_mask(mask), out) }
    })
}

/// Number of vertices, or 0 if `graph` is NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_order(graph: *const TsGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, SignedGraph::n)
}

/// Number of edges, or 0 if `graph` is NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_size(graph: *const TsGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, SignedGraph::m)
}

/// Number of positive edges, or 0 if `graph` is NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_positive_edges(graph: *const TsGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, SignedGraph::m_pos)
}

/// Number of negative edges, or 0 if `graph` is NULL.
///
/// # Safety
/// `graph` must be NULL or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_negative_edges(graph: *const TsGraph) -> usize {
    unsafe { graph_ref(graph) }.map_or(0, SignedGraph::m_neg)
}

/// Writes the graph in edge-list text form (parseable by `ts_graph_parse`).
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write; free the result with `ts_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_edge_list(
    graph: *const TsGraph,
    out: *mut *mut c_char,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        unsafe { write_string(g.to_edge_list(&[]), out) }
    })
}

/// Writes `true` if every cycle of the graph has positive sign.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single `bool` write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_is_balanced(
    graph: *const TsGraph,
    out: *mut bool,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if out.is_null() {
            return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        unsafe { out.write(g.is_balanced()) };
        TsStatus::Ok
    })
}

/// Builds the graph with every edge sign flipped.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_negate(
    graph: *const TsGraph,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        unsafe { write_graph(g.negate(), out) }
    })
}

/// Switches the graph at the given set of vertices (1-based): every edge
/// with exactly one endpoint in the set changes sign.
///
/// # Safety
/// `graph` must be a live handle from this library, `vertices` must point to
/// `len` readable `size_t` values (it may be NULL when `len == 0`), and
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_switch(
    graph: *const TsGraph,
    vertices: *const usize,
    len: usize,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if vertices.is_null() && len > 0 {
            return fail(TsStatus::NullArgument, "vertices is NULL".to_string());
        }
        let slice = if len == 0 {
            &[]
        } else {
            unsafe { std::slice::from_raw_parts(vertices, len) }
        };
        let mut set = BTreeSet::new();
        for &v in slice {
            if v == 0 || v > g.n() {
                return fail(
                    TsStatus::InvalidArgument,
                    format!("vertex {v} out of range 1..={}", g.n()),
                );
            }
            set.insert(v);
        }
        let switching = SwitchingVector::from_plus_set(&set, g.n()).negated();
        match g.switch(&switching) {
            Ok(switched) => unsafe { write_graph(switched, out) },
            Err(err) => fail(graph_status(&err), err.to_string()),
        }
    })
}

/// Builds the signed complement of a balanced graph: complement edges
/// receive the sign `s(u)·s(v)` induced by a balancing switching.
///
/// Fails with `TS_STATUS_NOT_BALANCED` on unbalanced input.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_graph_complement(
    graph: *const TsGraph,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        match g.signed_complement() {
            Ok(complement) => unsafe { write_graph(complement, out) },
            Err(err) => fail(graph_status(&err), err.to_string()),
        }
    })
}

/// Builds the k-token graph: vertices are the k-subsets of the base vertex
/// set in lexicographic order (numbered from 1), and subsets `A`, `B` are
/// adjacent with sign `sigma(ab)` when their symmetric difference is an edge
/// `{a, b}`.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn ts_token_graph(
    graph: *const TsGraph,
    k: usize,
    out: *mut *mut TsGraph,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        match token::token_graph(g, k) {
            Ok(tokens) => unsafe { write_graph(tokens.graph().clone(), out) },
            Err(err) => fail(token_status(&err), err.to_string()),
        }
    })
}

/// Writes the frustration index: the minimum number of edges whose deletion
/// leaves a balanced graph.
///
/// Exact and exponential in the vertex count; fails with
/// `TS_STATUS_TOO_LARGE` beyond the built-in guard.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single `size_t` write.
#[no_mangle]
pub unsafe extern "C" fn ts_frustration_index(
    graph: *const TsGraph,
    out: *mut usize,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if out.is_null() {
            return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        match measures::frustration_index(g) {
            Ok(result) => {
                unsafe { out.write(result.index) };
                TsStatus::Ok
            }
            Err(err) => fail(measure_status(&err), err.to_string()),
        }
    })
}

/// Writes the spectral unbalance level as an exact fraction string such as
/// `"124/149"` (or `"0"` for balanced graphs).
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single pointer write; free the result with `ts_string_free`.
#[no_mangle]
pub unsafe extern "C" fn ts_unbalance_level(
    graph: *const TsGraph,
    out: *mut *mut c_char,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        let result = measures::unbalance_level(g);
        unsafe { write_string(result.ell.to_string(), out) }
    })
}

/// Writes the spectral unbalance level rounded to the nearest `double`.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single `double` write.
#[no_mangle]
pub unsafe extern "C" fn ts_unbalance_level_f64(
    graph: *const TsGraph,
    out: *mut f64,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if out.is_null() {
            return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        let result = measures::unbalance_level(g);
        unsafe { out.write(result.ell.to_f64()) };
        TsStatus::Ok
    })
}

/// Writes `true` if the graph is switching-isomorphic to its negation.
///
/// Fails with `TS_STATUS_TOO_LARGE` beyond the canonical-labeling guard.
///
/// # Safety
/// `graph` must be a live handle from this library and `out` must be valid
/// for a single `bool` write.
#[no_mangle]
pub unsafe extern "C" fn ts_is_sign_symmetric(
    graph: *const TsGraph,
    out: *mut bool,
) -> TsStatus {
    guarded(|| {
        let Some(g) = (unsafe { graph_ref(graph) }) else {
            return fail(TsStatus::NullArgument, "graph is NULL".to_string());
        };
        if out.is_null() {
            return fail(TsStatus::NullArgument, "out pointer is NULL".to_string());
        }
        match equivalence::is_sign_symmetric(g) {
            Ok(certificate) => {
                unsafe { out.write(certificate.is_some()) };
                TsStatus::Ok
            }
            Err(err) => fail(equivalence_status(&err), err.to_string()),
        }
    })
}
