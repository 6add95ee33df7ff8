//! C ABI over the hfree core.
//!
//! Hypergraphs cross the boundary as opaque `HfHypergraph` handles created
//! by `hf_hypergraph_parse` / `hf_hypergraph_builtin` and released with
//! `hf_hypergraph_free`. Every call returns an `HfStatus`; on failure the
//! message is available from `hf_last_error_message` on the same thread.
//! Strings returned through out-pointers are owned by the caller and must be
//! released with `hf_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hfree::exact::{self, SearchConfig};
use hfree::{Error, Hypergraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HfStatus {
    Ok = 0,
    NullPointer = 1,
    ParseError = 2,
    Precondition = 3,
    NoDenseSubgraph = 4,
    TooLarge = 5,
    BudgetExceeded = 6,
    Invalid = 7,
    Internal = 8,
}

/// Opaque hypergraph handle.
pub struct HfHypergraph(Hypergraph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> HfStatus {
    match e {
        Error::MalformedHeader { .. }
        | Error::MalformedEdge { .. }
        | Error::DuplicateEdge { .. }
        | Error::VertexOutOfRange { .. }
        | Error::EdgeCountMismatch { .. }
        | Error::Graph6(_) => HfStatus::ParseError,
        Error::NoDenseSubgraph => HfStatus::NoDenseSubgraph,
        Error::TooLarge(_) => HfStatus::TooLarge,
        Error::BudgetExceeded { .. } => HfStatus::BudgetExceeded,
        Error::Invalid(_) | Error::Io(_) => HfStatus::Invalid,
        _ => HfStatus::Precondition,
    }
}

/// Runs `f`, translating errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), (HfStatus, String)>) -> HfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HfStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            HfStatus::Internal
        }
    }
}

fn lib(e: Error) -> (HfStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (HfStatus, String) {
    (HfStatus::NullPointer, format!("{what} is null"))
}

unsafe fn handle<'a>(h: *const HfHypergraph) -> Result<&'a Hypergraph, (HfStatus, String)> {
    h.as_ref().map(|h| &h.0).ok_or_else(|| null("hypergraph handle"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, (HfStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s).to_str().map_err(|_| (HfStatus::Invalid, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T, what: &str) -> Result<(), (HfStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message of the last failed call on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn hf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the text edge-list format (or graph6 for graphs).
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_parse(src: *const c_char, out: *mut *mut HfHypergraph) -> HfStatus {
    guard(|| {
        let s = text(src, "source text")?;
        let h = hfree::hypercore::parse_hypergraph(s).map_err(lib)?;
        put(out, Box::into_raw(Box::new(HfHypergraph(h))), "out")
    })
}

/// Builds a named pattern: `kN`, `cN`, `pN`, `kS,T`, `kNrR` or `g6:<graph6>`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_builtin(name: *const c_char, out: *mut *mut HfHypergraph) -> HfStatus {
    guard(|| {
        let s = text(name, "name")?;
        let h = hfree::cli::builtin_pattern(s).ok_or((HfStatus::Invalid, format!("unknown pattern {s:?}")))?;
        put(out, Box::into_raw(Box::new(HfHypergraph(h))), "out")
    })
}

/// # Safety
/// `h` must be NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_free(h: *mut HfHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `h` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_shape(
    h: *const HfHypergraph,
    uniformity: *mut usize,
    vertices: *mut usize,
    edges: *mut usize,
) -> HfStatus {
    guard(|| {
        let g = handle(h)?;
        put(uniformity, g.uniformity(), "uniformity")?;
        put(vertices, g.n_vertices(), "vertices")?;
        put(edges, g.num_edges(), "edges")
    })
}

/// Canonical text rendering; free the result with `hf_string_free`.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_hypergraph_to_text(h: *const HfHypergraph, out: *mut *mut c_char) -> HfStatus {
    guard(|| {
        let g = handle(h)?;
        put(out, c_string(g.to_text()), "out")
    })
}

/// r-density `m_r(H)` as a reduced fraction.
///
/// # Safety
/// `h` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_r_density(h: *const HfHypergraph, numer: *mut i64, denom: *mut i64) -> HfStatus {
    guard(|| {
        let d = hfree::hypercore::r_density(handle(h)?).map_err(lib)?;
        put(numer, *d.value.numer(), "numer")?;
        put(denom, *d.value.denom(), "denom")
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_is_strictly_balanced(h: *const HfHypergraph, out: *mut bool) -> HfStatus {
    guard(|| {
        let b = hfree::hypercore::is_strictly_r_balanced(handle(h)?).map_err(lib)?;
        put(out, b, "out")
    })
}

fn search(budget: u64) -> SearchConfig {
    SearchConfig { node_budget: (budget > 0).then_some(budget), ..SearchConfig::default() }
}

/// `ex(n, H)`; `node_budget == 0` means unlimited. `witness` may be NULL;
/// otherwise it receives a new handle to an extremal H-free host.
///
/// # Safety
/// `h` must be a live handle; `value` must be writable; `witness` must be
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn hf_extremal_number(
    h: *const HfHypergraph,
    n: usize,
    node_budget: u64,
    value: *mut usize,
    witness: *mut *mut HfHypergraph,
) -> HfStatus {
    guard(|| {
        let ex = exact::extremal_number_with(n, handle(h)?, search(node_budget)).map_err(lib)?;
        put(value, ex.value, "value")?;
        if !witness.is_null() {
            witness.write(Box::into_raw(Box::new(HfHypergraph(ex.witness))));
        }
        Ok(())
    })
}

/// Number of labelled H-free hosts on `[n]` as a decimal string; free it
/// with `hf_string_free`. `node_budget == 0` means unlimited.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hf_count_h_free(
    h: *const HfHypergraph,
    n: usize,
    node_budget: u64,
    out: *mut *mut c_char,
) -> HfStatus {
    guard(|| {
        let c = exact::count_h_free_with(n, handle(h)?, search(node_budget)).map_err(lib)?;
        put(out, c_string(c.count.to_string()), "out")
    })
}
