//! C interface to `crystal-walls`.
//!
//! Every fallible function returns a [`CwStatus`]. On failure a message is
//! available from [`cw_last_error_message`] on the same thread. Handles
//! are opaque and released with their matching `*_free` function; strings
//! returned through `char **` are released with [`cw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use crystal_walls::verify::{self, VerifyConfig};
use crystal_walls::{
    generate, CrystalGraph, Error, GraphSpec, PerfectCrystal, PerfectElement, Realization,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwStatus {
    Ok = 0,
    InvalidArgument = 1,
    Invariant = 2,
    Budget = 3,
    NullPointer = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwRealization {
    Wall = 0,
    Path = 1,
}

/// The perfect crystal `B` with its elements in a fixed order.
pub struct CwPerfectCrystal {
    crystal: PerfectCrystal,
    elements: Vec<PerfectElement>,
}

/// A generated crystal graph.
pub struct CwGraph {
    graph: CrystalGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn status_of(e: &Error) -> CwStatus {
    match e {
        Error::InvalidRank(_) | Error::IndexOutOfRange { .. } | Error::RankMismatch { .. } => {
            CwStatus::InvalidArgument
        }
        e if e.is_budget() => CwStatus::Budget,
        _ => CwStatus::Invariant,
    }
}

fn guard(body: impl FnOnce() -> Result<(), (CwStatus, String)>) -> CwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => CwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            CwStatus::Panic
        }
    }
}

fn lib(e: Error) -> (CwStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (CwStatus, String) {
    (CwStatus::NullPointer, format!("{what} is null"))
}

fn bad(msg: impl Into<String>) -> (CwStatus, String) {
    (CwStatus::InvalidArgument, msg.into())
}

/// # Safety
///
/// `out` must be null or valid for a write.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (CwStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|_| (CwStatus::Invariant, "string contains NUL".into()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The
/// pointer stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn cw_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
///
/// `s` must be null or a pointer returned through a `char **` argument of
/// this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the perfect crystal of rank `n`.
///
/// # Safety
///
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_new(n: usize, out: *mut *mut CwPerfectCrystal) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let crystal = PerfectCrystal::new(n).map_err(lib)?;
        let elements = crystal.elements();
        *out = Box::into_raw(Box::new(CwPerfectCrystal { crystal, elements }));
        Ok(())
    })
}

/// # Safety
///
/// `b` must be null or a handle from [`cw_perfect_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_free(b: *mut CwPerfectCrystal) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Number of elements; zero for a null handle.
///
/// # Safety
///
/// `b` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_len(b: *const CwPerfectCrystal) -> usize {
    b.as_ref().map_or(0, |b| b.elements.len())
}

/// Element `index` in printed form, e.g. `(1,0|0,1)`.
///
/// # Safety
///
/// `b` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_element(
    b: *const CwPerfectCrystal,
    index: usize,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("crystal"))?;
        let e = b
            .elements
            .get(index)
            .ok_or_else(|| bad(format!("element index {index} out of range")))?;
        write_string(out, e.to_string())
    })
}

/// Index of `f̃_i` applied to element `index`, or -1 for zero.
///
/// # Safety
///
/// `b` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_f(
    b: *const CwPerfectCrystal,
    i: usize,
    index: usize,
    out: *mut i64,
) -> CwStatus {
    perfect_step(b, i, index, out, true)
}

/// Index of `ẽ_i` applied to element `index`, or -1 for zero.
///
/// # Safety
///
/// `b` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_perfect_e(
    b: *const CwPerfectCrystal,
    i: usize,
    index: usize,
    out: *mut i64,
) -> CwStatus {
    perfect_step(b, i, index, out, false)
}

unsafe fn perfect_step(
    b: *const CwPerfectCrystal,
    i: usize,
    index: usize,
    out: *mut i64,
    lower: bool,
) -> CwStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("crystal"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        if i > b.crystal.n() {
            return Err(lib(Error::IndexOutOfRange {
                index: i,
                n: b.crystal.n(),
            }));
        }
        let e = b
            .elements
            .get(index)
            .ok_or_else(|| bad(format!("element index {index} out of range")))?;
        let next = if lower {
            b.crystal.f(i, e)
        } else {
            b.crystal.e(i, e)
        };
        *out = match next {
            Some(c) => b
                .elements
                .iter()
                .position(|x| *x == c)
                .expect("closed under operators") as i64,
            None => -1,
        };
        Ok(())
    })
}

/// Generates the crystal graph of `B(Λ_k)` to the given depth.
///
/// # Safety
///
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_generate(
    realization: CwRealization,
    n: usize,
    k: usize,
    depth: usize,
    node_cap: usize,
    out: *mut *mut CwGraph,
) -> CwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = GraphSpec {
            realization: match realization {
                CwRealization::Wall => Realization::Wall,
                CwRealization::Path => Realization::Path,
            },
            n,
            k,
            depth,
            node_cap,
        };
        let graph = generate(&spec).map_err(lib)?;
        *out = Box::into_raw(Box::new(CwGraph { graph }));
        Ok(())
    })
}

/// # Safety
///
/// `g` must be null or a handle from [`cw_graph_generate`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_free(g: *mut CwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
///
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_node_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.nodes.len())
}

/// # Safety
///
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_edge_count(g: *const CwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.graph.edges.len())
}

/// Arrow `index` as `(source, color, target)`.
///
/// # Safety
///
/// `g` must be a live handle; the out pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_edge(
    g: *const CwGraph,
    index: usize,
    source: *mut usize,
    color: *mut usize,
    target: *mut usize,
) -> CwStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if source.is_null() || color.is_null() || target.is_null() {
            return Err(null("out"));
        }
        let &(u, i, v) = g
            .graph
            .edges
            .get(index)
            .ok_or_else(|| bad(format!("edge index {index} out of range")))?;
        *source = u;
        *color = i;
        *target = v;
        Ok(())
    })
}

/// Writes up to `cap` level sizes into `buf` and the number of levels
/// into `levels`.
///
/// # Safety
///
/// `g` must be a live handle, `buf` valid for `cap` writes (or null when
/// `cap` is 0) and `levels` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_level_sizes(
    g: *const CwGraph,
    buf: *mut usize,
    cap: usize,
    levels: *mut usize,
) -> CwStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if levels.is_null() || (buf.is_null() && cap > 0) {
            return Err(null("out"));
        }
        let sizes = g.graph.level_sizes();
        for (j, &s) in sizes.iter().take(cap).enumerate() {
            *buf.add(j) = s;
        }
        *levels = sizes.len();
        Ok(())
    })
}

/// # Safety
///
/// `g` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_export_json(
    g: *const CwGraph,
    out: *mut *mut c_char,
) -> CwStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        write_string(out, g.graph.export_json())
    })
}

/// # Safety
///
/// `g` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_export_dot(g: *const CwGraph, out: *mut *mut c_char) -> CwStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        write_string(out, g.graph.export_dot())
    })
}

/// Sets `out` to whether the two rooted graphs are isomorphic. On a
/// mismatch the divergence is also left in the last error message.
///
/// # Safety
///
/// `a` and `b` must be live handles and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn cw_graph_isomorphic(
    a: *const CwGraph,
    b: *const CwGraph,
    out: *mut bool,
) -> CwStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(|| null("graph"))?;
        let b = b.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        match a.graph.isomorphic(&b.graph) {
            Ok(()) => *out = true,
            Err(d) => {
                set_error(d.to_string());
                *out = false;
            }
        }
        Ok(())
    })
}

/// Runs the invariant suite. Returns [`CwStatus::Invariant`] with the
/// first counterexample as the error message if any check fails.
#[no_mangle]
pub extern "C" fn cw_verify(n: usize, k: usize, depth: usize, node_cap: usize) -> CwStatus {
    guard(|| {
        let cfg = VerifyConfig {
            n,
            k,
            depth,
            node_cap,
            fault: None,
        };
        let report = verify::run(&cfg).map_err(lib)?;
        match report.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err((
                CwStatus::Invariant,
                format!(
                    "{}: {}",
                    c.check,
                    c.counterexample.as_deref().unwrap_or("failed")
                ),
            )),
        }
    })
}
