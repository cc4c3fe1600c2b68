//! C ABI over the `mbrtp` solvers.
//!
//! Instances and packings cross the boundary as opaque handles created and
//! released on the Rust side. Every fallible call returns an [`MbrtpStatus`];
//! after a non-`OK` status, [`mbrtp_last_error`] describes the failure.
//! Strings returned to the caller are NUL-terminated UTF-8 and must be
//! released with [`mbrtp_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use mbrtp::complete::solve_complete;
use mbrtp::oracle::{brute_force_solve, greedy_general, Limits};
use mbrtp::reduction::{parse_dimacs, reduce_3sat};
use mbrtp::tree::{solve_tree, solve_tree_value};
use mbrtp::{load_packing, verify_packing, Error, GraphKind, Instance, Packing};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbrtpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidInput = 4,
    KindMismatch = 5,
    LimitExceeded = 6,
    Unverified = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbrtpAlgorithm {
    /// Complete → complete solver, tree → tree solver, general → greedy.
    Auto = 0,
    Complete = 1,
    Tree = 2,
    Greedy = 3,
}

/// Opaque validated instance.
pub struct MbrtpInstance {
    inner: Instance,
}

/// Opaque packing of rooted trees.
pub struct MbrtpPacking {
    inner: Packing,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: MbrtpStatus, msg: impl Into<String>) -> MbrtpStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> MbrtpStatus {
    let status = match e {
        Error::Parse(_) | Error::Dimacs { .. } => MbrtpStatus::ParseError,
        Error::KindMismatch { .. } => MbrtpStatus::KindMismatch,
        Error::LimitExceeded(_) => MbrtpStatus::LimitExceeded,
        Error::Unverified(_) => MbrtpStatus::Unverified,
        _ => MbrtpStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Runs `body`, converting panics into [`MbrtpStatus::Panic`].
fn guard(body: impl FnOnce() -> Result<(), MbrtpStatus>) -> MbrtpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MbrtpStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(MbrtpStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, MbrtpStatus> {
    if s.is_null() {
        return Err(fail(MbrtpStatus::NullPointer, "string argument is NULL"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| fail(MbrtpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, MbrtpStatus> {
    p.as_ref()
        .ok_or_else(|| fail(MbrtpStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), MbrtpStatus> {
    if out.is_null() {
        return Err(fail(MbrtpStatus::NullPointer, format!("{what} is NULL")));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no NUL").into_raw()
}

/// Message for the most recent failure on this thread, or NULL. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn mbrtp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses and validates an instance from its JSON text.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_instance_from_json(json: *const c_char, out: *mut *mut MbrtpInstance) -> MbrtpStatus {
    guard(|| {
        let text = read_str(json)?;
        let inner = Instance::from_json_str(text).map_err(from_error)?;
        write_out(out, Box::into_raw(Box::new(MbrtpInstance { inner })), "out")
    })
}

/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_instance_to_json(inst: *const MbrtpInstance, out: *mut *mut c_char) -> MbrtpStatus {
    guard(|| {
        let inst = deref(inst, "inst")?;
        write_out(out, into_c_string(inst.inner.to_json_string()), "out")
    })
}

/// # Safety
/// `inst` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_instance_free(inst: *mut MbrtpInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Number of vertices, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_instance_vertex_count(inst: *const MbrtpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.n())
}

/// Number of trees `K`, or 0 for a NULL handle.
///
/// # Safety
/// `inst` must be NULL or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_instance_tree_count(inst: *const MbrtpInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.k())
}

fn box_packing(p: Packing) -> *mut MbrtpPacking {
    Box::into_raw(Box::new(MbrtpPacking { inner: p }))
}

/// Solves `inst` with the chosen algorithm. Complete and tree solvers are
/// exact; greedy is a heuristic.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_solve(
    inst: *const MbrtpInstance,
    algorithm: MbrtpAlgorithm,
    out: *mut *mut MbrtpPacking,
) -> MbrtpStatus {
    guard(|| {
        let inst = &deref(inst, "inst")?.inner;
        let algorithm = match algorithm {
            MbrtpAlgorithm::Auto => match inst.kind() {
                GraphKind::Complete => MbrtpAlgorithm::Complete,
                GraphKind::Tree => MbrtpAlgorithm::Tree,
                GraphKind::General => MbrtpAlgorithm::Greedy,
            },
            other => other,
        };
        let packing = match algorithm {
            MbrtpAlgorithm::Complete => solve_complete(inst).map_err(from_error)?,
            MbrtpAlgorithm::Tree => solve_tree(inst).map_err(from_error)?.1,
            _ => greedy_general(inst),
        };
        write_out(out, box_packing(packing), "out")
    })
}

/// Optimal value of a tree instance, without building the packing.
///
/// # Safety
/// `inst` must be a live instance handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_tree_value(inst: *const MbrtpInstance, value: *mut usize) -> MbrtpStatus {
    guard(|| {
        let inst = &deref(inst, "inst")?.inner;
        let v = solve_tree_value(inst).map_err(from_error)?;
        write_out(value, v, "value")
    })
}

/// Exhaustive optimum; fails with `LIMIT_EXCEEDED` beyond `max_n` / `max_k`.
/// Passing 0 for either limit selects the default (8 and 3).
///
/// # Safety
/// `inst` must be a live instance handle; `value` and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_oracle(
    inst: *const MbrtpInstance,
    max_n: usize,
    max_k: usize,
    value: *mut usize,
    out: *mut *mut MbrtpPacking,
) -> MbrtpStatus {
    guard(|| {
        let inst = &deref(inst, "inst")?.inner;
        let defaults = Limits::default();
        let limits = Limits {
            max_n: if max_n == 0 { defaults.max_n } else { max_n },
            max_k: if max_k == 0 { defaults.max_k } else { max_k },
        };
        let (v, p) = brute_force_solve(inst, limits).map_err(from_error)?;
        if value.is_null() || out.is_null() {
            return Err(fail(MbrtpStatus::NullPointer, "value or out is NULL"));
        }
        write_out(value, v, "value")?;
        write_out(out, box_packing(p), "out")
    })
}

/// Reads a packing file's JSON text; the root is taken from `inst`.
///
/// # Safety
/// `inst` must be a live instance handle, `json` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_packing_from_json(
    inst: *const MbrtpInstance,
    json: *const c_char,
    out: *mut *mut MbrtpPacking,
) -> MbrtpStatus {
    guard(|| {
        let inst = &deref(inst, "inst")?.inner;
        let text = read_str(json)?;
        let loaded = load_packing(text.as_bytes(), inst.root()).map_err(from_error)?;
        write_out(out, box_packing(loaded.packing), "out")
    })
}

/// # Safety
/// `p` must be a live packing handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_packing_to_json(p: *const MbrtpPacking, out: *mut *mut c_char) -> MbrtpStatus {
    guard(|| {
        let p = deref(p, "packing")?;
        write_out(out, into_c_string(p.inner.to_json_string()), "out")
    })
}

/// `Σ_k |V_k|`, or 0 for a NULL handle.
///
/// # Safety
/// `p` must be NULL or a live packing handle.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_packing_objective(p: *const MbrtpPacking) -> usize {
    p.as_ref().map_or(0, |p| p.inner.objective())
}

/// # Safety
/// `p` must be NULL or a live packing handle.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_packing_tree_count(p: *const MbrtpPacking) -> usize {
    p.as_ref().map_or(0, |p| p.inner.len())
}

/// # Safety
/// `p` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_packing_free(p: *mut MbrtpPacking) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Checks `p` against `inst`. A tree-count mismatch is an `INVALID_INPUT`
/// error; other defects set `*valid = false` and count into `*violations`.
///
/// # Safety
/// Handles must be live; `valid` and `violations` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_verify(
    inst: *const MbrtpInstance,
    p: *const MbrtpPacking,
    valid: *mut bool,
    violations: *mut usize,
) -> MbrtpStatus {
    guard(|| {
        let inst = &deref(inst, "inst")?.inner;
        let p = &deref(p, "packing")?.inner;
        if valid.is_null() || violations.is_null() {
            return Err(fail(MbrtpStatus::NullPointer, "valid or violations is NULL"));
        }
        let report = verify_packing(inst, p).map_err(from_error)?;
        write_out(valid, report.valid, "valid")?;
        write_out(violations, report.violations.len(), "violations")
    })
}

/// Builds the single-tree gadget for a DIMACS 3-CNF text. `gamma` receives
/// the threshold; `metadata`, if not NULL, receives the vertex-role JSON.
///
/// # Safety
/// `dimacs` must be a NUL-terminated string; `out` and `gamma` writable;
/// `metadata` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mbrtp_reduce_dimacs(
    dimacs: *const c_char,
    out: *mut *mut MbrtpInstance,
    gamma: *mut usize,
    metadata: *mut *mut c_char,
) -> MbrtpStatus {
    guard(|| {
        let text = read_str(dimacs)?;
        let sat = parse_dimacs(text.as_bytes()).map_err(from_error)?;
        let red = reduce_3sat(&sat);
        if out.is_null() || gamma.is_null() {
            return Err(fail(MbrtpStatus::NullPointer, "out or gamma is NULL"));
        }
        if !metadata.is_null() {
            metadata.write(into_c_string(red.metadata_json().to_string()));
        }
        write_out(gamma, red.gamma, "gamma")?;
        write_out(out, Box::into_raw(Box::new(MbrtpInstance { inner: red.instance })), "out")
    })
}
