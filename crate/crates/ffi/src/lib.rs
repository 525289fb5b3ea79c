//! C ABI over the ramanujan-audit core.
//!
//! Handles are opaque and owned by the caller once returned; release them with the
//! matching `*_free` function. Every function returns a [`RaStatus`]. On any status other
//! than `Ok` or `AuditFailed`, [`ra_last_error_message`] describes the failure on the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ramanujan_audit::cli::{self, AuditOptions, EmbedArg, OutputArgs, SearchArgs, TreeArgs, TypeArg};
use ramanujan_audit::morgenstern::{build_instance, Instance, InstanceDescriptor};
use ramanujan_audit::Error;
use serde_json::Value;

/// Result codes shared by every exported function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaStatus {
    Ok = 0,
    /// The report was produced but at least one audit failed.
    AuditFailed = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    /// Group closure or graph construction failed.
    Construction = 4,
    /// Eigensolver or size limit failure.
    Numeric = 5,
    Internal = 6,
}

/// Embedding mode for [`ra_tree_audit_json`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RaEmbed {
    None = 0,
    Ramified = 1,
    Unramified = 2,
}

/// Opaque handle to a constructed `(X, Y)` pair.
pub struct RaInstance {
    inner: Instance,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> RaStatus {
    match e {
        Error::CapExceeded { .. }
        | Error::OrderMismatch { .. }
        | Error::NotInverseClosed
        | Error::GeneratorNotInClosure
        | Error::InvalidGraph(_)
        | Error::SingularMatrix => RaStatus::Construction,
        Error::SizeLimit { .. } | Error::NoConvergence { .. } => RaStatus::Numeric,
        _ => RaStatus::InvalidArgument,
    }
}

fn guard<F>(f: F) -> RaStatus
where
    F: FnOnce() -> Result<RaStatus, (RaStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            RaStatus::Internal
        }
    }
}

fn fail(e: Error) -> (RaStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(name: &str) -> (RaStatus, String) {
    (RaStatus::NullPointer, format!("{name} is null"))
}

fn write_json(report: &Value, pass: bool, out: *mut *mut c_char) -> Result<RaStatus, (RaStatus, String)> {
    let text = cli::to_canonical_json(report);
    let c = CString::new(text).map_err(|e| (RaStatus::Internal, e.to_string()))?;
    // SAFETY: caller checked `out` for null.
    unsafe { *out = c.into_raw() };
    Ok(if pass { RaStatus::Ok } else { RaStatus::AuditFailed })
}

unsafe fn instance<'a>(p: *const RaInstance) -> Result<&'a Instance, (RaStatus, String)> {
    // SAFETY: non-null handles come from `ra_instance_new`.
    unsafe { p.as_ref() }.map(|h| &h.inner).ok_or_else(|| null("instance"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<RaStatus, (RaStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    // SAFETY: checked non-null; caller provides writable storage.
    unsafe { *out = v };
    Ok(RaStatus::Ok)
}

/// Message for the last failure on this thread. Valid until the next failing call on
/// the same thread; do not free.
#[no_mangle]
pub extern "C" fn ra_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ra_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds the instance for `q`, `m` and the coefficients of `h̃` (constant term first,
/// residues in `F_q`). Pass `htilde = NULL` to use the first parameter found by search.
///
/// # Safety
/// `htilde` must point to `htilde_len` integers or be null; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_new(
    q: u64,
    m: usize,
    htilde: *const i64,
    htilde_len: usize,
    out: *mut *mut RaInstance,
) -> RaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let htilde_coeffs = if htilde.is_null() {
            None
        } else {
            // SAFETY: caller guarantees `htilde_len` readable elements.
            let coeffs = unsafe { std::slice::from_raw_parts(htilde, htilde_len) };
            Some(coeffs.iter().map(|&c| Value::from(c.rem_euclid(q.max(1) as i64))).collect())
        };
        let descriptor = InstanceDescriptor { q, m, htilde_coeffs, epsilon: None };
        let params = descriptor.resolve().map_err(fail)?;
        let inner = build_instance(&params).map_err(fail)?;
        // SAFETY: checked non-null above.
        unsafe { *out = Box::into_raw(Box::new(RaInstance { inner })) };
        Ok(RaStatus::Ok)
    })
}

/// Releases a handle from [`ra_instance_new`]. Null is ignored.
///
/// # Safety
/// `inst` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_free(inst: *mut RaInstance) {
    if !inst.is_null() {
        // SAFETY: handle was produced by `Box::into_raw`.
        drop(unsafe { Box::from_raw(inst) });
    }
}

/// Number of vertices of `X`.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_order(inst: *const RaInstance, out: *mut usize) -> RaStatus {
    guard(|| unsafe { put(out, instance(inst)?.x.n()) })
}

/// Degree of `X`.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_degree(inst: *const RaInstance, out: *mut usize) -> RaStatus {
    guard(|| unsafe { put(out, instance(inst)?.degree()) })
}

/// Number of vertices of `Y`.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_y_size(inst: *const RaInstance, out: *mut usize) -> RaStatus {
    guard(|| unsafe { put(out, instance(inst)?.y_in_x.len()) })
}

/// Girth of `X`, or 0 when acyclic.
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_girth(inst: *const RaInstance, out: *mut usize) -> RaStatus {
    guard(|| unsafe { put(out, instance(inst)?.x.girth().unwrap_or(0)) })
}

/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_is_bipartite(inst: *const RaInstance, out: *mut bool) -> RaStatus {
    guard(|| unsafe { put(out, instance(inst)?.x.is_bipartite()) })
}

/// Copies the `X` vertex ids of `Y` into `buf`. `len` receives the full count; at most
/// `cap` ids are written.
///
/// # Safety
/// `buf` must hold `cap` elements (or be null with `cap == 0`); `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_y_vertices(
    inst: *const RaInstance,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> RaStatus {
    guard(|| {
        let inst = unsafe { instance(inst)? };
        if cap > 0 && buf.is_null() {
            return Err(null("buf"));
        }
        let ids = &inst.y_in_x;
        for (i, &v) in ids.iter().take(cap).enumerate() {
            // SAFETY: i < cap.
            unsafe { *buf.add(i) = v };
        }
        unsafe { put(len, ids.len()) }
    })
}

/// Instance summary as JSON. Free the string with [`ra_string_free`].
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_summary_json(inst: *const RaInstance, out: *mut *mut c_char) -> RaStatus {
    guard(|| {
        let inst = unsafe { instance(inst)? };
        if out.is_null() {
            return Err(null("out"));
        }
        let report = serde_json::json!({
            "instance": inst.summary(),
            "x": inst.x.summary(),
            "y_graph": inst.y.summary(),
            "y_size": inst.y_in_x.len(),
        });
        write_json(&report, true, out)
    })
}

/// Runs every audit. Returns `AuditFailed` with the report still written when some
/// audit fails. Free the string with [`ra_string_free`].
///
/// # Safety
/// `inst` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ra_instance_audit_json(
    inst: *const RaInstance,
    tol: f64,
    dense_limit: usize,
    out: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        let inst = unsafe { instance(inst)? };
        if out.is_null() {
            return Err(null("out"));
        }
        if !tol.is_finite() || tol < 0.0 {
            return Err((RaStatus::InvalidArgument, format!("tolerance must be finite and non-negative, got {tol}")));
        }
        let opts = AuditOptions { tol, dense_limit, ..AuditOptions::default() };
        let outcome = cli::audit_instance(inst, &opts).map_err(fail)?;
        write_json(&outcome.report, outcome.pass, out)
    })
}

/// Parameter search report for `q`, `m`; `psl` selects the non-bipartite type.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ra_search_json(q: u64, m: usize, psl: bool, out: *mut *mut c_char) -> RaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let args = SearchArgs {
            q,
            m,
            graph_type: if psl { TypeArg::Psl } else { TypeArg::Pgl },
            output: OutputArgs { out: None },
        };
        let outcome = cli::cmd_search(&args).map_err(fail)?;
        write_json(&outcome.report, outcome.pass, out)
    })
}

/// Building ball audit of rank `n` over `F_q` with the given radius and embedding.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ra_tree_audit_json(
    n: usize,
    q: u64,
    radius: usize,
    embed: RaEmbed,
    out: *mut *mut c_char,
) -> RaStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let args = TreeArgs {
            n,
            q,
            radius,
            embed: match embed {
                RaEmbed::None => EmbedArg::None,
                RaEmbed::Ramified => EmbedArg::Ramified,
                RaEmbed::Unramified => EmbedArg::Unramified,
            },
            allow_large: false,
            output: OutputArgs { out: None },
            dot: None,
            ball_out: None,
        };
        let outcome = cli::cmd_tree(&args).map_err(fail)?;
        write_json(&outcome.report, outcome.pass, out)
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ra_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: produced by `CString::into_raw`.
        drop(unsafe { CString::from_raw(s) });
    }
}
