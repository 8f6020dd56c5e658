//! C ABI for the `tsys` library.
//!
//! Transfer systems cross the boundary as opaque `TsysSystem` handles owned
//! by the caller and released with `tsys_system_free`. Every function
//! returns a `TsysStatus`; results come back through out-pointers. After a
//! non-`Ok` status, `tsys_last_error_message` describes the failure on the
//! calling thread. Strings returned by the library are freed with
//! `tsys_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tsys::{Edge, Grid, TransferSystem, TsysDocument, Vertex};

/// Opaque transfer system handle.
pub struct TsysSystem {
    inner: TransferSystem,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsysStatus {
    Ok = 0,
    NullPointer = 1,
    InputError = 2,
    ResourceGuard = 3,
    InvalidUtf8 = 4,
    Internal = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: TsysStatus, msg: impl Into<String>) -> TsysStatus {
    set_error(msg);
    status
}

fn from_lib(e: tsys::Error) -> TsysStatus {
    let status = if e.is_resource() {
        TsysStatus::ResourceGuard
    } else {
        TsysStatus::InputError
    };
    fail(status, e.to_string())
}

/// Runs `f`, turning panics into `Internal`.
fn guarded(f: impl FnOnce() -> TsysStatus) -> TsysStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => fail(TsysStatus::Internal, "internal error"),
    }
}

unsafe fn system<'a>(p: *const TsysSystem) -> Option<&'a TransferSystem> {
    // SAFETY: caller passes null or a live handle from this library
    unsafe { p.as_ref() }.map(|s| &s.inner)
}

fn boxed(t: TransferSystem) -> *mut TsysSystem {
    Box::into_raw(Box::new(TsysSystem { inner: t }))
}

unsafe fn put<T>(out: *mut T, value: T) -> TsysStatus {
    if out.is_null() {
        return fail(TsysStatus::NullPointer, "null output pointer");
    }
    // SAFETY: out is non-null and the caller guarantees it is writable
    unsafe { out.write(value) };
    TsysStatus::Ok
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Parses a document in `.tsys` text or JSON form. With `close` the edges
/// are replaced by their transfer closure; otherwise they must already
/// form a transfer system.
///
/// # Safety
/// `text` must be null or a NUL-terminated string; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_parse(
    text: *const c_char,
    close: bool,
    out: *mut *mut TsysSystem,
) -> TsysStatus {
    guarded(|| {
        if text.is_null() || out.is_null() {
            return fail(TsysStatus::NullPointer, "null argument");
        }
        // SAFETY: checked non-null; caller guarantees NUL termination
        let Ok(text) = unsafe { CStr::from_ptr(text) }.to_str() else {
            return fail(TsysStatus::InvalidUtf8, "input is not valid UTF-8");
        };
        let doc = match TsysDocument::parse_any(text) {
            Ok(d) => d,
            Err(e) => return from_lib(e),
        };
        let t = if close { doc.close() } else { doc.to_system() };
        match t {
            // SAFETY: out checked above
            Ok(t) => unsafe { put(out, boxed(t)) },
            Err(e) => from_lib(e),
        }
    })
}

/// The complete transfer system on `grid(r, s)`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_complete(
    r: u32,
    s: u32,
    out: *mut *mut TsysSystem,
) -> TsysStatus {
    guarded(|| {
        let t = TransferSystem::complete(Grid::new(r as usize, s as usize));
        // SAFETY: forwarded from the caller
        unsafe { put(out, boxed(t)) }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `sys` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_free(sys: *mut TsysSystem) {
    if !sys.is_null() {
        // SAFETY: handle came from Box::into_raw in this crate
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tsys_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: string came from CString::into_raw in this crate
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Renders the system in `.tsys` text form.
///
/// # Safety
/// `sys` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_render(
    sys: *const TsysSystem,
    out: *mut *mut c_char,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(sys) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        let text = TsysDocument::from_system(t).render();
        // SAFETY: forwarded from the caller
        unsafe { put(out, to_c_string(text)) }
    })
}

/// Renders the system as `{"r":R,"s":S,"edges":[...]}`.
///
/// # Safety
/// `sys` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_to_json(
    sys: *const TsysSystem,
    out: *mut *mut c_char,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(sys) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        let text = TsysDocument::from_system(t).to_json();
        // SAFETY: forwarded from the caller
        unsafe { put(out, to_c_string(text)) }
    })
}

/// Number of strict edges.
///
/// # Safety
/// `sys` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_edge_count(
    sys: *const TsysSystem,
    out: *mut usize,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(sys) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        // SAFETY: forwarded from the caller
        unsafe { put(out, t.edge_count()) }
    })
}

/// Number of connected components.
///
/// # Safety
/// `sys` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_component_count(
    sys: *const TsysSystem,
    out: *mut usize,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(sys) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        // SAFETY: forwarded from the caller
        unsafe { put(out, t.components().count()) }
    })
}

/// Saturated hull, as a new handle.
///
/// # Safety
/// `sys` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_system_hull(
    sys: *const TsysSystem,
    out: *mut *mut TsysSystem,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(sys) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        // SAFETY: forwarded from the caller
        unsafe { put(out, boxed(tsys::hull(t))) }
    })
}

/// Whether `(t, tp)` is a compatible pair.
///
/// # Safety
/// `t` and `tp` must be null or live handles; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_is_compatible(
    t: *const TsysSystem,
    tp: *const TsysSystem,
    out: *mut bool,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let (Some(a), Some(b)) = (unsafe { system(t) }, unsafe { system(tp) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        match tsys::is_compatible(a, b) {
            // SAFETY: forwarded from the caller
            Ok(rep) => unsafe { put(out, rep.is_compatible()) },
            Err(e) => from_lib(e),
        }
    })
}

/// Least transfer system containing `t` and the given edges that is
/// compatible with `t`. `edges` holds `n_edges` groups of four numbers
/// `i1, j1, i2, j2`; it may be null when `n_edges` is zero.
///
/// # Safety
/// `t` must be null or a live handle; `edges` must point to `4 * n_edges`
/// readable values; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_min_compatible_extension(
    t: *const TsysSystem,
    edges: *const u32,
    n_edges: usize,
    out: *mut *mut TsysSystem,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(t) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        if n_edges > 0 && edges.is_null() {
            return fail(TsysStatus::NullPointer, "null edge array");
        }
        let raw: &[u32] = if n_edges == 0 {
            &[]
        } else {
            // SAFETY: caller guarantees 4 * n_edges readable values
            unsafe { std::slice::from_raw_parts(edges, 4 * n_edges) }
        };
        let extra: Vec<Edge> = raw
            .chunks_exact(4)
            .map(|c| {
                Edge::new(
                    Vertex::new(c[0] as usize, c[1] as usize),
                    Vertex::new(c[2] as usize, c[3] as usize),
                )
            })
            .collect();
        match tsys::min_compatible_extension(t, &extra) {
            // SAFETY: forwarded from the caller
            Ok(tp) => unsafe { put(out, boxed(tp)) },
            Err(e) => from_lib(e),
        }
    })
}

/// Whether `t` is lesser simply paired. When it is not and `witness` is
/// non-null, a compatible superset strictly between the hull and the
/// complete system is returned there (null otherwise).
///
/// # Safety
/// `t` must be null or a live handle; `is_lsp` must be null or writable;
/// `witness` may be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_lsp(
    t: *const TsysSystem,
    is_lsp: *mut bool,
    witness: *mut *mut TsysSystem,
) -> TsysStatus {
    guarded(|| {
        // SAFETY: forwarded from the caller
        let Some(t) = (unsafe { system(t) }) else {
            return fail(TsysStatus::NullPointer, "null system");
        };
        let verdict = tsys::is_lsp_fast(t);
        // SAFETY: forwarded from the caller
        let status = unsafe { put(is_lsp, verdict.is_lsp) };
        if status != TsysStatus::Ok {
            return status;
        }
        if !witness.is_null() {
            let w = verdict.witness.map_or(ptr::null_mut(), boxed);
            // SAFETY: checked non-null
            unsafe { witness.write(w) };
        }
        TsysStatus::Ok
    })
}

/// Number of transfer systems on `grid(r, s)`; grids above the default
/// vertex limit give `ResourceGuard`.
///
/// # Safety
/// `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn tsys_count_transfer_systems(r: u32, s: u32, out: *mut u64) -> TsysStatus {
    guarded(|| match tsys::count_transfer_systems(Grid::new(r as usize, s as usize)) {
        // SAFETY: forwarded from the caller
        Ok(n) => unsafe { put(out, n) },
        Err(e) => from_lib(e),
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn tsys_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
