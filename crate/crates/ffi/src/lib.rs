//! C ABI over the `mcover` library.
//!
//! Posets cross the boundary as opaque `McPoset` handles owned by the caller
//! and released with `mc_poset_free`. Strings returned by the library are
//! released with `mc_string_free`. Every fallible call returns an `McStatus`;
//! on failure `mc_last_error` describes the most recent error on the calling
//! thread. Panics never unwind across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use mcover::completion::dm_completion;
use mcover::count::checked_fuss_catalan;
use mcover::dyck::mtamari;
use mcover::io::{poset_from_json, poset_to_json, to_dot};
use mcover::iso::is_isomorphic;
use mcover::mcover::mcover;
use mcover::strip::{verify_conjecture, BounceOrder};
use mcover::{Error, Poset};

/// Result codes. The numeric values of the parse, precondition and budget
/// codes agree with the command-line exit codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullArgument = 1,
    Parse = 2,
    Precondition = 3,
    ClaimFailed = 4,
    Budget = 5,
    Panic = 6,
}

/// Opaque handle to an immutable bounded or unbounded finite poset.
pub struct McPoset(Poset);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> McStatus {
    match e.exit_code() {
        2 => McStatus::Parse,
        5 => McStatus::Budget,
        _ => McStatus::Precondition,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), McStatus>) -> McStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            McStatus::Panic
        }
    }
}

fn lib<T>(r: mcover::Result<T>) -> Result<T, McStatus> {
    r.map_err(|e| {
        set_error(&e.to_string());
        status_of(&e)
    })
}

fn null() -> McStatus {
    set_error("null argument");
    McStatus::NullArgument
}

unsafe fn poset_ref<'a>(p: *const McPoset) -> Result<&'a Poset, McStatus> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

// Allocates only once `out` is known to be writable, so nothing leaks.
unsafe fn write_handle(out: *mut *mut McPoset, p: Poset) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(McPoset(p))));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), McStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(CString::new(s).expect("serializations contain no nul").into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a poset on `0..n` from `pair_count` pairs `(lower, upper)` stored
/// flat in `pairs`. The relation is closed transitively.
///
/// # Safety
/// `pairs` must point to `2 * pair_count` readable values (or be null when
/// `pair_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_from_covers(
    n: usize,
    pairs: *const usize,
    pair_count: usize,
    out: *mut *mut McPoset,
) -> McStatus {
    guard(|| {
        let flat: &[usize] = if pair_count == 0 {
            &[]
        } else if pairs.is_null() {
            return Err(null());
        } else {
            std::slice::from_raw_parts(pairs, 2 * pair_count)
        };
        let rel: Vec<(usize, usize)> = flat.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        let p = lib(Poset::from_cover_relations(n, &rel))?;
        write_handle(out, p)
    })
}

/// Parses poset JSON `{"n":…, "covers":[[i,j],…], "labels":[…]?}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_from_json(json: *const c_char, out: *mut *mut McPoset) -> McStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(json).to_str().map_err(|e| {
            set_error(&e.to_string());
            McStatus::Parse
        })?;
        let p = lib(poset_from_json(s))?;
        write_handle(out, p)
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `p` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_free(p: *mut McPoset) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of elements; 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_size(p: *const McPoset) -> usize {
    p.as_ref().map_or(0, |h| h.0.len())
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_leq(p: *const McPoset, x: usize, y: usize, out: *mut bool) -> McStatus {
    guard(|| {
        let p = poset_ref(p)?;
        if x >= p.len() || y >= p.len() {
            return lib(Err(Error::IndexOutOfRange { index: x.max(y), size: p.len() }));
        }
        write(out, p.leq(x, y))
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_is_lattice(p: *const McPoset, out: *mut bool) -> McStatus {
    guard(|| write(out, poset_ref(p)?.is_lattice()))
}

/// Length of the longest chain.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_length(p: *const McPoset, out: *mut usize) -> McStatus {
    guard(|| write(out, poset_ref(p)?.length()))
}

/// Fails with `Precondition` unless the poset is a lattice.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_is_left_modular(p: *const McPoset, out: *mut bool) -> McStatus {
    guard(|| {
        let v = lib(poset_ref(p)?.is_left_modular())?;
        write(out, v)
    })
}

/// Fails with `Precondition` unless the poset is a lattice.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_is_trim(p: *const McPoset, out: *mut bool) -> McStatus {
    guard(|| {
        let v = lib(poset_ref(p)?.is_trim())?;
        write(out, v)
    })
}

/// The m-cover poset of a bounded poset.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_mcover(p: *const McPoset, m: usize, out: *mut *mut McPoset) -> McStatus {
    guard(|| {
        let c = lib(mcover(poset_ref(p)?, m))?;
        write_handle(out, c.poset)
    })
}

/// The m-Tamari lattice on m-Dyck paths of height `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_mtamari(n: usize, m: usize, out: *mut *mut McPoset) -> McStatus {
    guard(|| {
        let t = lib(mtamari(n, m))?;
        write_handle(out, t.poset)
    })
}

/// Dedekind-MacNeille completion.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_dm_completion(p: *const McPoset, out: *mut *mut McPoset) -> McStatus {
    guard(|| write_handle(out, dm_completion(poset_ref(p)?).lattice))
}

/// Isomorphism test with a backtracking budget; `Budget` when it runs out.
///
/// # Safety
/// `a` and `b` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_is_isomorphic(
    a: *const McPoset,
    b: *const McPoset,
    budget: u64,
    out: *mut bool,
) -> McStatus {
    guard(|| {
        let v = lib(is_isomorphic(poset_ref(a)?, poset_ref(b)?, budget))?;
        write(out, v)
    })
}

/// Poset JSON; release with `mc_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_to_json(p: *const McPoset, out: *mut *mut c_char) -> McStatus {
    guard(|| write_string(out, poset_to_json(poset_ref(p)?)))
}

/// Graphviz DOT of the Hasse diagram; release with `mc_string_free`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_poset_to_dot(p: *const McPoset, out: *mut *mut c_char) -> McStatus {
    guard(|| write_string(out, to_dot(poset_ref(p)?)))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Fuss-Catalan number; `Precondition` if it does not fit in 64 bits.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_fuss_catalan(n: u64, m: u64, out: *mut u64) -> McStatus {
    guard(|| {
        let v = checked_fuss_catalan(n, m).and_then(|v| u64::try_from(v).ok()).ok_or_else(|| {
            set_error("Fuss-Catalan number exceeds 64 bits");
            McStatus::Precondition
        })?;
        write(out, v)
    })
}

/// Checks the bounced-fan realization of `T_n^(m)`; `holds` receives the
/// verdict and the call itself succeeds either way.
///
/// # Safety
/// `holds` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mc_verify_conjecture(n: usize, m: usize, reversed: bool, holds: *mut bool) -> McStatus {
    guard(|| {
        let order = if reversed { BounceOrder::Reversed } else { BounceOrder::Standard };
        let r = lib(verify_conjecture(n, m, order))?;
        write(holds, r.holds())
    })
}
