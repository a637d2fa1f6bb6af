//! C ABI over the `rootspin` engine.
//!
//! Root systems are exposed as opaque handles. Every fallible call returns a
//! [`RootspinStatus`]; on failure a message for the calling thread is
//! available from [`rootspin_last_error`]. Strings returned by this library
//! must be released with [`rootspin_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rootspin::analysis::{self, CountOptions, MethodChoice};
use rootspin::sigsum::{self, CountKind, Obstruction};
use rootspin::{positive_roots, spinor, Error, Family, FamilyRank, RootSystem, SignVector};

/// Status codes. The numeric values of the first four match the CLI exit
/// codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootspinStatus {
    Ok = 0,
    Internal = 1,
    InvalidInput = 2,
    ResourceLimit = 3,
    NullPointer = 4,
    BufferTooSmall = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootspinMethod {
    Auto = 0,
    Brute = 1,
    Mitm = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootspinCountKind {
    Exact = 0,
    LowerBound = 1,
    ExistsOnly = 2,
    Zero = 3,
}

/// A 128-bit count split into two 64-bit halves.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootspinCount {
    pub lo: u64,
    pub hi: u64,
    pub kind: RootspinCountKind,
}

/// Opaque handle to an immutable root system.
pub struct RootspinSystem {
    inner: RootSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
}

fn fail(e: Error) -> RootspinStatus {
    let status = match e {
        Error::ResourceLimit(_) => RootspinStatus::ResourceLimit,
        Error::CountOverflow | Error::Invariant(_) => RootspinStatus::Internal,
        _ => RootspinStatus::InvalidInput,
    };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> RootspinStatus) -> RootspinStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("panic inside rootspin");
            RootspinStatus::Internal
        }
    }
}

fn family_rank(family: c_char, rank: u32) -> Result<FamilyRank, Error> {
    let letter = (family as u8) as char;
    let family =
        Family::from_letter(letter).ok_or_else(|| Error::InvalidFamily(letter.to_string()))?;
    FamilyRank::new(family, rank as usize)
}

fn export_string(value: String, out: *mut *mut c_char) -> RootspinStatus {
    match CString::new(value) {
        Ok(s) => {
            // SAFETY: callers check `out` for null before reaching here.
            unsafe { *out = s.into_raw() };
            RootspinStatus::Ok
        }
        Err(_) => {
            set_error("string contains an interior NUL");
            RootspinStatus::Internal
        }
    }
}

/// Message describing the last failure on this thread, or NULL. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rootspin_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds the positive roots of `family` (an ASCII letter) at `rank`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_new(
    family: c_char,
    rank: u32,
    out: *mut *mut RootspinSystem,
) -> RootspinStatus {
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    guard(|| match family_rank(family, rank) {
        Ok(id) => {
            let handle = Box::new(RootspinSystem {
                inner: positive_roots(id),
            });
            *out = Box::into_raw(handle);
            RootspinStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// # Safety
/// `system` must be NULL or a handle from [`rootspin_system_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_free(system: *mut RootspinSystem) {
    if !system.is_null() {
        drop(Box::from_raw(system));
    }
}

/// Number of positive roots `r`, or 0 for NULL.
///
/// # Safety
/// `system` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_root_count(system: *const RootspinSystem) -> usize {
    system.as_ref().map_or(0, |s| s.inner.len())
}

/// # Safety
/// `system` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_ambient_dim(system: *const RootspinSystem) -> usize {
    system.as_ref().map_or(0, |s| s.inner.ambient_dim())
}

/// # Safety
/// `system` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_denominator(system: *const RootspinSystem) -> i64 {
    system.as_ref().map_or(0, |s| s.inner.denominator())
}

/// Copies root `index` (0-based) in scaled coordinates into `out`, which
/// must hold `ambient_dim` values.
///
/// # Safety
/// `system` must be a live handle and `out` must point to `out_len`
/// writable `int64_t` values.
#[no_mangle]
pub unsafe extern "C" fn rootspin_system_root(
    system: *const RootspinSystem,
    index: usize,
    out: *mut i64,
    out_len: usize,
) -> RootspinStatus {
    let Some(sys) = system.as_ref() else {
        return RootspinStatus::NullPointer;
    };
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    let sys = &sys.inner;
    if index >= sys.len() {
        return fail(Error::IndexOutOfRange {
            index,
            max: sys.len(),
        });
    }
    if out_len < sys.ambient_dim() {
        set_error("output buffer shorter than ambient_dim");
        return RootspinStatus::BufferTooSmall;
    }
    ptr::copy_nonoverlapping(sys.root(index).as_ptr(), out, sys.ambient_dim());
    RootspinStatus::Ok
}

/// Writes `Σ ε_i a_i` for the signs in `signs` (each +1 or -1).
///
/// # Safety
/// `signs` must point to `len` readable bytes and `out` to `out_len`
/// writable `int64_t` values.
#[no_mangle]
pub unsafe extern "C" fn rootspin_signed_sum(
    system: *const RootspinSystem,
    signs: *const i8,
    len: usize,
    out: *mut i64,
    out_len: usize,
) -> RootspinStatus {
    let Some(sys) = system.as_ref() else {
        return RootspinStatus::NullPointer;
    };
    if signs.is_null() || out.is_null() {
        return RootspinStatus::NullPointer;
    }
    let sys = &sys.inner;
    if out_len < sys.ambient_dim() {
        set_error("output buffer shorter than ambient_dim");
        return RootspinStatus::BufferTooSmall;
    }
    let signs = std::slice::from_raw_parts(signs, len).to_vec();
    guard(|| {
        let result = SignVector::new(signs).and_then(|eps| sigsum::signed_sum(sys, &eps));
        match result {
            Ok(sum) => {
                ptr::copy_nonoverlapping(sum.as_ptr(), out, sum.len());
                RootspinStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Exact number of zero signed sums. `max_r` of 0 selects the default.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rootspin_count(
    system: *const RootspinSystem,
    method: RootspinMethod,
    max_r: u32,
    out: *mut RootspinCount,
) -> RootspinStatus {
    let Some(sys) = system.as_ref() else {
        return RootspinStatus::NullPointer;
    };
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    let mut opts = CountOptions {
        method: match method {
            RootspinMethod::Auto => MethodChoice::Auto,
            RootspinMethod::Brute => MethodChoice::Brute,
            RootspinMethod::Mitm => MethodChoice::Mitm,
        },
        ..CountOptions::default()
    };
    if max_r > 0 {
        opts.max_r = max_r as usize;
    }
    guard(|| match analysis::count(&sys.inner, &opts) {
        Ok(result) => {
            *out = RootspinCount {
                lo: result.value as u64,
                hi: (result.value >> 64) as u64,
                kind: match result.kind {
                    CountKind::Exact => RootspinCountKind::Exact,
                    CountKind::LowerBound => RootspinCountKind::LowerBound,
                    CountKind::ExistsOnly => RootspinCountKind::ExistsOnly,
                    CountKind::Zero => RootspinCountKind::Zero,
                },
            };
            RootspinStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Sets `*passes` to whether `Σ a_i ∈ 2L`. A failing test proves that no
/// zero signed sum exists.
///
/// # Safety
/// `system` must be a live handle and `passes` writable.
#[no_mangle]
pub unsafe extern "C" fn rootspin_obstruction(
    system: *const RootspinSystem,
    passes: *mut bool,
) -> RootspinStatus {
    let Some(sys) = system.as_ref() else {
        return RootspinStatus::NullPointer;
    };
    if passes.is_null() {
        return RootspinStatus::NullPointer;
    }
    guard(|| {
        *passes = matches!(sigsum::obstruction_2l(&sys.inner), Obstruction::Pass);
        RootspinStatus::Ok
    })
}

/// Joint kernel dimension of the Cartan action on the spin representation.
/// `max_r` of 0 selects the default.
///
/// # Safety
/// `system` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rootspin_invariant_dimension(
    system: *const RootspinSystem,
    max_r: u32,
    out: *mut u64,
) -> RootspinStatus {
    let Some(sys) = system.as_ref() else {
        return RootspinStatus::NullPointer;
    };
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    let limit = if max_r == 0 {
        spinor::DEFAULT_ORACLE_LIMIT
    } else {
        max_r as usize
    };
    guard(|| match spinor::invariant_dimension(&sys.inner, limit) {
        Ok(d) => {
            *out = d as u64;
            RootspinStatus::Ok
        }
        Err(e) => fail(e),
    })
}

/// Full analysis report as a JSON string with sorted keys. `max_r` of 0
/// selects the default. When exact counting is skipped the report still
/// carries existence and the known lower bound.
///
/// # Safety
/// `out` must be writable; release the string with [`rootspin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rootspin_analyze_json(
    family: c_char,
    rank: u32,
    max_r: u32,
    out: *mut *mut c_char,
) -> RootspinStatus {
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    guard(|| {
        let id = match family_rank(family, rank) {
            Ok(id) => id,
            Err(e) => return fail(e),
        };
        let mut opts = CountOptions::default();
        if max_r > 0 {
            opts.max_r = max_r as usize;
        }
        match analysis::analyze(id, &opts) {
            Ok(report) => export_string(report.to_json().to_string(), out),
            Err(e) => fail(e),
        }
    })
}

/// Verified certificate as JSON, or `{"available":false,…}`.
///
/// # Safety
/// `out` must be writable; release the string with [`rootspin_string_free`].
#[no_mangle]
pub unsafe extern "C" fn rootspin_certify_json(
    family: c_char,
    rank: u32,
    out: *mut *mut c_char,
) -> RootspinStatus {
    if out.is_null() {
        return RootspinStatus::NullPointer;
    }
    guard(|| {
        let result = family_rank(family, rank).and_then(analysis::certify_json);
        match result {
            Ok(value) => export_string(value.to_string(), out),
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rootspin_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
