//! C ABI over `nilfibre`.
//!
//! Every entry point returns an [`NfStatus`]. Strings handed out through
//! `out` parameters are NUL-terminated, owned by the caller and released with
//! [`nf_string_free`]. The message of the most recent failure on the calling
//! thread is available from [`nf_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nilfibre::census::{census, verify_composition, CensusOptions};
use nilfibre::invariant::bs_invariant;
use nilfibre::reverse::ColoredTableau;
use nilfibre::shape::{m_basis, neighbouring_pairs, standard_tableau, Composition};
use nilfibre::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidComposition = 3,
    Parse = 4,
    LimitExceeded = 5,
    /// A pair could not be implemented or a choice was illegal.
    Implementation = 6,
    /// An enabling, structure or factorization check failed.
    Verification = 7,
    Algebra = 8,
    Panic = 9,
}

/// Opaque handle to a validated composition.
pub struct NfComposition {
    inner: Composition,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(e: &Error) -> NfStatus {
    match e {
        Error::InvalidComposition(_) => NfStatus::InvalidComposition,
        Error::Parse(_) => NfStatus::Parse,
        Error::LimitExceeded { .. } => NfStatus::LimitExceeded,
        Error::UnknownPair { .. }
        | Error::AlreadyImplemented { .. }
        | Error::NotImplementable { .. }
        | Error::IllegalChoice { .. }
        | Error::IllegalMove(_) => NfStatus::Implementation,
        Error::Enabling { .. }
        | Error::Structure { .. }
        | Error::NotFree { .. }
        | Error::DegenerateMinor { .. }
        | Error::UnbalancedMinor { .. } => NfStatus::Verification,
        _ => NfStatus::Algebra,
    }
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), NfStatus>) -> NfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            NfStatus::Ok
        }
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic");
            NfStatus::Panic
        }
    }
}

fn lib<T>(r: Result<T, Error>) -> Result<T, NfStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn fail(status: NfStatus, msg: &str) -> NfStatus {
    set_error(msg);
    status
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), NfStatus> {
    if out.is_null() {
        return Err(fail(NfStatus::NullPointer, "output pointer is null"));
    }
    let c = CString::new(s).map_err(|_| fail(NfStatus::Algebra, "output contains NUL"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a>(h: *const NfComposition) -> Result<&'a Composition, NfStatus> {
    h.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(NfStatus::NullPointer, "composition handle is null"))
}

/// Parses a composition such as `"1,2,2,1"` into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nf_composition_new(text: *const c_char, out: *mut *mut NfComposition) -> NfStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(fail(NfStatus::NullPointer, "null argument"));
        }
        *out = ptr::null_mut();
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| fail(NfStatus::InvalidUtf8, "composition is not UTF-8"))?;
        let inner: Composition = lib(s.parse())?;
        *out = Box::into_raw(Box::new(NfComposition { inner }));
        Ok(())
    })
}

/// # Safety
/// `h` must come from [`nf_composition_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn nf_composition_free(h: *mut NfComposition) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of neighbouring pairs.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_composition_pair_count(h: *const NfComposition, out: *mut usize) -> NfStatus {
    guard(|| {
        let comp = handle(h)?;
        if out.is_null() {
            return Err(fail(NfStatus::NullPointer, "output pointer is null"));
        }
        *out = neighbouring_pairs(comp).len();
        Ok(())
    })
}

/// ASCII rendering of the standard tableau.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_tableau_ascii(h: *const NfComposition, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let comp = handle(h)?;
        let rt = ColoredTableau::init(&standard_tableau(comp));
        write_string(out, rt.render_ascii())
    })
}

/// One line per neighbouring pair: label, degree and invariant.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_invariants_text(h: *const NfComposition, out: *mut *mut c_char) -> NfStatus {
    guard(|| {
        let comp = handle(h)?;
        let t = standard_tableau(comp);
        let basis = m_basis(comp);
        let mut s = String::new();
        for p in neighbouring_pairs(comp) {
            let inv = lib(bs_invariant(&t, &p, &basis))?;
            s.push_str(&format!("{} degree {}: {}\n", inv.pair, inv.degree, inv.poly));
        }
        write_string(out, s)
    })
}

/// Component census as JSON. A `limit` of 0 selects the default guard.
///
/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_census_json(
    h: *const NfComposition,
    limit: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> NfStatus {
    guard(|| {
        let comp = handle(h)?;
        let opts = CensusOptions {
            limit: (limit != 0).then_some(limit),
            seed,
            ..CensusOptions::default()
        };
        let rep = lib(census(comp, &opts))?;
        write_string(out, rep.to_json())
    })
}

/// Runs every check; `*passed` is 1 when all sections pass.
///
/// # Safety
/// `h` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn nf_verify(h: *const NfComposition, passed: *mut i32) -> NfStatus {
    guard(|| {
        let comp = handle(h)?;
        if passed.is_null() {
            return Err(fail(NfStatus::NullPointer, "output pointer is null"));
        }
        let rep = lib(verify_composition(comp, &CensusOptions::default()))?;
        *passed = rep.ok() as i32;
        Ok(())
    })
}

/// Copy of the last error message on this thread, or null if the previous
/// call succeeded.
#[no_mangle]
pub extern "C" fn nf_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().clone().map_or(ptr::null_mut(), CString::into_raw))
}

/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn nf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
