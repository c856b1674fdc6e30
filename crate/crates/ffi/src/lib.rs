//! C interface to `weylcluster`.
//!
//! Every function returns a [`WcStatus`]; results come back through out
//! pointers. Handles are opaque and freed with their `_free` function.
//! Strings returned by the library are freed with [`wc_string_free`]. The
//! message of the last failure on the calling thread is available from
//! [`wc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylcluster::catword::{parse_word, Alternation, CatError};
use weylcluster::cli::{parse_seq, parse_spec, run_suite, CliError, ConventionName};
use weylcluster::oracle::eval_triple;
use weylcluster::preseed::{ClusterTriple, Preseed, PreseedError};
use weylcluster::zigzag::{zigzag, ZigzagPresentation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    IndexOutOfRange = 4,
    CheckFailed = 5,
    Internal = 6,
}

/// A Weyl preseed.
pub struct WcPreseed(Preseed);

/// A zigzag presentation of a single word.
pub struct WcZigzag(ZigzagPresentation);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn cli_status(e: &CliError) -> WcStatus {
    match e {
        CliError::Preseed(PreseedError::IndexOutOfRange(..))
        | CliError::Step { .. }
        | CliError::Cat(CatError::IndexOutOfRange(..)) => WcStatus::IndexOutOfRange,
        CliError::Spec { .. } | CliError::Parse { .. } | CliError::UnknownSuite(_) => {
            WcStatus::Parse
        }
        _ => WcStatus::CheckFailed,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (WcStatus, String)>) -> WcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WcStatus::Ok,
        Ok(Err((st, msg))) => {
            set_error(msg);
            st
        }
        Err(_) => {
            set_error("internal panic");
            WcStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (WcStatus, String)> {
    if p.is_null() {
        return Err((WcStatus::NullPointer, "null string".into()));
    }
    // SAFETY: caller passes a valid nul-terminated string.
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| (WcStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, v: T) -> Result<(), (WcStatus, String)> {
    if out.is_null() {
        return Err((WcStatus::NullPointer, "null out pointer".into()));
    }
    // SAFETY: checked non-null; caller provides writable storage.
    unsafe { out.write(v) };
    Ok(())
}

unsafe fn handle<'a, T>(h: *const T) -> Result<&'a T, (WcStatus, String)> {
    // SAFETY: caller passes a live handle from this library or null.
    unsafe { h.as_ref() }.ok_or((WcStatus::NullPointer, "null handle".into()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

/// Parses a TOML preseed spec into a new handle.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_preseed_from_spec(spec: *const c_char, out: *mut *mut WcPreseed) -> WcStatus {
    guard(|| {
        let text = unsafe { read_str(spec) }?;
        let p = parse_spec(text, "<spec>").map_err(|e| (cli_status(&e), e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(WcPreseed(p.preseed)))) }
    })
}

/// # Safety
/// `p` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_preseed_free(p: *mut WcPreseed) {
    if !p.is_null() {
        // SAFETY: handle came from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(p) });
    }
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_preseed_rank(p: *const WcPreseed, out: *mut usize) -> WcStatus {
    guard(|| {
        let p = unsafe { handle(p) }?;
        unsafe { write_out(out, p.0.rank()) }
    })
}

/// Applies a sequence such as `"1R 2L"` and returns a new handle.
///
/// # Safety
/// `p` must be a live handle, `seq` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_preseed_mutate(
    p: *const WcPreseed,
    seq: *const c_char,
    out: *mut *mut WcPreseed,
) -> WcStatus {
    guard(|| {
        let p = unsafe { handle(p) }?;
        let text = unsafe { read_str(seq) }?;
        let s = parse_seq(text, p.0.rank()).map_err(|e| (cli_status(&e), e.to_string()))?;
        let q = p
            .0
            .apply_seq(&s)
            .map_err(|e| (WcStatus::IndexOutOfRange, e.to_string()))?;
        unsafe { write_out(out, Box::into_raw(Box::new(WcPreseed(q)))) }
    })
}

/// Writes the cluster as text, e.g. `"xi*x*xi^-1"`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_preseed_cluster(p: *const WcPreseed, out: *mut *mut c_char) -> WcStatus {
    guard(|| {
        let p = unsafe { handle(p) }?;
        unsafe { write_out(out, to_c(p.0.render_cluster())) }
    })
}

/// Writes the skew Laurent value of the cluster variable at `position` along
/// direction `dir`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_eval_position(
    p: *const WcPreseed,
    dir: usize,
    position: i64,
    out: *mut *mut c_char,
) -> WcStatus {
    guard(|| {
        let p = unsafe { handle(p) }?;
        if dir == 0 || dir > p.0.rank() {
            return Err((
                WcStatus::IndexOutOfRange,
                format!("direction {dir} out of range"),
            ));
        }
        let v = eval_triple(&ClusterTriple::at_position(dir, position), &p.0)
            .map_err(|e| (WcStatus::CheckFailed, e.to_string()))?;
        unsafe { write_out(out, to_c(v.render(p.0.gens()))) }
    })
}

/// Runs a check suite; `passed` receives 1 on pass, 0 otherwise. A
/// discrepancy report counts as not passed.
///
/// # Safety
/// `p` must be a live handle, `suite` a nul-terminated string, `passed`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn wc_verify(
    p: *const WcPreseed,
    suite: *const c_char,
    bound: usize,
    passed: *mut i32,
) -> WcStatus {
    guard(|| {
        let p = unsafe { handle(p) }?;
        let name = unsafe { read_str(suite) }?;
        let r = run_suite(&p.0, name, bound, ConventionName::Literal)
            .map_err(|e| (cli_status(&e), e.to_string()))?;
        unsafe { write_out(passed, i32::from(r.status == "pass")) }
    })
}

/// Zigzag of `word` (e.g. `"xi^-1 * eta"`) in a rank-1 orbit. `alternation`
/// is 0 for `ε` first on both sides, 1 for `ξ` first on the left.
///
/// # Safety
/// `word` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_zigzag_new(
    word: *const c_char,
    parity: i64,
    window: i64,
    alternation: i32,
    out: *mut *mut WcZigzag,
) -> WcStatus {
    guard(|| {
        let text = unsafe { read_str(word) }?;
        let w = parse_word(text, 1, 1).map_err(|e| (WcStatus::Parse, e.to_string()))?;
        let alt = match alternation {
            0 => Alternation::UNIFORM,
            1 => Alternation::SPLIT,
            a => return Err((WcStatus::IndexOutOfRange, format!("alternation {a}"))),
        };
        let z = zigzag(&w, parity, window.max(1), alt);
        unsafe { write_out(out, Box::into_raw(Box::new(WcZigzag(z)))) }
    })
}

/// # Safety
/// `z` must be a live handle; `length` and `height` writable.
#[no_mangle]
pub unsafe extern "C" fn wc_zigzag_shape(z: *const WcZigzag, length: *mut usize, height: *mut usize) -> WcStatus {
    guard(|| {
        let z = unsafe { handle(z) }?;
        unsafe { write_out(length, z.0.length) }?;
        unsafe { write_out(height, z.0.height) }
    })
}

/// # Safety
/// `z` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_zigzag_free(z: *mut WcZigzag) {
    if !z.is_null() {
        // SAFETY: handle came from Box::into_raw in this library.
        drop(unsafe { Box::from_raw(z) });
    }
}

/// Message of the last failure on this thread, or null. The string stays
/// owned by the library until the next failing call.
#[no_mangle]
pub extern "C" fn wc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wc_string_free(s: *mut c_char) {
    if !s.is_null() {
        // SAFETY: string came from CString::into_raw in this library.
        drop(unsafe { CString::from_raw(s) });
    }
}
