//! C ABI for the λ-umbral library.
//!
//! Conventions:
//!
//! * Polynomials in Q\[λ\]\[x\] travel as opaque `LumPoly` handles; free them
//!   with [`lum_poly_free`].
//! * Rationals cross the boundary as `p/q` strings; polynomials as the
//!   nested-array JSON used everywhere else in the project.
//! * Every function returns a [`LumStatus`] code; returned strings are
//!   allocated by this library and must be released with
//!   [`lum_string_free`].
//! * On any non-OK status, [`lum_last_error_message`] returns a
//!   thread-local description valid until the next call on that thread.
//!
//! The header `include/lambda_umbral.h` is generated by cbindgen at build
//! time.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;

use lambda_umbral::degen::{falling_factorial, FallingMode};
use lambda_umbral::exact::display::{lpoly_string, rat_string, xpoly_string, Style};
use lambda_umbral::exact::{Rat, XPoly};
use lambda_umbral::families;
use lambda_umbral::identities::{self, IdentityId, ParamGrid};

/// Result code of every FFI call.
#[repr(i32)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LumStatus {
    /// Success; for `lum_verify`, the verification passed.
    Ok = 0,
    /// The verification ran to completion and failed.
    VerifyFailed = 1,
    /// An argument was structurally invalid (range, flag combination, id).
    InvalidArgument = 2,
    /// A required pointer was null.
    NullPointer = 3,
    /// A string did not parse (rational grammar, UTF-8, JSON).
    ParseError = 4,
    /// Unexpected internal failure.
    InternalError = 5,
}

/// Opaque handle to an exact polynomial in Q\[λ\]\[x\].
pub struct LumPoly {
    inner: XPoly,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let message = message.into();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(message).ok();
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| slot.borrow_mut().take());
}

/// The description of the most recent error on this thread, or null.
/// The pointer stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn lum_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr())
    })
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn lum_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

fn guard(f: impl FnOnce() -> LumStatus) -> LumStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| (*s).to_owned())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic in library call".to_owned());
            set_error(message);
            LumStatus::InternalError
        }
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LumStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(LumStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8");
        LumStatus::ParseError
    })
}

fn write_poly(out: *mut *mut LumPoly, poly: XPoly) -> LumStatus {
    if out.is_null() {
        set_error("null output pointer");
        return LumStatus::NullPointer;
    }
    unsafe {
        *out = Box::into_raw(Box::new(LumPoly { inner: poly }));
    }
    LumStatus::Ok
}

fn write_string(out: *mut *mut c_char, value: String) -> LumStatus {
    if out.is_null() {
        set_error("null output pointer");
        return LumStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(s) => {
            unsafe { *out = s.into_raw() };
            LumStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL byte");
            LumStatus::InternalError
        }
    }
}

/// # Safety
/// `p` must be null or a handle previously returned by this library.
unsafe fn read_poly<'a>(p: *const LumPoly) -> Result<&'a XPoly, LumStatus> {
    if p.is_null() {
        set_error("null polynomial handle");
        return Err(LumStatus::NullPointer);
    }
    Ok(&(*p).inner)
}

// ── Family constructors ─────────────────────────────────────────────────────

/// Degree-n degenerate poly-Bernoulli polynomial for integer order k.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_bernoulli(
    k: i64,
    n: u32,
    out: *mut *mut LumPoly,
) -> LumStatus {
    guard(|| write_poly(out, families::poly_bernoulli(k, n as usize)))
}

/// Degree-n degenerate Bernoulli polynomial of order r ≥ 1.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn lum_bernoulli_order(
    r: u32,
    n: u32,
    out: *mut *mut LumPoly,
) -> LumStatus {
    guard(|| {
        if r == 0 {
            set_error("order r must be a positive integer");
            return LumStatus::InvalidArgument;
        }
        write_poly(out, families::bernoulli_order(r, n as usize))
    })
}

/// Degree-n degenerate derangement polynomial of order r ≥ 1.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn lum_derangement_order(
    r: u32,
    n: u32,
    out: *mut *mut LumPoly,
) -> LumStatus {
    guard(|| {
        if r == 0 {
            set_error("order r must be a positive integer");
            return LumStatus::InvalidArgument;
        }
        write_poly(out, families::derangement_order(r, n as usize))
    })
}

/// The falling factorial of degree n: λ-deformed when `deformed` is true,
/// plain otherwise.
///
/// # Safety
/// `out` must be a valid pointer to a handle slot.
#[no_mangle]
pub unsafe extern "C" fn lum_falling_factorial(
    n: u32,
    deformed: bool,
    out: *mut *mut LumPoly,
) -> LumStatus {
    guard(|| {
        let mode = if deformed { FallingMode::Lambda } else { FallingMode::Plain };
        write_poly(out, falling_factorial(n as usize, mode))
    })
}

// ── Polynomial operations ───────────────────────────────────────────────────

/// Parses the nested-array JSON form of a polynomial in Q\[λ\]\[x\].
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_parse_json(
    json: *const c_char,
    out: *mut *mut LumPoly,
) -> LumStatus {
    guard(|| {
        let text = match read_str(json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        match serde_json::from_str::<XPoly>(text) {
            Ok(poly) => write_poly(out, poly),
            Err(e) => {
                set_error(format!("polynomial JSON did not parse: {e}"));
                LumStatus::ParseError
            }
        }
    })
}

/// Serializes a polynomial to its canonical JSON form.
///
/// # Safety
/// `p` must be a live handle; `out` a valid slot. Free the string with
/// [`lum_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lum_poly_to_json(
    p: *const LumPoly,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| {
        let poly = match read_poly(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        match serde_json::to_string(poly) {
            Ok(json) => write_string(out, json),
            Err(e) => {
                set_error(format!("serialization failed: {e}"));
                LumStatus::InternalError
            }
        }
    })
}

/// Renders a polynomial as plain text (`x^2 - λ*x`, UTF-8).
///
/// # Safety
/// `p` must be a live handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_to_text(
    p: *const LumPoly,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| match read_poly(p) {
        Ok(poly) => write_string(out, xpoly_string(poly, Style::Text)),
        Err(status) => status,
    })
}

/// Renders a polynomial as LaTeX math.
///
/// # Safety
/// `p` must be a live handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_to_latex(
    p: *const LumPoly,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| match read_poly(p) {
        Ok(poly) => write_string(out, xpoly_string(poly, Style::Latex)),
        Err(status) => status,
    })
}

/// Degree in x, or −1 for the zero polynomial.
///
/// # Safety
/// `p` must be a live handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_degree(p: *const LumPoly, out: *mut i64) -> LumStatus {
    guard(|| {
        let poly = match read_poly(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        if out.is_null() {
            set_error("null output pointer");
            return LumStatus::NullPointer;
        }
        *out = poly.x_degree().map_or(-1, |d| d as i64);
        LumStatus::Ok
    })
}

/// Structural equality of two polynomials.
///
/// # Safety
/// `a` and `b` must be live handles; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_equal(
    a: *const LumPoly,
    b: *const LumPoly,
    out: *mut bool,
) -> LumStatus {
    guard(|| {
        let (pa, pb) = match (read_poly(a), read_poly(b)) {
            (Ok(pa), Ok(pb)) => (pa, pb),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        if out.is_null() {
            set_error("null output pointer");
            return LumStatus::NullPointer;
        }
        *out = pa == pb;
        LumStatus::Ok
    })
}

/// Evaluates at rational λ and x (both as `p/q` strings); writes the exact
/// rational result as a string.
///
/// # Safety
/// `p` must be a live handle; `lambda` and `x` valid strings; `out` a slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_eval(
    p: *const LumPoly,
    lambda: *const c_char,
    x: *const c_char,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| {
        let poly = match read_poly(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        let parse_rat = |s: *const c_char| -> Result<Rat, LumStatus> {
            let text = read_str(s)?;
            text.parse::<Rat>().map_err(|e| {
                set_error(format!("rational `{text}` did not parse: {e}"));
                LumStatus::ParseError
            })
        };
        let lam = match parse_rat(lambda) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let x_val = match parse_rat(x) {
            Ok(v) => v,
            Err(status) => return status,
        };
        let value = poly.eval_lambda(&lam).eval(&x_val);
        write_string(out, rat_string(&value, Style::Text))
    })
}

/// Evaluates only λ, leaving a polynomial in x rendered as text.
///
/// # Safety
/// `p` must be a live handle; `lambda` a valid string; `out` a slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_eval_lambda(
    p: *const LumPoly,
    lambda: *const c_char,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| {
        let poly = match read_poly(p) {
            Ok(poly) => poly,
            Err(status) => return status,
        };
        let text = match read_str(lambda) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let lam = match text.parse::<Rat>() {
            Ok(v) => v,
            Err(e) => {
                set_error(format!("rational `{text}` did not parse: {e}"));
                return LumStatus::ParseError;
            }
        };
        let specialized = poly.eval_lambda(&lam);
        write_string(
            out,
            lambda_umbral::exact::display::qpoly_string(&specialized, Style::Text),
        )
    })
}

/// The value of a polynomial at x = 0 as a λ-polynomial string (the family
/// "number" form).
///
/// # Safety
/// `p` must be a live handle; `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_number_form(
    p: *const LumPoly,
    out: *mut *mut c_char,
) -> LumStatus {
    guard(|| match read_poly(p) {
        Ok(poly) => {
            let number = poly.eval_x(&Rat::zero());
            write_string(out, lpoly_string(&number, Style::Text))
        }
        Err(status) => status,
    })
}

// ── Verification ────────────────────────────────────────────────────────────

/// Verifies one identity (by catalog id) or the whole catalog (`"all"`)
/// over the default parameter sets with the given degree bound, writing the
/// JSON report. Returns `Ok` on pass, `VerifyFailed` on failure.
///
/// # Safety
/// `identity` must be a valid string; `report_json` may be null when the
/// caller only wants the status.
#[no_mangle]
pub unsafe extern "C" fn lum_verify(
    identity: *const c_char,
    n_max: u32,
    report_json: *mut *mut c_char,
) -> LumStatus {
    guard(|| {
        let name = match read_str(identity) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let grid = ParamGrid::with_n_max(n_max as usize);
        let (pass, json) = if name == "all" {
            let summary = identities::verify_all(&grid);
            (summary.aggregate_pass, serde_json::to_string(&summary))
        } else {
            let id: IdentityId = match name.parse() {
                Ok(id) => id,
                Err(e) => {
                    set_error(e);
                    return LumStatus::InvalidArgument;
                }
            };
            let report = identities::verify(id, &grid);
            (report.pass(), serde_json::to_string(&report))
        };
        let json = match json {
            Ok(j) => j,
            Err(e) => {
                set_error(format!("report serialization failed: {e}"));
                return LumStatus::InternalError;
            }
        };
        if !report_json.is_null() {
            let status = write_string(report_json, json);
            if status != LumStatus::Ok {
                return status;
            }
        }
        if pass {
            LumStatus::Ok
        } else {
            set_error("verification failed; see report for witnesses");
            LumStatus::VerifyFailed
        }
    })
}

// ── Memory management ───────────────────────────────────────────────────────

/// Releases a polynomial handle. Null is a no-op.
///
/// # Safety
/// `p` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lum_poly_free(p: *mut LumPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `s` must be null or a string from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lum_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
