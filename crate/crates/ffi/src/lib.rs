//! C interface to `hardy-sums`.
//!
//! Every function returns a [`HardyStatus`]; results go through out
//! pointers. Strings handed out by the library must be released with
//! [`hardy_string_free`], handles with their matching `_free` function. The
//! message of the most recent failure on the calling thread is available
//! from [`hardy_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hardy_sums::density::{construct, DensityRequest, Target};
use hardy_sums::qverify::{CocycleReport, HalfPlanePoint, SeriesParams, Verifier};
use hardy_sums::sums::{self, dedekind_recursive, hardy_s4_from_cfe, hardy_s_from_cfe};
use hardy_sums::{ContinuedFraction, Error, GroupTag, Mat2, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Status codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotCoprime = 3,
    ParityViolation = 4,
    NotInGroup = 5,
    MalformedExpansion = 6,
    OutOfRange = 7,
    Convergence = 8,
    BranchAmbiguity = 9,
    Overflow = 10,
    Internal = 11,
}

/// Which expansion [`hardy_expansion_new`] computes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyExpansionKind {
    Theta = 0,
    Gamma02 = 1,
    Classical = 2,
    ClassicalOdd = 3,
    AllEven = 4,
}

/// Target of [`hardy_density`]. `m2` is ignored except for `Joint`.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyDensityKind {
    S = 0,
    S4 = 1,
    Joint = 2,
}

/// Result of one numeric identity check.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HardyReport {
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_error: f64,
    pub pass: bool,
}

/// Opaque continued fraction.
pub struct HardyExpansion(ContinuedFraction);

/// Opaque q-series evaluator with its precomputed tables.
pub struct HardyVerifier(Verifier);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HardyStatus {
    match e {
        Error::ZeroDenominator | Error::NonPositiveModulus(_) | Error::Parse(_) => HardyStatus::InvalidArgument,
        Error::NotCoprime { .. } => HardyStatus::NotCoprime,
        Error::ThetaParity { .. } | Error::Gamma02Parity { .. } => HardyStatus::ParityViolation,
        Error::NotInGroup(_) | Error::NotUnimodular => HardyStatus::NotInGroup,
        Error::MalformedExpansion(_) => HardyStatus::MalformedExpansion,
        Error::OutOfRange(_) | Error::UnsupportedWord(_) => HardyStatus::OutOfRange,
        Error::Convergence(_) => HardyStatus::Convergence,
        Error::BranchAmbiguity(_) => HardyStatus::BranchAmbiguity,
        Error::Internal(_) => HardyStatus::Internal,
    }
}

enum Failure {
    Lib(Error),
    Null(&'static str),
    Overflow(String),
    Utf8(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, turning errors and panics into a status plus message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HardyStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HardyStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            HardyStatus::NullPointer
        }
        Ok(Err(Failure::Overflow(msg))) => {
            set_error(msg);
            HardyStatus::Overflow
        }
        Ok(Err(Failure::Utf8(what))) => {
            set_error(format!("{what} is not valid UTF-8"));
            HardyStatus::InvalidArgument
        }
        Err(_) => {
            set_error("internal panic".into());
            HardyStatus::Internal
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &'static str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or(Failure::Null(what))
}

unsafe fn input<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8(what))
}

fn to_i64(x: &BigInt) -> Result<i64, Failure> {
    x.to_i64().ok_or_else(|| Failure::Overflow(format!("{x} does not fit in 64 bits")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings have no nul").into_raw()
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hardy_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn hardy_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `S(d, c)` from the theta expansion.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_s(d: i64, c: i64, out_value: *mut i64) -> HardyStatus {
    guard(|| {
        let v = to_i64(&hardy_s_from_cfe(d, c)?)?;
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// `S₄(d, c)` from the `Γ⁰(2)` expansion.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_s4(d: i64, c: i64, out_value: *mut i64) -> HardyStatus {
    guard(|| {
        let v = to_i64(&hardy_s4_from_cfe(d, c)?)?;
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// `S(d, c)` by summing all `c − 1` terms.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_s_direct(d: i64, c: i64, out_value: *mut i64) -> HardyStatus {
    guard(|| {
        let v = sums::hardy_s_direct(d, c)?;
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// `S₄(d, c)` by summing all `c − 1` terms.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_s4_direct(d: i64, c: i64, out_value: *mut i64) -> HardyStatus {
    guard(|| {
        let v = sums::hardy_s4_direct(d, c)?;
        *out(out_value, "out_value")? = v;
        Ok(())
    })
}

/// `S` or `S₄` (per `fourth`) for decimal integer strings of any size; the
/// value is returned as a decimal string.
///
/// # Safety
/// `d` and `c` must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_sum_big(
    d: *const c_char,
    c: *const c_char,
    fourth: bool,
    out_value: *mut *mut c_char,
) -> HardyStatus {
    guard(|| {
        let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Parse(format!("`{s}` is not an integer")));
        let (d, c) = (parse(input(d, "d")?)?, parse(input(c, "c")?)?);
        let v = if fourth { hardy_s4_from_cfe(d, c)? } else { hardy_s_from_cfe(d, c)? };
        *out(out_value, "out_value")? = to_c_string(v.to_string());
        Ok(())
    })
}

/// Dedekind sum `s(d, c) = num/den` in lowest terms.
///
/// # Safety
/// `num` and `den` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_dedekind(d: i64, c: i64, num: *mut i64, den: *mut i64) -> HardyStatus {
    guard(|| {
        let v = dedekind_recursive(d, c)?;
        let (n, m) = (to_i64(v.numer())?, to_i64(v.denom())?);
        *out(num, "num")? = n;
        *out(den, "den")? = m;
        Ok(())
    })
}

/// Expands the rational `x` (`"p/q"` or an integer).
///
/// # Safety
/// `x` must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_new(
    kind: HardyExpansionKind,
    x: *const c_char,
    out_handle: *mut *mut HardyExpansion,
) -> HardyStatus {
    use hardy_sums::cfe::*;
    guard(|| {
        let r: Rational = input(x, "x")?.parse()?;
        let cf = match kind {
            HardyExpansionKind::Theta => expand_theta(&r)?,
            HardyExpansionKind::Gamma02 => expand_gamma02(&r)?,
            HardyExpansionKind::Classical => expand_classical(&r)?,
            HardyExpansionKind::ClassicalOdd => expand_classical_odd(&r)?,
            HardyExpansionKind::AllEven => expand_all_even(&r)?,
        };
        *out(out_handle, "out_handle")? = Box::into_raw(Box::new(HardyExpansion(cf)));
        Ok(())
    })
}

/// Parses bracket notation: `[[...]]` for theta expansions, `[...]` for
/// `Γ⁰(2)` ones.
///
/// # Safety
/// `text` must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_parse(
    text: *const c_char,
    out_handle: *mut *mut HardyExpansion,
) -> HardyStatus {
    guard(|| {
        let cf: ContinuedFraction = input(text, "text")?.parse()?;
        *out(out_handle, "out_handle")? = Box::into_raw(Box::new(HardyExpansion(cf)));
        Ok(())
    })
}

/// Number of partial quotients, not counting the head.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_len(h: *const HardyExpansion, out_len: *mut usize) -> HardyStatus {
    guard(|| {
        let h = h.as_ref().ok_or(Failure::Null("handle"))?;
        *out(out_len, "out_len")? = h.0.len();
        Ok(())
    })
}

/// Partial quotient `index` (0-based).
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_quotient(
    h: *const HardyExpansion,
    index: usize,
    out_value: *mut i64,
) -> HardyStatus {
    guard(|| {
        let h = h.as_ref().ok_or(Failure::Null("handle"))?;
        let q = h.0.quotients().get(index).ok_or_else(|| {
            Error::OutOfRange(format!("index {index} with {} quotients", h.0.len()))
        })?;
        *out(out_value, "out_value")? = to_i64(q)?;
        Ok(())
    })
}

/// Bracket notation of the expansion.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_to_string(
    h: *const HardyExpansion,
    out_text: *mut *mut c_char,
) -> HardyStatus {
    guard(|| {
        let h = h.as_ref().ok_or(Failure::Null("handle"))?;
        *out(out_text, "out_text")? = to_c_string(h.0.to_string());
        Ok(())
    })
}

/// Exact value as `"p/q"`.
///
/// # Safety
/// `h` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_value(
    h: *const HardyExpansion,
    out_text: *mut *mut c_char,
) -> HardyStatus {
    guard(|| {
        let h = h.as_ref().ok_or(Failure::Null("handle"))?;
        *out(out_text, "out_text")? = to_c_string(h.0.value()?.to_string());
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hardy_expansion_free(h: *mut HardyExpansion) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Finds `d/c` within `eps` of `x` with the requested sums and writes the
/// witness as a JSON object.
///
/// # Safety
/// `x` and `eps` must be nul-terminated; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_density(
    kind: HardyDensityKind,
    x: *const c_char,
    eps: *const c_char,
    m1: i64,
    m2: i64,
    out_json: *mut *mut c_char,
) -> HardyStatus {
    guard(|| {
        let target = match kind {
            HardyDensityKind::S => Target::S { m: m1 },
            HardyDensityKind::S4 => Target::S4 { m: m1 },
            HardyDensityKind::Joint => Target::Joint { m1, m2 },
        };
        let req = DensityRequest { x: input(x, "x")?.parse()?, epsilon: input(eps, "eps")?.parse()?, target };
        let w = construct(&req)?;
        let text = serde_json::to_string(&w).map_err(|e| Error::Internal(e.to_string()))?;
        *out(out_json, "out_json")? = to_c_string(text);
        Ok(())
    })
}

/// Builds an evaluator truncating series after `terms` terms, with
/// `quad_nodes` quadrature nodes per panel and tolerance `tol`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_verifier_new(
    terms: usize,
    quad_nodes: usize,
    tol: f64,
    out_handle: *mut *mut HardyVerifier,
) -> HardyStatus {
    guard(|| {
        let params = SeriesParams::new(terms, quad_nodes, tol)?;
        *out(out_handle, "out_handle")? = Box::into_raw(Box::new(HardyVerifier(Verifier::new(params))));
        Ok(())
    })
}

/// # Safety
/// `h` must come from this library and not have been freed. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn hardy_verifier_free(h: *mut HardyVerifier) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Which transformation law [`hardy_verifier_check`] tests.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HardyLaw {
    E2 = 0,
    Eta = 1,
    Theta = 2,
    Theta4 = 3,
}

fn fill(report: CocycleReport) -> HardyReport {
    HardyReport {
        lhs_re: report.lhs.re,
        lhs_im: report.lhs.im,
        rhs_re: report.rhs.re,
        rhs_im: report.rhs.im,
        abs_error: report.abs_error,
        pass: report.pass,
    }
}

/// Checks the transformation law `law` for the matrix `(a b; c d)` at the
/// point `re + i·im`.
///
/// # Safety
/// `h` must be a live handle; `out` must be valid for writes.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn hardy_verifier_check(
    h: *const HardyVerifier,
    law: HardyLaw,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    re: f64,
    im: f64,
    out_report: *mut HardyReport,
) -> HardyStatus {
    guard(|| {
        let v = &h.as_ref().ok_or(Failure::Null("handle"))?.0;
        let m = Mat2::new(a, b, c, d)?;
        let z = HalfPlanePoint::new(re, im)?;
        let r = match law {
            HardyLaw::E2 => v.check_e2_quasimodular(&m, z)?,
            HardyLaw::Eta => v.check_eta_transform(&m, z)?,
            HardyLaw::Theta => v.check_theta_transform(&m, z)?,
            HardyLaw::Theta4 => v.check_theta4_transform(&m, z)?,
        };
        *out(out_report, "out_report")? = fill(r);
        Ok(())
    })
}

/// Whether `(a b; c d)` lies in the theta group (`group = 1`), in `Γ⁰(2)`
/// (`group = 2`) or in SL2(Z) (`group = 0`).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn hardy_in_group(a: i64, b: i64, c: i64, d: i64, group: i32, out_member: *mut bool) -> HardyStatus {
    guard(|| {
        let tag = match group {
            0 => GroupTag::SL2,
            1 => GroupTag::Theta,
            2 => GroupTag::Gamma02,
            other => return Err(Error::OutOfRange(format!("unknown group {other}")).into()),
        };
        let m = Mat2::new(a, b, c, d)?;
        *out(out_member, "out_member")? = tag.contains(&m);
        Ok(())
    })
}
